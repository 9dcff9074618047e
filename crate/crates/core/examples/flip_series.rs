//! Flip subalgebras: the Q_k, 2Q_k and 3Q_k series and a flip with fixed
//! letters.

use axial::flip::{series, SeriesKind};

fn main() -> axial::error::Result<()> {
    for kind in [SeriesKind::Qk, SeriesKind::TwoQk, SeriesKind::ThreeQk] {
        for k in 1..=3 {
            let s = series(kind, k, 0)?;
            let c = &s.subalgebra.classification;
            println!(
                "{kind:3} k={k}: {} singles, {} doubles, {} extras, dim {} (expected {})",
                c.singles.len(),
                c.doubles.len(),
                c.extras.len(),
                s.subalgebra.basis.dim(),
                kind.expected_dim(k, 0),
            );
        }
    }

    let s = series(SeriesKind::Qk, 2, 2)?;
    let split = s.split.unwrap();
    println!(
        "\nS_6, tau = (1,2)(3,4): dim {} = {} + {}, cross products vanish: {}",
        s.subalgebra.basis.dim(),
        split.moved_dim,
        split.fixed_dim,
        split.cross_products_zero
    );
    Ok(())
}
