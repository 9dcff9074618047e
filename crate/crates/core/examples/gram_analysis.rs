//! Gram determinants, critical values of eta, radicals and simplicity.

use axial::flip::{configuration, generate_from_axes};
use axial::scalar::rat;
use axial::structure::{
    analyse, interpolation_determinant, qk_closed_form, simplicity, QkBasis, Verdict,
};

fn main() -> axial::error::Result<()> {
    for k in 2..=4 {
        let q = QkBasis::new(k)?;
        let g = analyse(&q.algebra, &q.standard())?;
        println!("Q_{k}: det = {}", g.det);
        println!("      closed form agrees: {}", g.det == qk_closed_form(k));
        for e in &g.scan {
            if let Some(d) = e.radical_dim {
                println!("      eta = {:5} radical dim {d}", e.eta);
            }
        }
    }

    let case = configuration("B6p3")?;
    let sub = generate_from_axes(&case.algebra, &case.generators, case.algebra.dim())?;
    let g = analyse(&case.algebra, sub.rows())?;
    println!("\nB6p3 (dim {}): det = {}", sub.dim(), g.det);
    println!(
        "  interpolation oracle agrees: {}",
        interpolation_determinant(&g.gram)? == g.det
    );
    for eta in [rat(-1, 7), rat(2, 1), rat(1, 3)] {
        let v = simplicity(&case.algebra, sub.rows(), &case.generators, &eta)?;
        let verdict = match v.verdict {
            Verdict::Simple => "simple".to_string(),
            Verdict::NotSimple { radical_dim } => format!("radical of dim {radical_dim}"),
            Verdict::Inconclusive(why) => why,
        };
        println!("  eta = {eta}: {verdict}");
    }
    Ok(())
}
