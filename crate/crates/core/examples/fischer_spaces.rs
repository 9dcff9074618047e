//! Builds the Fischer spaces of S_n and of the affine groups p^(n-1):S_n,
//! then round-trips one through the fischer-space file format.

use axial::fischer::{build_space, load_space, save_space};
use axial::groups::generate_class;

fn main() -> axial::error::Result<()> {
    for (p, n) in [(1, 4), (1, 5), (1, 6), (2, 4), (3, 4)] {
        let cls = generate_class(p, n)?;
        let space = build_space(&cls)?;
        println!(
            "p={p} n={n}: {} points, {} lines",
            space.len(),
            space.lines().len()
        );
    }

    let space = build_space(&generate_class(2, 4)?)?;
    let text = save_space(&space);
    let back = load_space(&text)?;
    assert_eq!(back.lines(), space.lines());
    println!("\n{}", text.lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("...");
    Ok(())
}
