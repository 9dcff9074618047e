//! Eigenspaces, fusion laws and Miyamoto involutions of single and double
//! axes in the symbolic Matsuo algebra of S_4.

use axial::axes::{eigenspaces, full_span, verify_fusion, Axis, FusionLaw};
use axial::fischer::build_space;
use axial::groups::generate_class;
use axial::matsuo::MatsuoAlgebra;
use axial::scalar::RatFunc;

fn main() -> axial::error::Result<()> {
    let space = build_space(&generate_class(1, 4)?)?;
    let alg = MatsuoAlgebra::symbolic(space);
    let span = full_span(&alg);
    let eta = RatFunc::eta();
    let two_eta = eta.clone() + &eta;

    let a = alg.space().index_of("(1,2)").unwrap();
    let b = alg.space().index_of("(3,4)").unwrap();
    let single = Axis::Single(a);
    let double = Axis::double(a, b);

    let jordan = FusionLaw::jordan(eta.clone())?;
    let monster = FusionLaw::monster(two_eta, eta)?;

    let r = verify_fusion(&alg, &single, &jordan, &span)?;
    println!(
        "{}: dims {:?} for (1, 0, eta), holds {}",
        r.axis,
        r.dims,
        r.holds()
    );

    let dec = eigenspaces(&alg, &double, monster.eigenvalues(), &span)?;
    println!(
        "{}: dims {:?} for (1, 0, 2eta, eta)",
        double.describe(alg.space()),
        dec.dims()
    );
    let r = verify_fusion(&alg, &double, &monster, &span)?;
    println!("monster type (2eta, eta) holds: {}", r.holds());
    // a double axis is not of Jordan type
    let r = verify_fusion(&alg, &double, &jordan, &span)?;
    println!("jordan type holds: {}", r.holds());

    let ta = alg.miyamoto_matrix(&Axis::Single(a))?;
    let tb = alg.miyamoto_matrix(&Axis::Single(b))?;
    let tab = alg.miyamoto_matrix(&double)?;
    println!("tau(a+b) = tau(a) tau(b): {}", tab == ta.mul(&tb)?);

    let all: Vec<Axis> = (0..alg.dim()).map(Axis::Single).collect();
    println!(
        "Miyamoto group order: {}",
        alg.miyamoto_group_order(&all, 1000)?
    );
    Ok(())
}
