//! Subalgebras generated by two or three axes, compared against the
//! bundled multiplication tables.

use axial::flip::{
    case_ids, compare_tables, configuration, generate_from_axes, table_of, BasisMatching,
    NONSYMMETRIC_IDS,
};

fn main() -> axial::error::Result<()> {
    for id in case_ids() {
        let case = configuration(id)?;
        let alg = &case.algebra;
        let sub = generate_from_axes(alg, &case.generators, alg.dim())?;
        let gens: Vec<String> = case
            .generators
            .iter()
            .map(|g| g.describe(alg.space()))
            .collect();
        print!("{id:5} dim {:2}  <{}>", sub.dim(), gens.join(", "));
        if let Some(fixture) = case.fixture_table() {
            let diff = compare_tables(
                &table_of(alg, &sub)?,
                &fixture?,
                BasisMatching::UpToPermutation,
            )?;
            if diff.equal {
                print!("  table matches");
            } else {
                print!("  table differs in {} entries", diff.mismatches.len());
            }
        }
        println!();
    }

    println!();
    for id in NONSYMMETRIC_IDS {
        let case = configuration(id)?;
        let alg = &case.algebra;
        let sub = generate_from_axes(alg, &case.generators, alg.dim())?;
        let support = case
            .generators
            .iter()
            .filter(|g| g.is_double())
            .flat_map(|g| g.points())
            .filter(|&p| sub.contains(&alg.point(p)))
            .map(|p| alg.space().label(p).to_string())
            .collect::<Vec<_>>();
        println!(
            "{id}: dim {}, support singles inside: {support:?}",
            sub.dim()
        );
    }
    Ok(())
}
