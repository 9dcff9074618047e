//! Writing, reading and comparing mult-table files.

use axial::flip::{compare_tables, parse_table, series, BasisMatching, SeriesKind};

fn main() -> axial::error::Result<()> {
    let q2 = series(SeriesKind::Qk, 2, 0)?.table;
    let text = q2.to_text();
    print!("{text}");

    let path = std::env::temp_dir().join("q2.table");
    std::fs::write(&path, &text)?;
    let back = parse_table(&std::fs::read_to_string(&path)?)?;
    println!(
        "\nre-read equal: {}",
        compare_tables(&q2, &back, BasisMatching::Exact)?.equal
    );

    // swapping two basis vectors is invisible up to relabelling
    let mut shuffled = back.clone();
    shuffled.labels.swap(0, 1);
    shuffled.tags.swap(0, 1);
    shuffled.entries.swap(0, 1);
    for row in &mut shuffled.entries {
        row.swap(0, 1);
        for e in row.iter_mut() {
            e.swap(0, 1);
        }
    }
    let diff = compare_tables(&q2, &shuffled, BasisMatching::UpToPermutation)?;
    println!(
        "shuffled equal: {}, matching {:?}",
        diff.equal,
        diff.perm.unwrap()
    );

    let err = parse_table("mult-table v1\ndim 1\nbasis s1\n0 0 : s1 + s9\n").unwrap_err();
    println!("bad file: {err}");
    Ok(())
}
