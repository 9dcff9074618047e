use super::table::{parse_table, MultTable};
use crate::axes::Axis;
use crate::error::{Error, Result};
use crate::fischer::{build_space, FischerSpace};
use crate::groups::{b, c, generate_class, AffineSymElement};
use crate::matsuo::MatsuoAlgebra;
use crate::scalar::RatFunc;

const Q2: &str = include_str!("../../fixtures/q2.table");
const B6P2: &str = include_str!("../../fixtures/b6p2.table");
const B6P3: &str = include_str!("../../fixtures/b6p3.table");
const C4: &str = include_str!("../../fixtures/c4.table");
const C5P2: &str = include_str!("../../fixtures/c5p2.table");
const C5P3: &str = include_str!("../../fixtures/c5p3.table");
const C6: &str = include_str!("../../fixtures/c6.table");

const IDS: [&str; 14] = [
    "A1", "A3", "B1", "B4", "B6p1", "B6p2", "B6p3", "C1", "C2", "C3", "C4", "C5p1", "C5p2", "C5p3",
];

/// Configurations whose diagram has no flip symmetry.
pub const NONSYMMETRIC_IDS: [&str; 4] = ["A2", "B2", "B3", "B5"];

pub fn case_ids() -> &'static [&'static str] {
    &IDS
}

/// A configuration of axes in a Matsuo algebra.
pub struct Configuration {
    pub id: &'static str,
    pub algebra: MatsuoAlgebra<RatFunc>,
    /// `x, y` or `x, y, z`.
    pub generators: Vec<Axis>,
    /// `None` for the configurations without flip symmetry.
    pub expected_dim: Option<usize>,
    pub fixture: Option<&'static str>,
}

impl Configuration {
    pub fn fixture_table(&self) -> Option<Result<MultTable<RatFunc>>> {
        self.fixture.map(parse_table)
    }
}

enum Gen {
    One(AffineSymElement),
    Two(AffineSymElement, AffineSymElement),
}

fn build(
    id: &'static str,
    p: u8,
    n: usize,
    gens: Vec<Gen>,
    expected_dim: Option<usize>,
    fixture: Option<&'static str>,
) -> Result<Configuration> {
    let cls = generate_class(p, n)?;
    let space = build_space(&cls)?;
    let generators = gens
        .into_iter()
        .map(|g| {
            Ok(match g {
                Gen::One(a) => Axis::Single(cls.position(&a)?),
                Gen::Two(a, b) => Axis::double(cls.position(&a)?, cls.position(&b)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let algebra = MatsuoAlgebra::symbolic(space);
    for g in &generators {
        g.validate(algebra.space())?;
    }
    Ok(Configuration {
        id,
        algebra,
        generators,
        expected_dim,
        fixture,
    })
}

/// `x = a, y = b + c`.
fn type_a(
    id: &'static str,
    p: u8,
    n: usize,
    abc: [AffineSymElement; 3],
    dim: Option<usize>,
    fx: Option<&'static str>,
) -> Result<Configuration> {
    let [a, b, c] = abc;
    build(id, p, n, vec![Gen::One(a), Gen::Two(b, c)], dim, fx)
}

/// `x = a + b, y = c + d`.
fn type_b(
    id: &'static str,
    p: u8,
    n: usize,
    abcd: [AffineSymElement; 4],
    dim: Option<usize>,
    fx: Option<&'static str>,
) -> Result<Configuration> {
    let [a, b, c, d] = abcd;
    build(id, p, n, vec![Gen::Two(a, b), Gen::Two(c, d)], dim, fx)
}

/// `x = a, y = b, z = c + d`.
fn type_c(
    id: &'static str,
    p: u8,
    n: usize,
    abcd: [AffineSymElement; 4],
    dim: usize,
    fx: Option<&'static str>,
) -> Result<Configuration> {
    let [a, b, c, d] = abcd;
    build(
        id,
        p,
        n,
        vec![Gen::One(a), Gen::One(b), Gen::Two(c, d)],
        Some(dim),
        fx,
    )
}

pub fn configuration(id: &str) -> Result<Configuration> {
    let s = |n: usize, i: usize, j: usize| b(1, n, i, j);
    let id = IDS
        .iter()
        .chain(NONSYMMETRIC_IDS.iter())
        .find(|x| x.eq_ignore_ascii_case(id))
        .copied()
        .ok_or_else(|| Error::UnknownCase(id.to_string()))?;
    match id {
        "A1" => type_a(
            id,
            1,
            6,
            [s(6, 1, 2), s(6, 3, 4), s(6, 5, 6)],
            Some(2),
            None,
        ),
        "A2" => type_a(id, 1, 5, [s(5, 1, 2), s(5, 1, 3), s(5, 4, 5)], None, None),
        "A3" => type_a(
            id,
            1,
            4,
            [s(4, 1, 2), s(4, 1, 3), s(4, 2, 4)],
            Some(4),
            Some(Q2),
        ),
        "B1" => type_b(
            id,
            1,
            8,
            [s(8, 1, 2), s(8, 3, 4), s(8, 5, 6), s(8, 7, 8)],
            Some(2),
            None,
        ),
        "B2" => type_b(
            id,
            1,
            7,
            [s(7, 1, 2), s(7, 4, 5), s(7, 2, 3), s(7, 6, 7)],
            None,
            None,
        ),
        "B3" => type_b(
            id,
            1,
            6,
            [s(6, 1, 2), s(6, 5, 6), s(6, 1, 3), s(6, 2, 4)],
            None,
            None,
        ),
        "B4" => type_b(
            id,
            1,
            6,
            [s(6, 1, 2), s(6, 4, 5), s(6, 1, 3), s(6, 4, 6)],
            Some(3),
            None,
        ),
        "B5" => type_b(
            id,
            1,
            5,
            [s(5, 1, 2), s(5, 3, 5), s(5, 1, 3), s(5, 2, 4)],
            None,
            None,
        ),
        "B6p1" => type_b(
            id,
            1,
            4,
            [s(4, 1, 2), s(4, 3, 4), s(4, 1, 3), s(4, 2, 4)],
            Some(3),
            None,
        ),
        "B6p2" => type_b(
            id,
            2,
            4,
            [c(2, 4, 1, 2), b(2, 4, 3, 4), b(2, 4, 1, 3), b(2, 4, 2, 4)],
            Some(5),
            Some(B6P2),
        ),
        "B6p3" => type_b(
            id,
            3,
            4,
            [c(3, 4, 1, 2), b(3, 4, 3, 4), b(3, 4, 1, 3), c(3, 4, 2, 4)],
            Some(8),
            Some(B6P3),
        ),
        "C1" => type_c(
            id,
            1,
            8,
            [s(8, 1, 2), s(8, 3, 4), s(8, 5, 6), s(8, 7, 8)],
            3,
            None,
        ),
        "C2" => type_c(
            id,
            1,
            7,
            [s(7, 1, 2), s(7, 1, 3), s(7, 4, 5), s(7, 6, 7)],
            4,
            None,
        ),
        "C3" => type_c(
            id,
            1,
            6,
            [s(6, 1, 2), s(6, 5, 6), s(6, 1, 3), s(6, 2, 4)],
            5,
            None,
        ),
        "C4" => type_c(
            id,
            2,
            4,
            [b(2, 4, 1, 2), c(2, 4, 1, 3), b(2, 4, 1, 3), b(2, 4, 2, 4)],
            9,
            Some(C4),
        ),
        "C5p1" => type_c(
            id,
            1,
            4,
            [s(4, 1, 2), s(4, 3, 4), s(4, 1, 3), s(4, 2, 4)],
            4,
            Some(Q2),
        ),
        "C5p2" => type_c(
            id,
            2,
            4,
            [b(2, 4, 1, 2), c(2, 4, 3, 4), b(2, 4, 1, 3), b(2, 4, 2, 4)],
            8,
            Some(C5P2),
        ),
        "C5p3" => type_c(
            id,
            3,
            4,
            [b(3, 4, 1, 2), c(3, 4, 3, 4), b(3, 4, 1, 3), b(3, 4, 2, 4)],
            12,
            Some(C5P3),
        ),
        _ => unreachable!(),
    }
}

/// The 24-dimensional `⟨a, b, c + d⟩` for diagram C6 inside a supplied
/// 36-point space, the points given by label.
pub fn c6_case(space: FischerSpace, labels: [&str; 4]) -> Result<Configuration> {
    let idx = labels
        .iter()
        .map(|l| {
            space
                .index_of(l)
                .ok_or_else(|| Error::InvalidArgument(format!("no point labelled {l:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let generators = vec![
        Axis::Single(idx[0]),
        Axis::Single(idx[1]),
        Axis::double(idx[2], idx[3]),
    ];
    for g in &generators {
        g.validate(&space)?;
    }
    Ok(Configuration {
        id: "C6",
        algebra: MatsuoAlgebra::symbolic(space),
        generators,
        expected_dim: Some(24),
        fixture: Some(C6),
    })
}

/// The bundled 24-dimensional C6 table.
pub fn c6_fixture() -> Result<MultTable<RatFunc>> {
    parse_table(C6)
}

/// [`configuration`] restricted to the diagrams without flip symmetry.
pub fn nonsymmetric_case(id: &str) -> Result<Configuration> {
    if !NONSYMMETRIC_IDS.iter().any(|x| x.eq_ignore_ascii_case(id)) {
        return Err(Error::UnknownCase(id.to_string()));
    }
    configuration(id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip::generate_from_axes;

    #[test]
    fn fixtures_parse() {
        for id in IDS {
            let case = configuration(id).unwrap();
            if let Some(t) = case.fixture_table() {
                let t = t.unwrap();
                assert_eq!(Some(t.dim()), case.expected_dim, "{id}");
            }
        }
    }

    #[test]
    fn small_dimensions() {
        for id in ["A1", "A3", "B1", "B4", "B6p1", "C1", "C2", "C3", "C5p1"] {
            let case = configuration(id).unwrap();
            let sub =
                generate_from_axes(&case.algebra, &case.generators, case.algebra.dim()).unwrap();
            assert_eq!(Some(sub.dim()), case.expected_dim, "{id}");
        }
        assert!(matches!(configuration("C6"), Err(Error::UnknownCase(_))));
        let c6 = c6_fixture().unwrap();
        assert_eq!(c6.dim(), 24);
        assert!(c6.is_symmetric());
        assert!(nonsymmetric_case("A3").is_err());
    }
}
