//! Flips of a Fischer space, the subalgebras they produce, the `Q_k`
//! series and the two-generated configurations.

mod cases;
mod series;
mod subalgebra;
mod table;

pub use cases::{
    c6_case, c6_fixture, case_ids, configuration, nonsymmetric_case, Configuration,
    NONSYMMETRIC_IDS,
};
pub use series::{series, SeriesKind, SeriesResult, SplitCheck};
pub use subalgebra::{generate_from_axes, generate_subalgebra, tag_of, BasisTag, SubalgebraBasis};
pub use table::{
    compare_tables, default_labels, parse_table, table_of, BasisMatching, Mismatch, MultTable,
    TableDiff,
};

use serde::Serialize;

use crate::axes::Axis;
use crate::error::{Error, Result};
use crate::fischer::{FischerSpace, SpaceAutomorphism};
use crate::matsuo::MatsuoAlgebra;
use crate::scalar::Field;

/// Orbits of an involutive automorphism on the points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipClassification {
    pub singles: Vec<Axis>,
    pub doubles: Vec<Axis>,
    /// Swapped collinear pairs.
    pub extras: Vec<(usize, usize)>,
}

impl FlipClassification {
    pub fn orbit_count(&self) -> usize {
        self.singles.len() + self.doubles.len() + self.extras.len()
    }

    pub fn axes(&self) -> Vec<Axis> {
        self.singles.iter().chain(&self.doubles).copied().collect()
    }
}

pub fn classify_orbits(
    space: &FischerSpace,
    aut: &SpaceAutomorphism,
) -> Result<FlipClassification> {
    if aut.as_slice().len() != space.len() {
        return Err(Error::DimensionMismatch {
            expected: space.len(),
            found: aut.as_slice().len(),
        });
    }
    if !aut.is_involution() {
        return Err(Error::NotInvolutive);
    }
    let mut out = FlipClassification {
        singles: Vec::new(),
        doubles: Vec::new(),
        extras: Vec::new(),
    };
    for p in 0..space.len() {
        let q = aut.apply(p);
        if q == p {
            out.singles.push(Axis::Single(p));
        } else if p < q {
            if space.collinear(p, q) {
                out.extras.push((p, q));
            } else {
                out.doubles.push(Axis::double(p, q));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct FlipSubalgebra<F> {
    pub classification: FlipClassification,
    pub basis: SubalgebraBasis<F>,
    /// Whether the subalgebra is the whole fixed subalgebra.
    pub equals_fixed: bool,
}

/// The subalgebra generated by all singles and doubles of `aut`.
pub fn flip_subalgebra<F: Field>(
    alg: &MatsuoAlgebra<F>,
    aut: &SpaceAutomorphism,
) -> Result<FlipSubalgebra<F>> {
    let classification = classify_orbits(alg.space(), aut)?;
    let axes = classification.axes();
    let basis = generate_from_axes(alg, &axes, alg.dim())?;
    let equals_fixed = classification.extras.iter().all(|&(p, q)| {
        let mut v = alg.zero();
        v[p] = F::one();
        v[q] = F::one();
        basis.contains(&v)
    });
    Ok(FlipSubalgebra {
        classification,
        basis,
        equals_fixed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axes::is_primitive;
    use crate::fischer::{automorphism_from_flip, build_space};
    use crate::groups::{generate_class, FlipMap};

    fn s_n_flip(n: usize, k: usize) -> (MatsuoAlgebra<crate::scalar::RatFunc>, SpaceAutomorphism) {
        let cls = generate_class(1, n).unwrap();
        let space = build_space(&cls).unwrap();
        let aut = automorphism_from_flip(&space, &cls, &FlipMap::standard(1, n, k, false).unwrap())
            .unwrap();
        (MatsuoAlgebra::symbolic(space), aut)
    }

    #[test]
    fn s6_classifications() {
        let (m, aut) = s_n_flip(6, 3);
        let c = classify_orbits(m.space(), &aut).unwrap();
        assert_eq!(
            (c.singles.len(), c.doubles.len(), c.extras.len()),
            (3, 6, 0)
        );

        let (m, aut) = s_n_flip(6, 2);
        let c = classify_orbits(m.space(), &aut).unwrap();
        let five_six = m.space().index_of("(5,6)").unwrap();
        assert!(c.singles.contains(&Axis::Single(five_six)));
        assert!(!c.extras.is_empty());

        let id = SpaceAutomorphism::identity(m.dim());
        let c = classify_orbits(m.space(), &id).unwrap();
        assert_eq!(c.singles.len(), m.dim());
    }

    #[test]
    fn flip_subalgebra_of_s6() {
        let (m, aut) = s_n_flip(6, 3);
        let f = flip_subalgebra(&m, &aut).unwrap();
        assert_eq!(f.basis.dim(), 9);
        assert!(f.equals_fixed);
        for d in &f.classification.doubles {
            assert!(is_primitive(&m, d, f.basis.echelon()).unwrap());
        }
        let (m, aut) = s_n_flip(6, 2);
        let f = flip_subalgebra(&m, &aut).unwrap();
        assert_eq!(f.basis.dim(), 5);
        assert!(!f.equals_fixed);
    }

    #[test]
    fn rejects_non_involutions() {
        let (m, _) = s_n_flip(4, 1);
        let cycle = SpaceAutomorphism::new(m.space(), {
            // conjugation by (1,2,3)
            let cls = generate_class(1, 4).unwrap();
            let g = crate::groups::AffineSymElement::from_cycles(1, 4, &[vec![1, 2, 3]]).unwrap();
            cls.elements()
                .iter()
                .map(|x| {
                    cls.position(&crate::groups::conjugate(x, &g).unwrap())
                        .unwrap()
                })
                .collect()
        })
        .unwrap();
        assert!(matches!(
            classify_orbits(m.space(), &cycle),
            Err(Error::NotInvolutive)
        ));
    }
}
