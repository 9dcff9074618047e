use num_traits::Zero;
use serde::Serialize;

use crate::axes::Axis;
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::matsuo::{Element, MatsuoAlgebra};
use crate::scalar::Field;

/// What a basis vector looks like in the point basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BasisTag {
    /// A single point with coefficient 1.
    Single,
    /// Two non-collinear points with coefficient 1.
    Double,
    Other,
}

/// A product-closed span, kept in reduced echelon form.
#[derive(Debug, Clone)]
pub struct SubalgebraBasis<F> {
    echelon: EchelonBasis<F>,
    generators: Vec<Axis>,
}

impl<F: Field> SubalgebraBasis<F> {
    pub fn echelon(&self) -> &EchelonBasis<F> {
        &self.echelon
    }

    pub fn dim(&self) -> usize {
        self.echelon.len()
    }

    pub fn rows(&self) -> &[Element<F>] {
        self.echelon.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    pub fn generators(&self) -> &[Axis] {
        &self.generators
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.echelon.contains(v)
    }

    pub fn coordinates(&self, v: &[F]) -> Result<Vec<F>> {
        self.echelon.coordinates(v)
    }

    pub fn tags(&self, alg: &MatsuoAlgebra<F>) -> Vec<BasisTag> {
        self.rows().iter().map(|r| tag_of(alg, r)).collect()
    }

    /// Re-checks closure from scratch: every product of two basis rows
    /// lies in the span.
    pub fn is_closed(&self, alg: &MatsuoAlgebra<F>) -> Result<bool> {
        let rows = self.rows();
        for i in 0..rows.len() {
            for j in i..rows.len() {
                if !self.contains(&alg.product(&rows[i], &rows[j])?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn tag_of<F: Field>(alg: &MatsuoAlgebra<F>, v: &[F]) -> BasisTag {
    let supp: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if !supp.iter().all(|&i| v[i].is_one()) {
        return BasisTag::Other;
    }
    match supp[..] {
        [_] => BasisTag::Single,
        [p, q] if !alg.space().collinear(p, q) => BasisTag::Double,
        _ => BasisTag::Other,
    }
}

/// The smallest product-closed span containing `generators`.
///
/// Each vector that enlarges the span is multiplied by every vector that
/// enlarged it before, so no pair is multiplied twice.
pub fn generate_subalgebra<F: Field>(
    alg: &MatsuoAlgebra<F>,
    generators: &[Element<F>],
    cap: usize,
) -> Result<SubalgebraBasis<F>> {
    let mut echelon = EchelonBasis::new(alg.dim());
    let mut spanning: Vec<Element<F>> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for g in generators {
        if g.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: g.len(),
            });
        }
        if g.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("zero generator".into()));
        }
        if echelon.insert(g) {
            queue.push_back(g.clone());
        }
    }
    if echelon.len() > cap {
        return Err(Error::CapExceeded(cap));
    }
    while let Some(v) = queue.pop_front() {
        spanning.push(v.clone());
        for w in &spanning {
            let p = alg.product(&v, w)?;
            if echelon.insert(&p) {
                if echelon.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                queue.push_back(p);
            }
        }
    }
    Ok(SubalgebraBasis {
        echelon,
        generators: Vec::new(),
    })
}

/// [`generate_subalgebra`] on axis elements, recording the axes.
pub fn generate_from_axes<F: Field>(
    alg: &MatsuoAlgebra<F>,
    axes: &[Axis],
    cap: usize,
) -> Result<SubalgebraBasis<F>> {
    for a in axes {
        a.validate(alg.space())?;
    }
    let gens: Vec<_> = axes.iter().map(|a| alg.axis_element(a)).collect();
    let mut b = generate_subalgebra(alg, &gens, cap)?;
    b.generators = axes.to_vec();
    Ok(b)
}
