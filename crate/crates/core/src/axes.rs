//! Single and double axes, eigenspaces and fusion laws.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fischer::{diagram, FischerSpace};
use crate::linalg::{EchelonBasis, Matrix};
use crate::matsuo::{Element, MatsuoAlgebra};
use crate::scalar::Field;

/// A point `a`, or `a + b` for two distinct non-collinear points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axis {
    Single(usize),
    Double(usize, usize),
}

impl Axis {
    /// A double axis with its points in increasing order.
    pub fn double(p: usize, q: usize) -> Axis {
        Axis::Double(p.min(q), p.max(q))
    }

    pub fn points(&self) -> Vec<usize> {
        match *self {
            Axis::Single(a) => vec![a],
            Axis::Double(a, b) => vec![a, b],
        }
    }

    pub fn is_double(&self) -> bool {
        matches!(self, Axis::Double(..))
    }

    pub fn validate(&self, space: &FischerSpace) -> Result<()> {
        let n = space.len();
        match *self {
            Axis::Single(a) if a < n => Ok(()),
            Axis::Double(a, b) if a < n && b < n && a != b && !space.collinear(a, b) => Ok(()),
            _ => Err(Error::NotAnAxis(format!("{self:?}"))),
        }
    }

    pub fn describe(&self, space: &FischerSpace) -> String {
        match *self {
            Axis::Single(a) if a < space.len() => space.label(a).to_string(),
            Axis::Double(a, b) if a < space.len() && b < space.len() => {
                format!("{}+{}", space.label(a), space.label(b))
            }
            _ => format!("{self:?}"),
        }
    }
}

/// A fusion law on a finite eigenvalue set, stored by eigenvalue index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionLaw<F> {
    eigenvalues: Vec<F>,
    table: Vec<Vec<BTreeSet<usize>>>,
}

impl<F: Field> FusionLaw<F> {
    /// Builds a law from `(λ, μ, λ*μ)` entries; missing entries are empty.
    pub fn new(eigenvalues: Vec<F>, entries: &[(usize, usize, &[usize])]) -> Result<Self> {
        let k = eigenvalues.len();
        if !eigenvalues.iter().any(One::is_one) {
            return Err(Error::InvalidArgument("1 must be an eigenvalue".into()));
        }
        for i in 0..k {
            if eigenvalues[..i].contains(&eigenvalues[i]) {
                return Err(Error::InvalidArgument(format!(
                    "eigenvalue {} repeated",
                    eigenvalues[i]
                )));
            }
        }
        let mut table = vec![vec![BTreeSet::new(); k]; k];
        for &(i, j, set) in entries {
            if i >= k || j >= k || set.iter().any(|&x| x >= k) {
                return Err(Error::InvalidArgument(
                    "eigenvalue index out of range".into(),
                ));
            }
            let s: BTreeSet<usize> = set.iter().copied().collect();
            table[i][j] = s.clone();
            table[j][i] = s;
        }
        Ok(FusionLaw { eigenvalues, table })
    }

    /// `𝒥(η)` on `{1, 0, η}`.
    pub fn jordan(eta: F) -> Result<Self> {
        Self::new(
            vec![F::one(), F::zero(), eta],
            &[
                (0, 0, &[0]),
                (0, 1, &[]),
                (0, 2, &[2]),
                (1, 1, &[1]),
                (1, 2, &[2]),
                (2, 2, &[0, 1]),
            ],
        )
    }

    /// `ℳ(α, β)` on `{1, 0, α, β}`.
    pub fn monster(alpha: F, beta: F) -> Result<Self> {
        Self::new(
            vec![F::one(), F::zero(), alpha, beta],
            &[
                (0, 0, &[0]),
                (0, 1, &[]),
                (0, 2, &[2]),
                (0, 3, &[3]),
                (1, 1, &[1]),
                (1, 2, &[2]),
                (1, 3, &[3]),
                (2, 2, &[0, 1]),
                (2, 3, &[3]),
                (3, 3, &[0, 1, 2]),
            ],
        )
    }

    /// The same law with the entry `λ_i * λ_j` replaced.
    pub fn with_entry(mut self, i: usize, j: usize, set: &[usize]) -> Self {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        self.table[i][j] = s.clone();
        self.table[j][i] = s;
        self
    }

    pub fn eigenvalues(&self) -> &[F] {
        &self.eigenvalues
    }

    pub fn rule(&self, i: usize, j: usize) -> &BTreeSet<usize> {
        &self.table[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.eigenvalues.len();
        (0..k).all(|i| (0..k).all(|j| self.table[i][j] == self.table[j][i]))
    }
}

/// Eigenspaces of an axis inside a closed span, as ambient vectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<F> {
    pub eigenvalues: Vec<F>,
    pub spaces: Vec<Vec<Element<F>>>,
    /// Dimension of the span not covered by the candidate eigenvalues.
    pub leftover: usize,
}

impl<F: Field> EigenDecomposition<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Vec::len).collect()
    }

    pub fn is_semisimple(&self) -> bool {
        self.leftover == 0
    }
}

/// The whole algebra as a span.
pub fn full_span<F: Field>(alg: &MatsuoAlgebra<F>) -> EchelonBasis<F> {
    let mut b = EchelonBasis::new(alg.dim());
    for i in 0..alg.dim() {
        b.insert(&alg.point(i));
    }
    b
}

pub fn eigenspaces<F: Field>(
    alg: &MatsuoAlgebra<F>,
    axis: &Axis,
    candidates: &[F],
    span: &EchelonBasis<F>,
) -> Result<EigenDecomposition<F>> {
    axis.validate(alg.space())?;
    let x = alg.axis_element(axis);
    let ad = alg.ad_matrix_on(&x, span)?;
    eigen_from_matrix(&ad, candidates, span)
}

fn eigen_from_matrix<F: Field>(
    ad: &Matrix<F>,
    candidates: &[F],
    span: &EchelonBasis<F>,
) -> Result<EigenDecomposition<F>> {
    let mut spaces = Vec::with_capacity(candidates.len());
    let mut total = 0;
    for lambda in candidates {
        let ns: Vec<Element<F>> = ad
            .sub_scalar_identity(lambda)
            .nullspace()
            .iter()
            .map(|c| span.combine(c))
            .collect();
        total += ns.len();
        spaces.push(ns);
    }
    Ok(EigenDecomposition {
        eigenvalues: candidates.to_vec(),
        spaces,
        leftover: span.len().saturating_sub(total),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub lambda: String,
    pub mu: String,
    /// Indices of the two eigenvectors within their eigenspaces.
    pub witness: (usize, usize),
    /// Eigenvalues of the components of the product outside `λ * μ`.
    pub offending: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionReport {
    pub axis: String,
    pub semisimple: bool,
    pub spectrum_ok: bool,
    pub dims: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl FusionReport {
    pub fn holds(&self) -> bool {
        self.semisimple && self.spectrum_ok && self.violations.is_empty()
    }
}

/// Checks `A_λ A_μ ⊆ A_{λ*μ}` on products of eigenspace basis vectors,
/// which suffices by bilinearity.
pub fn verify_fusion<F: Field>(
    alg: &MatsuoAlgebra<F>,
    axis: &Axis,
    law: &FusionLaw<F>,
    span: &EchelonBasis<F>,
) -> Result<FusionReport> {
    let dec = eigenspaces(alg, axis, law.eigenvalues(), span)?;
    let mut report = FusionReport {
        axis: axis.describe(alg.space()),
        semisimple: dec.is_semisimple(),
        spectrum_ok: dec.is_semisimple(),
        dims: dec.dims(),
        violations: Vec::new(),
    };
    if !report.semisimple {
        return Ok(report);
    }
    // eigen-coordinates: columns of p are the eigenvectors in span coordinates
    let owner: Vec<usize> = dec
        .spaces
        .iter()
        .enumerate()
        .flat_map(|(k, s)| std::iter::repeat_n(k, s.len()))
        .collect();
    let cols: Vec<Vec<F>> = dec
        .spaces
        .iter()
        .flatten()
        .map(|v| span.coordinates(v))
        .collect::<Result<_>>()?;
    let d = span.len();
    let p = Matrix::from_fn(d, d, |i, j| cols[j][i].clone());
    let pinv = p.inverse()?;
    let k = law.eigenvalues().len();
    for i in 0..k {
        for j in i..k {
            let allowed = law.rule(i, j);
            for (a, u) in dec.spaces[i].iter().enumerate() {
                for (b, v) in dec.spaces[j].iter().enumerate() {
                    if i == j && b < a {
                        continue;
                    }
                    let w = alg.product(u, v)?;
                    let coords = span.coordinates(&w).map_err(|_| Error::NotClosed)?;
                    let ec = pinv.apply(&coords)?;
                    let bad: BTreeSet<usize> = ec
                        .iter()
                        .zip(&owner)
                        .filter(|(c, o)| !c.is_zero() && !allowed.contains(o))
                        .map(|(_, &o)| o)
                        .collect();
                    if !bad.is_empty() {
                        report.violations.push(Violation {
                            lambda: law.eigenvalues()[i].to_string(),
                            mu: law.eigenvalues()[j].to_string(),
                            witness: (a, b),
                            offending: bad
                                .into_iter()
                                .map(|o| law.eigenvalues()[o].to_string())
                                .collect(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// True iff the 1-eigenspace of the axis within `span` is 1-dimensional.
pub fn is_primitive<F: Field>(
    alg: &MatsuoAlgebra<F>,
    axis: &Axis,
    span: &EchelonBasis<F>,
) -> Result<bool> {
    let dec = eigenspaces(alg, axis, &[F::one()], span)?;
    Ok(dec.spaces[0].len() == 1)
}

/// Whether the support permutation fixing each single and swapping the
/// two points of each double preserves collinearity on the supports.
pub fn flip_symmetry_check(space: &FischerSpace, axes: &[Axis]) -> Result<bool> {
    let mut support = Vec::new();
    let mut image = std::collections::HashMap::new();
    for a in axes {
        a.validate(space)?;
        match *a {
            Axis::Single(p) => {
                image.insert(p, p);
            }
            Axis::Double(p, q) => {
                image.insert(p, q);
                image.insert(q, p);
            }
        }
        for p in a.points() {
            if support.contains(&p) {
                return Err(Error::OverlappingSupports);
            }
            support.push(p);
        }
    }
    let g = diagram(space, &support);
    for e in g.edge_indices() {
        let (x, y) = g.edge_endpoints(e).unwrap();
        if !space.collinear(image[&g[x]], image[&g[y]]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fischer::build_space;
    use crate::groups::{b, generate_class, TranspositionClass};
    use crate::scalar::{rat, RatFunc, Rational};
    use num_traits::Zero;

    fn alg(p: u8, n: usize) -> (TranspositionClass, MatsuoAlgebra<RatFunc>) {
        let cls = generate_class(p, n).unwrap();
        let sp = build_space(&cls).unwrap();
        (cls, MatsuoAlgebra::symbolic(sp))
    }

    #[test]
    fn point_axis_dims() {
        let (_, m) = alg(1, 4);
        let span = full_span(&m);
        let e = RatFunc::eta();
        let dec = eigenspaces(
            &m,
            &Axis::Single(0),
            &[RatFunc::one(), RatFunc::zero(), e],
            &span,
        )
        .unwrap();
        assert_eq!(dec.dims(), vec![1, 3, 2]);
        assert!(dec.is_semisimple());
    }

    #[test]
    fn double_axis_in_full_algebra() {
        let (cls, m) = alg(1, 4);
        let i = |a, c| cls.position(&b(1, 4, a, c)).unwrap();
        let x = Axis::double(i(1, 2), i(3, 4));
        let span = full_span(&m);
        let e = RatFunc::eta();
        let law = FusionLaw::monster(e.clone() + &e, e.clone()).unwrap();
        let dec = eigenspaces(&m, &x, law.eigenvalues(), &span).unwrap();
        assert_eq!(dec.dims()[0], 2);
        assert!(!is_primitive(&m, &x, &span).unwrap());
        let rep = verify_fusion(&m, &x, &law, &span).unwrap();
        assert!(rep.holds(), "{rep:?}");
        for (k, lambda) in law.eigenvalues().iter().enumerate() {
            for v in &dec.spaces[k] {
                let xv = m.product(&m.axis_element(&x), v).unwrap();
                assert_eq!(xv, v.iter().map(|c| c.clone() * lambda).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn wrong_law_is_caught() {
        let (_, m) = alg(1, 5);
        let span = full_span(&m);
        let e = RatFunc::eta();
        let sp = m.space();
        let (p, q) = (0..sp.len())
            .flat_map(|p| (p + 1..sp.len()).map(move |q| (p, q)))
            .find(|&(p, q)| !sp.collinear(p, q))
            .unwrap();
        let x = Axis::Double(p, q);
        let law = FusionLaw::monster(e.clone() + &e, e.clone())
            .unwrap()
            .with_entry(3, 3, &[0, 1]);
        let rep = verify_fusion(&m, &x, &law, &span).unwrap();
        assert!(!rep.violations.is_empty());
        assert!(rep
            .violations
            .iter()
            .all(|v| v.offending == vec!["2*eta".to_string()]));
    }

    #[test]
    fn single_axes_are_jordan() {
        let (_, m) = alg(1, 4);
        let span = full_span(&m);
        let law = FusionLaw::jordan(RatFunc::eta()).unwrap();
        for a in 0..m.dim() {
            assert!(verify_fusion(&m, &Axis::Single(a), &law, &span)
                .unwrap()
                .holds());
            assert!(is_primitive(&m, &Axis::Single(a), &span).unwrap());
        }
    }

    #[test]
    fn form_orthogonality_numeric() {
        let cls = generate_class(1, 5).unwrap();
        let m = MatsuoAlgebra::numeric(build_space(&cls).unwrap(), rat(-1, 3)).unwrap();
        let span = full_span(&m);
        let eta: Rational = rat(-1, 3);
        let dec = eigenspaces(
            &m,
            &Axis::Single(2),
            &[Rational::one(), Rational::zero(), eta],
            &span,
        )
        .unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                for u in &dec.spaces[i] {
                    for v in &dec.spaces[j] {
                        assert!(m.frobenius(u, v).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_checks() {
        let (cls, m) = alg(1, 5);
        let i = |a, c| cls.position(&b(1, 5, a, c)).unwrap();
        let sp = m.space();
        let a3 = [Axis::Single(i(1, 2)), Axis::double(i(1, 3), i(2, 4))];
        assert!(flip_symmetry_check(sp, &a3).unwrap());
        let a2 = [Axis::Single(i(1, 2)), Axis::double(i(1, 3), i(4, 5))];
        assert!(!flip_symmetry_check(sp, &a2).unwrap());
        assert!(flip_symmetry_check(sp, &[Axis::Single(0), Axis::Single(1)]).unwrap());
        let overlap = [Axis::Single(i(1, 3)), Axis::double(i(1, 3), i(2, 4))];
        assert_eq!(
            flip_symmetry_check(sp, &overlap),
            Err(Error::OverlappingSupports)
        );
    }

    #[test]
    fn law_shapes() {
        let e = RatFunc::eta();
        let law = FusionLaw::monster(e.clone() + &e, e.clone()).unwrap();
        assert!(law.is_symmetric());
        assert!(FusionLaw::new(vec![RatFunc::zero()], &[]).is_err());
        assert!(FusionLaw::new(vec![RatFunc::one(), RatFunc::one()], &[]).is_err());
    }
}
