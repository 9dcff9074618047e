//! Matsuo algebras `M_η(Γ)`: product, Frobenius form, adjoint matrices
//! and Miyamoto involutions.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::axes::Axis;
use crate::error::{Error, Result};
use crate::fischer::{FischerSpace, SpaceAutomorphism};
use crate::linalg::{axpy, EchelonBasis, Matrix};
use crate::scalar::{format_rational, rat, Field, RatFunc, Rational};
use crate::text::format_combination;

/// A vector of coefficients over the points of the space.
pub type Element<F> = Vec<F>;

#[derive(Debug, Clone)]
pub struct MatsuoAlgebra<F> {
    space: Arc<FischerSpace>,
    eta: F,
    half_eta: F,
}

impl MatsuoAlgebra<RatFunc> {
    /// The algebra over Q(η) with η an indeterminate.
    pub fn symbolic(space: impl Into<Arc<FischerSpace>>) -> Self {
        Self::with_eta(space.into(), RatFunc::eta())
    }
}

impl MatsuoAlgebra<Rational> {
    /// The algebra over Q at a concrete η ∉ {0, 1}.
    pub fn numeric(space: impl Into<Arc<FischerSpace>>, eta: Rational) -> Result<Self> {
        if eta.is_zero() || eta.is_one() {
            return Err(Error::ExcludedEta(format_rational(&eta)));
        }
        Ok(Self::with_eta(space.into(), eta))
    }
}

impl<F: Field> MatsuoAlgebra<F> {
    fn with_eta(space: Arc<FischerSpace>, eta: F) -> Self {
        let half_eta = eta.clone() * &F::from_rational(rat(1, 2));
        MatsuoAlgebra {
            space,
            eta,
            half_eta,
        }
    }

    pub fn space(&self) -> &FischerSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<FischerSpace> {
        &self.space
    }

    pub fn eta(&self) -> &F {
        &self.eta
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    /// Rejects η = 1/2, where the eigenvalues 1 and 2η of a double axis
    /// coincide.
    pub fn require_double_axes(&self) -> Result<()> {
        if self.eta.as_rational() == Some(rat(1, 2)) {
            return Err(Error::ExcludedEta("1/2".into()));
        }
        Ok(())
    }

    pub fn zero(&self) -> Element<F> {
        vec![F::zero(); self.dim()]
    }

    pub fn point(&self, i: usize) -> Element<F> {
        let mut v = self.zero();
        v[i] = F::one();
        v
    }

    pub fn axis_element(&self, axis: &Axis) -> Element<F> {
        let mut v = self.zero();
        for p in axis.points() {
            v[p] = F::one();
        }
        v
    }

    fn check(&self, u: &[F]) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        Ok(())
    }

    pub fn product(&self, u: &[F], v: &[F]) -> Result<Element<F>> {
        self.check(u)?;
        self.check(v)?;
        let su: Vec<usize> = (0..u.len()).filter(|&i| !u[i].is_zero()).collect();
        let sv: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        let mut out = self.zero();
        for &i in &su {
            for &j in &sv {
                if i == j {
                    out[i] = out[i].clone() + &(u[i].clone() * &v[j]);
                } else if let Some(k) = self.space.third(i, j) {
                    let t = u[i].clone() * &v[j] * &self.half_eta;
                    out[i] = out[i].clone() + &t;
                    out[j] = out[j].clone() + &t;
                    out[k] = out[k].clone() - &t;
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius(&self, u: &[F], v: &[F]) -> Result<F> {
        self.check(u)?;
        self.check(v)?;
        let sv: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        let mut acc = F::zero();
        for i in (0..u.len()).filter(|&i| !u[i].is_zero()) {
            let mut row = F::zero();
            for &j in &sv {
                if i == j {
                    row = row + &v[j];
                } else if self.space.collinear(i, j) {
                    row = row + &(v[j].clone() * &self.half_eta);
                }
            }
            acc = acc + &(u[i].clone() * &row);
        }
        Ok(acc)
    }

    /// Matrix of `w ↦ u·w` in the point basis.
    pub fn ad_matrix(&self, u: &[F]) -> Result<Matrix<F>> {
        self.check(u)?;
        let n = self.dim();
        let cols: Vec<Element<F>> = (0..n)
            .map(|j| self.product(u, &self.point(j)))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    /// Matrix of `w ↦ u·w` on a product-closed span, in the coordinates
    /// of its echelon basis.
    pub fn ad_matrix_on(&self, u: &[F], span: &EchelonBasis<F>) -> Result<Matrix<F>> {
        self.check(u)?;
        if !span.contains(u) {
            return Err(Error::NotInSpan);
        }
        let d = span.len();
        let cols: Vec<Vec<F>> = span
            .rows()
            .iter()
            .map(|r| {
                let w = self.product(u, r)?;
                span.coordinates(&w).map_err(|_| Error::NotClosed)
            })
            .collect::<Result<_>>()?;
        Ok(Matrix::from_fn(d, d, |i, j| cols[j][i].clone()))
    }

    /// `τ_a` on points: fixes `a` and every point off the lines through
    /// `a`, and swaps the other two points of each line through `a`.
    pub fn miyamoto_point_map(&self, a: usize) -> SpaceAutomorphism {
        let perm = (0..self.dim())
            .map(|d| self.space.third(a, d).unwrap_or(d))
            .collect();
        SpaceAutomorphism::new(&self.space, perm).expect("Miyamoto maps are automorphisms")
    }

    /// The point map of an axis; for a double axis, `τ_p τ_q`.
    pub fn axis_point_map(&self, axis: &Axis) -> Result<SpaceAutomorphism> {
        axis.validate(&self.space)?;
        Ok(match *axis {
            Axis::Single(a) => self.miyamoto_point_map(a),
            Axis::Double(p, q) => self
                .miyamoto_point_map(p)
                .compose(&self.miyamoto_point_map(q)),
        })
    }

    /// `τ_x` as a matrix, computed from the eigenspace decomposition of
    /// `ad_x`: −1 on the η-eigenspace and +1 on the others.
    pub fn miyamoto_matrix(&self, axis: &Axis) -> Result<Matrix<F>> {
        axis.validate(&self.space)?;
        let eigs: Vec<F> = match axis {
            Axis::Single(_) => vec![F::one(), F::zero(), self.eta.clone()],
            Axis::Double(..) => {
                self.require_double_axes()?;
                vec![
                    F::one(),
                    F::zero(),
                    self.eta.clone() + &self.eta,
                    self.eta.clone(),
                ]
            }
        };
        let ad = self.ad_matrix(&self.axis_element(axis))?;
        let n = self.dim();
        let mut cols: Vec<Vec<F>> = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for lambda in &eigs {
            let odd = lambda == &self.eta;
            for v in ad.sub_scalar_identity(lambda).nullspace() {
                cols.push(v);
                signs.push(if odd { -F::one() } else { F::one() });
            }
        }
        if cols.len() != n {
            return Err(Error::NotAnAxis(format!(
                "{} is not semisimple with the expected spectrum",
                axis.describe(&self.space)
            )));
        }
        let p = Matrix::from_fn(n, n, |i, j| cols[j][i].clone());
        let pinv = p
            .inverse()
            .map_err(|_| Error::NotAnAxis("singular eigenbasis".into()))?;
        let d = Matrix::from_fn(
            n,
            n,
            |i, j| {
                if i == j {
                    signs[i].clone()
                } else {
                    F::zero()
                }
            },
        );
        p.mul(&d)?.mul(&pinv)
    }

    /// Order of the group generated by the point maps of `axes`, or
    /// `CapExceeded` once more than `cap` elements have been found.
    pub fn miyamoto_group_order(&self, axes: &[Axis], cap: usize) -> Result<usize> {
        if cap == 0 {
            return Err(Error::InvalidArgument("cap must be at least 1".into()));
        }
        let gens: Vec<SpaceAutomorphism> = axes
            .iter()
            .map(|a| self.axis_point_map(a))
            .collect::<Result<_>>()?;
        let id = SpaceAutomorphism::identity(self.dim());
        let mut seen = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.len())
    }

    /// Renders `u` as a signed sum of point labels.
    pub fn render(&self, u: &[F]) -> String {
        format_combination(self.space.labels().iter().map(String::as_str).zip(u.iter()))
    }

    /// The same space at a rational value of η.
    pub fn specialize(&self, eta: Rational) -> Result<MatsuoAlgebra<Rational>> {
        MatsuoAlgebra::numeric(self.space.clone(), eta)
    }
}

/// The permutation matrix of a point map: `e_i ↦ e_{σ(i)}`.
pub fn permutation_matrix<F: Field>(aut: &SpaceAutomorphism) -> Matrix<F> {
    let n = aut.as_slice().len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(aut.apply(i), i)] = F::one();
    }
    m
}

/// Sum of `c_i · v_i`.
pub fn linear_combination<F: Field>(dim: usize, terms: &[(F, &[F])]) -> Element<F> {
    let mut out = vec![F::zero(); dim];
    for (c, v) in terms {
        axpy(&mut out, c, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fischer::build_space;
    use crate::groups::{b, generate_class, TranspositionClass};
    use crate::scalar::int;
    use proptest::prelude::*;

    fn s4() -> (TranspositionClass, MatsuoAlgebra<RatFunc>) {
        let cls = generate_class(1, 4).unwrap();
        let sp = build_space(&cls).unwrap();
        (cls, MatsuoAlgebra::symbolic(sp))
    }

    #[test]
    fn products() {
        let (cls, m) = s4();
        let pt = |i, j| m.point(cls.position(&b(1, 4, i, j)).unwrap());
        assert!(m
            .product(&pt(1, 2), &pt(3, 4))
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        let h = RatFunc::eta().scale(&rat(1, 2));
        let expect = linear_combination(
            6,
            &[
                (h.clone(), &pt(1, 2)),
                (h.clone(), &pt(1, 3)),
                (-h, &pt(2, 3)),
            ],
        );
        assert_eq!(m.product(&pt(1, 2), &pt(1, 3)).unwrap(), expect);

        let one = RatFunc::one();
        let d1 = linear_combination(6, &[(one.clone(), &pt(1, 3)), (one.clone(), &pt(2, 4))]);
        let d2 = linear_combination(6, &[(one.clone(), &pt(1, 4)), (one.clone(), &pt(2, 3))]);
        let e = RatFunc::eta();
        let expect = linear_combination(
            6,
            &[
                (-e.clone(), &pt(1, 2)),
                (-e.clone(), &pt(3, 4)),
                (e.clone(), &d1),
                (e, &d2),
            ],
        );
        assert_eq!(m.product(&d1, &d2).unwrap(), expect);
        assert!(matches!(
            m.product(&d1, &[RatFunc::one()]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn form_values() {
        let (cls, m) = s4();
        let pt = |i, j| m.point(cls.position(&b(1, 4, i, j)).unwrap());
        assert_eq!(m.frobenius(&pt(1, 2), &pt(1, 2)).unwrap(), RatFunc::one());
        assert_eq!(
            m.frobenius(&pt(1, 2), &pt(2, 3)).unwrap(),
            RatFunc::eta().scale(&rat(1, 2))
        );
        assert!(m.frobenius(&pt(1, 2), &pt(3, 4)).unwrap().is_zero());
    }

    #[test]
    fn excluded_values() {
        let sp = build_space(&generate_class(1, 3).unwrap()).unwrap();
        assert!(matches!(
            MatsuoAlgebra::numeric(sp.clone(), int(1)),
            Err(Error::ExcludedEta(_))
        ));
        assert!(MatsuoAlgebra::numeric(sp.clone(), int(0)).is_err());
        let half = MatsuoAlgebra::numeric(sp, rat(1, 2)).unwrap();
        assert!(half.require_double_axes().is_err());
    }

    #[test]
    fn miyamoto_maps() {
        let (cls, m) = s4();
        let i = |a, c| cls.position(&b(1, 4, a, c)).unwrap();
        let t = m.miyamoto_point_map(i(1, 2));
        assert_eq!(t.apply(i(1, 3)), i(2, 3));
        assert_eq!(t.apply(i(1, 4)), i(2, 4));
        assert_eq!(t.apply(i(3, 4)), i(3, 4));

        let y = Axis::Double(i(1, 3), i(2, 4));
        assert_eq!(m.axis_point_map(&y).unwrap().apply(i(1, 2)), i(3, 4));

        let tx = m.miyamoto_matrix(&y).unwrap();
        let ta = m.miyamoto_matrix(&Axis::Single(i(1, 3))).unwrap();
        let tb = m.miyamoto_matrix(&Axis::Single(i(2, 4))).unwrap();
        assert_eq!(tx, ta.mul(&tb).unwrap());
        assert_eq!(ta, permutation_matrix(&m.miyamoto_point_map(i(1, 3))));
        assert!(matches!(
            m.miyamoto_matrix(&Axis::Double(i(1, 2), i(1, 3))),
            Err(Error::NotAnAxis(_))
        ));
    }

    #[test]
    fn group_orders() {
        let (_, m) = s4();
        let all: Vec<Axis> = (0..6).map(Axis::Single).collect();
        assert_eq!(m.miyamoto_group_order(&all, 1000).unwrap(), 24);
        assert_eq!(m.miyamoto_group_order(&[], 10).unwrap(), 1);
        assert_eq!(m.miyamoto_group_order(&all, 5), Err(Error::CapExceeded(5)));
        let line = FischerSpace::from_lines(vec!["a".into(), "b".into(), "c".into()], &[[0, 1, 2]])
            .unwrap();
        let m3 = MatsuoAlgebra::symbolic(line);
        assert_eq!(m3.miyamoto_group_order(&[Axis::Single(0)], 10).unwrap(), 2);
    }

    fn vec6() -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-3i64..4).prop_map(int), 6)
    }

    proptest! {
        #[test]
        fn algebra_identities(u in vec6(), v in vec6(), w in vec6(), a in 0usize..6) {
            let sp = build_space(&generate_class(1, 4).unwrap()).unwrap();
            let m = MatsuoAlgebra::numeric(sp, rat(-1, 4)).unwrap();
            let uv = m.product(&u, &v).unwrap();
            prop_assert_eq!(&uv, &m.product(&v, &u).unwrap());
            let vw = m.product(&v, &w).unwrap();
            prop_assert_eq!(m.frobenius(&uv, &w).unwrap(), m.frobenius(&u, &vw).unwrap());
            let t = permutation_matrix::<Rational>(&m.miyamoto_point_map(a));
            let (tu, tv) = (t.apply(&u).unwrap(), t.apply(&v).unwrap());
            prop_assert_eq!(t.apply(&uv).unwrap(), m.product(&tu, &tv).unwrap());
            prop_assert_eq!(m.frobenius(&tu, &tv).unwrap(), m.frobenius(&u, &v).unwrap());
        }
    }
}
