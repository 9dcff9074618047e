//! Gram matrices, determinants, radicals, projection graphs and
//! simplicity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use petgraph::algo::{connected_components, kosaraju_scc};
use petgraph::graph::{DiGraph, UnGraph};
use rayon::prelude::*;
use serde::Serialize;

use crate::axes::{eigenspaces, Axis};
use crate::error::{Error, Result};
use crate::fischer::build_space;
use crate::groups::{b, generate_class};
use crate::linalg::{bareiss_determinant, is_zero_vec, EchelonBasis, Matrix};
use crate::matsuo::{Element, MatsuoAlgebra};
use crate::scalar::{format_rational, int, rat, Field, RatFunc, Rational, UniPoly};

pub fn gram_matrix<F: Field>(alg: &MatsuoAlgebra<F>, basis: &[Element<F>]) -> Result<Matrix<F>> {
    for v in basis {
        if v.len() != alg.dim() {
            return Err(Error::NotInAlgebra);
        }
    }
    let n = basis.len();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = alg.frobenius(&basis[i], &basis[j])?;
            g[(j, i)] = x.clone();
            g[(i, j)] = x;
        }
    }
    Ok(g)
}

pub fn axis_gram<F: Field>(alg: &MatsuoAlgebra<F>, axes: &[Axis]) -> Result<Matrix<F>> {
    let els: Vec<_> = axes.iter().map(|a| alg.axis_element(a)).collect();
    gram_matrix(alg, &els)
}

fn polynomial_entries(m: &Matrix<RatFunc>) -> Result<Vec<Vec<UniPoly>>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m[(i, j)]
                        .to_poly()
                        .ok_or_else(|| Error::NotPolynomial(m[(i, j)].to_string()))
                })
                .collect()
        })
        .collect()
}

/// Fraction-free determinant of a matrix with polynomial entries.
pub fn symbolic_determinant(m: &Matrix<RatFunc>) -> Result<UniPoly> {
    bareiss_determinant(&polynomial_entries(m)?)
}

pub fn numeric_determinant(m: &Matrix<Rational>) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    m.determinant()
}

/// The determinant by evaluating at `Σ max row degree + 1` integers and
/// interpolating.
pub fn interpolation_determinant(m: &Matrix<RatFunc>) -> Result<UniPoly> {
    let entries = polynomial_entries(m)?;
    let bound: usize = entries
        .iter()
        .map(|row| row.iter().filter_map(UniPoly::degree).max().unwrap_or(0))
        .sum();
    let points = (0..=bound as i64)
        .into_par_iter()
        .map(|x| {
            let x = int(x);
            let at = Matrix::from_fn(m.rows(), m.cols(), |i, j| entries[i][j].eval(&x));
            Ok((x, at.determinant()?))
        })
        .collect::<Result<Vec<_>>>()?;
    UniPoly::interpolate(&points)
}

fn check_eta(eta: &Rational) -> Result<()> {
    if eta.is_zero() || eta.is_one() || *eta == rat(1, 2) {
        return Err(Error::SpecializationAtExcludedEta(format_rational(eta)));
    }
    Ok(())
}

/// The radical of the form on a subalgebra at one value of η.
#[derive(Debug, Clone)]
pub struct Radical {
    pub eta: Rational,
    /// Coordinates with respect to the given basis.
    pub coordinates: Vec<Vec<Rational>>,
    /// The same vectors in the point basis.
    pub vectors: Vec<Element<Rational>>,
    pub is_ideal: bool,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Specializes a symbolic basis at `eta` and computes the radical of the
/// form on its span, checking that the radical is an ideal.
pub fn radical_basis(
    alg: &MatsuoAlgebra<RatFunc>,
    basis: &[Element<RatFunc>],
    eta: &Rational,
) -> Result<Radical> {
    check_eta(eta)?;
    let num = alg.specialize(eta.clone())?;
    let rows = basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| c.evaluate_at(eta))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    radical_numeric(&num, &rows)
}

pub fn radical_numeric(
    alg: &MatsuoAlgebra<Rational>,
    basis: &[Element<Rational>],
) -> Result<Radical> {
    check_eta(alg.eta())?;
    let mut span = EchelonBasis::new(alg.dim());
    for v in basis {
        if !span.insert(v) {
            return Err(Error::SymbolicDegenerate);
        }
    }
    let g = gram_matrix(alg, basis)?;
    let coordinates = g.nullspace();
    let vectors: Vec<Element<Rational>> = coordinates
        .iter()
        .map(|c| {
            let mut v = alg.zero();
            for (k, x) in c.iter().enumerate() {
                crate::linalg::axpy(&mut v, x, &basis[k]);
            }
            v
        })
        .collect();
    let mut rad = EchelonBasis::new(alg.dim());
    for v in &vectors {
        rad.insert(v);
    }
    let mut is_ideal = true;
    'outer: for r in &vectors {
        for b in basis {
            if !rad.contains(&alg.product(r, b)?) {
                is_ideal = false;
                break 'outer;
            }
        }
    }
    Ok(Radical {
        eta: alg.eta().clone(),
        coordinates,
        vectors,
        is_ideal,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionGraph {
    pub vertices: Vec<Axis>,
    pub edges: Vec<(usize, usize)>,
    /// Edges are arcs `from → to` when true.
    pub directed: bool,
    pub connected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionMode {
    /// Form values when no axis is singular, projections otherwise.
    Auto,
    Projection,
}

/// The projection graph of `axes` inside `span`.
pub fn projection_graph<F: Field>(
    alg: &MatsuoAlgebra<F>,
    axes: &[Axis],
    span: &EchelonBasis<F>,
    mode: ProjectionMode,
) -> Result<ProjectionGraph> {
    let els: Vec<_> = axes.iter().map(|a| alg.axis_element(a)).collect();
    let nonsingular = els
        .iter()
        .map(|x| alg.frobenius(x, x).map(|v| !v.is_zero()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|x| x);
    let n = axes.len();
    if mode == ProjectionMode::Auto && nonsingular {
        let mut g = UnGraph::<usize, ()>::new_undirected();
        let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !alg.frobenius(&els[i], &els[j])?.is_zero() {
                    g.add_edge(nodes[i], nodes[j], ());
                    edges.push((i, j));
                }
            }
        }
        return Ok(ProjectionGraph {
            vertices: axes.to_vec(),
            edges,
            directed: false,
            connected: n <= 1 || connected_components(&g) == 1,
        });
    }
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..n).map(|i| g.add_node(i)).collect();
    let mut edges = Vec::new();
    for (to, a) in axes.iter().enumerate() {
        let proj = one_projections(alg, a, span, &els)?;
        for (from, nonzero) in proj.into_iter().enumerate() {
            if from != to && nonzero {
                g.add_edge(nodes[from], nodes[to], ());
                edges.push((from, to));
            }
        }
    }
    Ok(ProjectionGraph {
        vertices: axes.to_vec(),
        edges,
        directed: true,
        connected: n <= 1 || kosaraju_scc(&g).len() == 1,
    })
}

/// For each vector, whether its component in the 1-eigenspace of `axis`
/// is nonzero.
fn one_projections<F: Field>(
    alg: &MatsuoAlgebra<F>,
    axis: &Axis,
    span: &EchelonBasis<F>,
    vs: &[Element<F>],
) -> Result<Vec<bool>> {
    let eta = alg.eta().clone();
    let two_eta = eta.clone() + eta.clone();
    let dec = eigenspaces(alg, axis, &[F::one(), F::zero(), eta, two_eta], span)?;
    if !dec.is_semisimple() {
        return Err(Error::NotAnAxis(format!("{axis:?} is not semisimple")));
    }
    let columns: Vec<Vec<F>> = dec
        .spaces
        .iter()
        .flatten()
        .map(|v| span.coordinates(v))
        .collect::<Result<_>>()?;
    let ones = dec.spaces[0].len();
    let p = Matrix::from_rows(columns)?.transpose();
    let pinv = p.inverse()?;
    vs.iter()
        .map(|v| {
            let c = pinv.apply(&span.coordinates(v)?)?;
            Ok(c[..ones].iter().any(|x| !x.is_zero()))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Simple,
    NotSimple { radical_dim: usize },
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub connected: bool,
    pub det_nonzero: bool,
    pub verdict: Verdict,
}

/// Simplicity at a rational η: connected projection graph and zero radical.
pub fn simplicity(
    alg: &MatsuoAlgebra<RatFunc>,
    basis: &[Element<RatFunc>],
    axes: &[Axis],
    eta: &Rational,
) -> Result<SimplicityVerdict> {
    check_eta(eta)?;
    let num = alg.specialize(eta.clone())?;
    let rows: Vec<Element<Rational>> = basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| c.evaluate_at(eta))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut span = EchelonBasis::new(num.dim());
    for r in &rows {
        span.insert(r);
    }
    let graph = projection_graph(&num, axes, &span, ProjectionMode::Auto)?;
    let radical = radical_numeric(&num, &rows)?;
    let det_nonzero = radical.dim() == 0;
    let verdict = match (graph.connected, det_nonzero) {
        (true, true) => Verdict::Simple,
        (true, false) => Verdict::NotSimple {
            radical_dim: radical.dim(),
        },
        (false, _) => Verdict::Inconclusive("projection graph is disconnected".into()),
    };
    Ok(SimplicityVerdict {
        connected: graph.connected,
        det_nonzero,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaScanEntry {
    pub eta: String,
    pub multiplicity: usize,
    /// `None` at the excluded values 0, 1, 1/2.
    pub radical_dim: Option<usize>,
    pub radical_is_ideal: Option<bool>,
}

pub fn eta_scan(
    alg: &MatsuoAlgebra<RatFunc>,
    basis: &[Element<RatFunc>],
    roots: &BTreeMap<Rational, usize>,
) -> Result<Vec<EtaScanEntry>> {
    roots
        .iter()
        .map(|(r, &m)| {
            let (radical_dim, radical_is_ideal) = match radical_basis(alg, basis, r) {
                Ok(rad) => (Some(rad.dim()), Some(rad.is_ideal)),
                Err(Error::SpecializationAtExcludedEta(_)) => (None, None),
                Err(e) => return Err(e),
            };
            Ok(EtaScanEntry {
                eta: format_rational(r),
                multiplicity: m,
                radical_dim,
                radical_is_ideal,
            })
        })
        .collect()
}

/// Gram matrix, determinant, its rational roots and the radical at each
/// admissible root.
#[derive(Debug, Clone)]
pub struct GramAnalysis {
    pub gram: Matrix<RatFunc>,
    pub det: UniPoly,
    pub roots: BTreeMap<Rational, usize>,
    pub scan: Vec<EtaScanEntry>,
}

impl GramAnalysis {
    /// Roots other than the excluded values 0, 1, 1/2.
    pub fn critical(&self) -> Vec<Rational> {
        self.roots
            .keys()
            .filter(|r| check_eta(r).is_ok())
            .cloned()
            .collect()
    }
}

pub fn analyse(alg: &MatsuoAlgebra<RatFunc>, basis: &[Element<RatFunc>]) -> Result<GramAnalysis> {
    let gram = gram_matrix(alg, basis)?;
    let det = symbolic_determinant(&gram)?;
    let roots = if det.is_zero() {
        BTreeMap::new()
    } else {
        det.rational_roots()?
    };
    let scan = eta_scan(alg, basis, &roots)?;
    Ok(GramAnalysis {
        gram,
        det,
        roots,
        scan,
    })
}

/// `(θ, multiplicity)` for the Johnson graph `J(k,2)`, zero multiplicities
/// dropped.
pub fn johnson_spectrum(k: usize) -> Vec<(i64, usize)> {
    let k = k as i64;
    [(2 * (k - 2), 1), (k - 4, k - 1), (-2, k * (k - 3) / 2)]
        .into_iter()
        .filter(|&(_, m)| m > 0)
        .map(|(t, m)| (t, m as usize))
        .collect()
}

/// `(2(1−η))^{k²−k} (2(k−1)η+1) ((k−2)η+1)^{k−1}`.
pub fn qk_closed_form(k: usize) -> UniPoly {
    let k = k as i64;
    let two_one_minus = UniPoly::from_ints(&[2, -2]);
    two_one_minus.pow((k * k - k) as u32)
        * UniPoly::from_ints(&[1, 2 * (k - 1)])
        * UniPoly::from_ints(&[1, k - 2]).pow((k - 1) as u32)
}

/// The flip subalgebra `Q_k` with its singles `a_i` and doubles
/// `b_{i,j} = (2i−1,2j−1)+(2i,2j)`, `c_{i,j} = (2i−1,2j)+(2i,2j−1)`.
pub struct QkBasis {
    pub k: usize,
    pub algebra: MatsuoAlgebra<RatFunc>,
    pub singles: Vec<Element<RatFunc>>,
    /// Indexed like the pairs `i < j`.
    pub b: Vec<Element<RatFunc>>,
    pub c: Vec<Element<RatFunc>>,
    pub pairs: Vec<(usize, usize)>,
}

impl QkBasis {
    pub fn new(k: usize) -> Result<Self> {
        let n = 2 * k;
        let cls = generate_class(1, n)?;
        let algebra = MatsuoAlgebra::symbolic(build_space(&cls)?);
        let pt =
            |i: usize, j: usize| -> Result<usize> { cls.position(&b(1, n, i.min(j), i.max(j))) };
        let vec_of = |pts: &[usize]| {
            let mut v = algebra.zero();
            for &p in pts {
                v[p] = RatFunc::one();
            }
            v
        };
        let singles = (1..=k)
            .map(|i| Ok(vec_of(&[pt(2 * i - 1, 2 * i)?])))
            .collect::<Result<Vec<_>>>()?;
        let mut pairs = Vec::new();
        let mut bs = Vec::new();
        let mut cs = Vec::new();
        for i in 1..=k {
            for j in i + 1..=k {
                pairs.push((i, j));
                bs.push(vec_of(&[pt(2 * i - 1, 2 * j - 1)?, pt(2 * i, 2 * j)?]));
                cs.push(vec_of(&[pt(2 * i - 1, 2 * j)?, pt(2 * i, 2 * j - 1)?]));
            }
        }
        Ok(QkBasis {
            k,
            algebra,
            singles,
            b: bs,
            c: cs,
            pairs,
        })
    }

    /// Singles, then `b` and `c` for each pair.
    pub fn standard(&self) -> Vec<Element<RatFunc>> {
        let mut out = self.singles.clone();
        for (x, y) in self.b.iter().zip(&self.c) {
            out.push(x.clone());
            out.push(y.clone());
        }
        out
    }

    pub fn axes(&self) -> Vec<Axis> {
        self.standard()
            .iter()
            .map(|v| {
                let s: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                match s[..] {
                    [p] => Axis::Single(p),
                    [p, q] => Axis::double(p, q),
                    _ => unreachable!(),
                }
            })
            .collect()
    }

    /// The basis `a_i, d_{i,j} = (b−c)/2, f_{i,j} = b + c − 2η(a_i + a_j)`.
    pub fn split_basis(&self) -> Vec<Element<RatFunc>> {
        let half = RatFunc::constant(rat(1, 2));
        let two_eta = RatFunc::eta().scale(&int(2));
        let mut out = self.singles.clone();
        for (b, c) in self.b.iter().zip(&self.c) {
            out.push(
                b.iter()
                    .zip(c)
                    .map(|(x, y)| (x.clone() - y.clone()) * half.clone())
                    .collect(),
            );
        }
        for (idx, &(i, j)) in self.pairs.iter().enumerate() {
            let (b, c) = (&self.b[idx], &self.c[idx]);
            out.push(
                (0..b.len())
                    .map(|p| {
                        b[p].clone() + c[p].clone()
                            - two_eta.clone()
                                * (self.singles[i - 1][p].clone() + self.singles[j - 1][p].clone())
                    })
                    .collect(),
            );
        }
        out
    }
}

/// Whether `det Gram(Q_k)` equals [`qk_closed_form`].
pub fn qk_closed_form_check(k: usize) -> Result<bool> {
    let q = QkBasis::new(k)?;
    let det = symbolic_determinant(&gram_matrix(&q.algebra, &q.standard())?)?;
    Ok(det == qk_closed_form(k))
}

/// Whether the Gram matrix in [`QkBasis::split_basis`] is block diagonal
/// with blocks `I`, `(1−η)I` and `4((−2η²+η+1)I + (−η²+η)J)`, `J` the
/// adjacency matrix of `J(k,2)`.
pub fn qk_block_check(k: usize) -> Result<bool> {
    let q = QkBasis::new(k)?;
    let g = gram_matrix(&q.algebra, &q.split_basis())?;
    let m = q.pairs.len();
    let poly = |c: &[i64]| RatFunc::from_poly(UniPoly::from_ints(c));
    let expected = Matrix::from_fn(k + 2 * m, k + 2 * m, |r, s| {
        if r < k || s < k {
            return if r == s {
                RatFunc::one()
            } else {
                RatFunc::zero()
            };
        }
        let (r, s) = (r - k, s - k);
        if r < m || s < m {
            return if r == s {
                poly(&[1, -1])
            } else {
                RatFunc::zero()
            };
        }
        let (x, y) = (q.pairs[r - m], q.pairs[s - m]);
        let meet = [x.0, x.1].iter().filter(|t| [y.0, y.1].contains(t)).count();
        match meet {
            2 => poly(&[4, 4, -8]),
            1 => poly(&[0, 4, -4]),
            _ => RatFunc::zero(),
        }
    });
    Ok(g == expected)
}

/// Whether every element of `basis` lies in `span`.
pub fn spans_within(span: &EchelonBasis<RatFunc>, basis: &[Element<RatFunc>]) -> bool {
    basis.iter().all(|v| is_zero_vec(v) || span.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn johnson() {
        assert_eq!(johnson_spectrum(4), vec![(4, 1), (0, 3), (-2, 2)]);
        assert_eq!(johnson_spectrum(3), vec![(2, 1), (-1, 2)]);
    }

    #[test]
    fn qk_small() {
        for k in 2..=3 {
            assert!(qk_closed_form_check(k).unwrap(), "k = {k}");
            assert!(qk_block_check(k).unwrap(), "k = {k}");
        }
        let q3 = qk_closed_form(3);
        // (2(1−η))⁶(4η+1)(η+1)²
        let expect = UniPoly::from_ints(&[2, -2]).pow(6)
            * UniPoly::from_ints(&[1, 4])
            * UniPoly::from_ints(&[1, 1]).pow(2);
        assert_eq!(q3, expect);
    }

    #[test]
    fn determinant_oracle_agrees() {
        let q = QkBasis::new(3).unwrap();
        let g = gram_matrix(&q.algebra, &q.standard()).unwrap();
        assert_eq!(
            symbolic_determinant(&g).unwrap(),
            interpolation_determinant(&g).unwrap()
        );
        let id: Matrix<RatFunc> = Matrix::identity(4);
        assert_eq!(symbolic_determinant(&id).unwrap(), UniPoly::one());
        let rect: Matrix<RatFunc> = Matrix::zeros(2, 3);
        assert!(matches!(
            symbolic_determinant(&rect),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn q2_radical() {
        let q = QkBasis::new(2).unwrap();
        let rad = radical_basis(&q.algebra, &q.standard(), &rat(-1, 2)).unwrap();
        assert_eq!(rad.dim(), 1);
        assert!(rad.is_ideal);
        assert!(matches!(
            radical_basis(&q.algebra, &q.standard(), &rat(1, 2)),
            Err(Error::SpecializationAtExcludedEta(_))
        ));
        let v = simplicity(&q.algebra, &q.standard(), &q.axes(), &rat(-1, 2)).unwrap();
        assert_eq!(v.verdict, Verdict::NotSimple { radical_dim: 1 });
        let v = simplicity(&q.algebra, &q.standard(), &q.axes(), &rat(-1, 3)).unwrap();
        assert_eq!(v.verdict, Verdict::Simple);
    }

    #[test]
    fn projection_graphs() {
        let q = QkBasis::new(3).unwrap();
        let m = q.algebra.specialize(rat(-1, 3)).unwrap();
        let rows: Vec<Vec<Rational>> = q
            .standard()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| c.evaluate_at(&rat(-1, 3)).unwrap())
                    .collect()
            })
            .collect();
        let mut span = EchelonBasis::new(m.dim());
        for r in &rows {
            span.insert(r);
        }
        let form = projection_graph(&m, &q.axes(), &span, ProjectionMode::Auto).unwrap();
        assert!(form.connected && !form.directed);
        let proj = projection_graph(&m, &q.axes(), &span, ProjectionMode::Projection).unwrap();
        assert!(proj.connected && proj.directed);
        // arcs both ways exactly where the form is nonzero
        for &(i, j) in &form.edges {
            assert!(proj.edges.contains(&(i, j)) && proj.edges.contains(&(j, i)));
        }
        assert_eq!(proj.edges.len(), 2 * form.edges.len());

        let cls = generate_class(1, 4).unwrap();
        let m = MatsuoAlgebra::numeric(build_space(&cls).unwrap(), rat(-1, 3)).unwrap();
        let a = Axis::Single(cls.position(&b(1, 4, 1, 2)).unwrap());
        let c = Axis::Single(cls.position(&b(1, 4, 3, 4)).unwrap());
        let mut span = EchelonBasis::new(m.dim());
        span.insert(&m.axis_element(&a));
        span.insert(&m.axis_element(&c));
        let g = projection_graph(&m, &[a, c], &span, ProjectionMode::Auto).unwrap();
        assert!(!g.connected);
    }
}
