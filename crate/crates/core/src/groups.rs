//! The groups F_p^n : S_n for p ∈ {1, 2, 3} and their classes of
//! 3-transpositions.
//!
//! An element is a pair `(v, σ)` with `v ∈ F_p^n` and `σ ∈ S_n`; for
//! `p = 1` the vector part is empty and the group is plain `S_n`.
//! Multiplication is `(v,σ)(w,τ) = (v + σ·w, στ)` with
//! `(σ·w)_i = w_{σ⁻¹(i)}`, permutations composed right to left, and
//! conjugation is `a^g = g⁻¹ a g`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSymElement {
    p: u8,
    v: Vec<u8>,
    sigma: Vec<u8>,
}

impl AffineSymElement {
    pub fn identity(p: u8, n: usize) -> Self {
        AffineSymElement {
            p,
            v: if p == 1 { Vec::new() } else { vec![0; n] },
            sigma: (0..n as u8).collect(),
        }
    }

    /// Builds `(v, σ)` from a vector (ignored when `p = 1`) and a
    /// zero-based one-line permutation.
    pub fn new(p: u8, v: Vec<u8>, sigma: Vec<u8>) -> Result<Self> {
        if !(1..=3).contains(&p) {
            return Err(Error::InvalidArgument(format!("modulus {p} not in 1..=3")));
        }
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in &sigma {
            if (s as usize) >= n || std::mem::replace(&mut seen[s as usize], true) {
                return Err(Error::InvalidArgument(format!(
                    "not a permutation: {sigma:?}"
                )));
            }
        }
        let v = if p == 1 {
            Vec::new()
        } else {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            v.into_iter().map(|x| x % p).collect()
        };
        Ok(AffineSymElement { p, v, sigma })
    }

    /// A pure permutation from 1-based disjoint or overlapping cycles,
    /// composed right to left.
    pub fn from_cycles(p: u8, n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Self::identity(p, n);
        for cyc in cycles.iter().rev() {
            let mut sigma: Vec<u8> = (0..n as u8).collect();
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::InvalidArgument(format!(
                        "cycle entry out of range 1..={n}"
                    )));
                }
                sigma[a - 1] = (b - 1) as u8;
            }
            let c = Self::new(p, vec![0; n], sigma)?;
            acc = c.mul(&acc)?;
        }
        Ok(acc)
    }

    /// The pure translation by `v`.
    pub fn translation(p: u8, v: Vec<u8>) -> Result<Self> {
        let n = v.len();
        Self::new(p, v, (0..n as u8).collect())
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.sigma.len()
    }

    pub fn vector(&self) -> &[u8] {
        &self.v
    }

    pub fn permutation(&self) -> &[u8] {
        &self.sigma
    }

    pub fn is_identity(&self) -> bool {
        self.v.iter().all(|&x| x == 0)
            && self.sigma.iter().enumerate().all(|(i, &s)| s as usize == i)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.p != o.p || self.sigma.len() != o.sigma.len() {
            return Err(Error::ModeMismatch(format!(
                "group parameters differ: (p={}, n={}) vs (p={}, n={})",
                self.p,
                self.degree(),
                o.p,
                o.degree()
            )));
        }
        Ok(())
    }

    /// `σ·w` with `(σ·w)_i = w_{σ⁻¹(i)}`.
    fn act(&self, w: &[u8]) -> Vec<u8> {
        let mut out = vec![0; w.len()];
        for (i, &s) in self.sigma.iter().enumerate() {
            out[s as usize] = w[i];
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let v = if self.p == 1 {
            Vec::new()
        } else {
            let sw = self.act(&o.v);
            self.v
                .iter()
                .zip(&sw)
                .map(|(a, b)| (a + b) % self.p)
                .collect()
        };
        let sigma = o.sigma.iter().map(|&t| self.sigma[t as usize]).collect();
        Ok(AffineSymElement {
            p: self.p,
            v,
            sigma,
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.sigma.len()];
        for (i, &s) in self.sigma.iter().enumerate() {
            inv[s as usize] = i as u8;
        }
        let inv_el = AffineSymElement {
            p: self.p,
            v: Vec::new(),
            sigma: inv,
        };
        let v = if self.p == 1 {
            Vec::new()
        } else {
            inv_el
                .act(&self.v)
                .into_iter()
                .map(|x| (self.p - x) % self.p)
                .collect()
        };
        AffineSymElement { v, ..inv_el }
    }

    /// The image under the automorphism `z : (v, σ) ↦ (−v, σ)`.
    pub fn twist_z(&self) -> Self {
        AffineSymElement {
            p: self.p,
            v: self.v.iter().map(|&x| (self.p - x) % self.p).collect(),
            sigma: self.sigma.clone(),
        }
    }

    /// Parses labels in the rendered form, e.g. `(e1+e2)(1,2)`, `(1,3)`,
    /// `(e2-e1)(1,2)` or `1` for the identity.
    pub fn parse(p: u8, n: usize, s: &str) -> Result<Self> {
        let bad = |m: &str| Error::parse(0, format!("{m} in element {s:?}"));
        let s = s.trim();
        if s == "1" || s == "()" {
            return Ok(Self::identity(p, n));
        }
        let mut v = vec![0u8; n];
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let end = body.find(')').ok_or_else(|| bad("unclosed '('"))?;
            let inner = &body[..end];
            rest = &body[end + 1..];
            if inner.contains('e') {
                if p == 1 {
                    return Err(bad("vector part in S_n"));
                }
                let mut sign = 1i64;
                let mut chunk = String::new();
                let mut terms = Vec::new();
                for c in inner.chars().chain(std::iter::once('+')) {
                    if c == '+' || c == '-' {
                        if !chunk.is_empty() {
                            terms.push((sign, std::mem::take(&mut chunk)));
                        }
                        sign = if c == '-' { -1 } else { 1 };
                    } else {
                        chunk.push(c);
                    }
                }
                for (sign, t) in terms {
                    let (coef, idx) = t.split_once('e').ok_or_else(|| bad("bad term"))?;
                    let coef: i64 = if coef.is_empty() {
                        1
                    } else {
                        coef.parse().map_err(|_| bad("bad coefficient"))?
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad index"))?;
                    if idx == 0 || idx > n {
                        return Err(bad("index out of range"));
                    }
                    let val = (sign * coef).rem_euclid(p as i64) as u8;
                    v[idx - 1] = (v[idx - 1] + val) % p;
                }
            } else {
                let cyc: Vec<usize> = inner
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| bad("bad cycle entry")))
                    .collect::<Result<_>>()?;
                cycles.push(cyc);
            }
        }
        let perm = Self::from_cycles(p, n, &cycles)?;
        Self::new(p, v, perm.sigma)
    }

    /// Disjoint cycles of the permutation part, 1-based, fixed points
    /// omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.sigma[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.sigma[i] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for AffineSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, &x) in self.v.iter().enumerate() {
            match (x, self.p) {
                (0, _) => {}
                (1, _) => pos.push(format!("e{}", i + 1)),
                _ => neg.push(format!("e{}", i + 1)),
            }
        }
        if !pos.is_empty() || !neg.is_empty() {
            f.write_str("(")?;
            let mut first = true;
            for t in &pos {
                if !first {
                    f.write_str("+")?;
                }
                f.write_str(t)?;
                first = false;
            }
            for t in &neg {
                write!(f, "-{t}")?;
            }
            f.write_str(")")?;
        }
        for cyc in self.cycles() {
            let parts: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Multiplicative order, by repeated multiplication.
pub fn element_order(g: &AffineSymElement) -> usize {
    let mut acc = g.clone();
    let mut k = 1;
    while !acc.is_identity() {
        acc = acc.mul(g).expect("same group");
        k += 1;
    }
    k
}

/// `a^g = g⁻¹ a g`.
pub fn conjugate(a: &AffineSymElement, g: &AffineSymElement) -> Result<AffineSymElement> {
    g.inverse().mul(a)?.mul(g)
}

/// Which coset representative of a transposition to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TranspositionVariant {
    /// `(i,j)` with zero vector part.
    Plain,
    /// `(e_i+e_j)(i,j)`, for p = 2.
    Sum,
    /// `(e_i−e_j)(i,j)`, for p = 3.
    Diff,
    /// `(e_j−e_i)(i,j)`, for p = 3.
    RevDiff,
}

impl TranspositionVariant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" | "b" => Ok(Self::Plain),
            "sum" | "+" => Ok(Self::Sum),
            "diff" | "-" => Ok(Self::Diff),
            "revdiff" | "rev" => Ok(Self::RevDiff),
            _ => Err(Error::InvalidArgument(format!("unknown variant {s:?}"))),
        }
    }
}

pub fn make_transposition(
    p: u8,
    n: usize,
    i: usize,
    j: usize,
    variant: TranspositionVariant,
) -> Result<AffineSymElement> {
    use TranspositionVariant::*;
    let ok = matches!(
        (p, variant),
        (1, Plain) | (2, Plain | Sum) | (3, Plain | Diff | RevDiff)
    );
    if !ok {
        return Err(Error::BadVariant {
            p,
            variant: format!("{variant:?}"),
        });
    }
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    let mut v = vec![0u8; n];
    match variant {
        Plain => {}
        Sum => {
            v[i - 1] = 1;
            v[j - 1] = 1;
        }
        Diff => {
            v[i - 1] = 1;
            v[j - 1] = 2;
        }
        RevDiff => {
            v[i - 1] = 2;
            v[j - 1] = 1;
        }
    }
    let mut sigma: Vec<u8> = (0..n as u8).collect();
    sigma.swap(i - 1, j - 1);
    AffineSymElement::new(p, v, sigma)
}

/// The plain transposition `(i,j)`, and with [`c`] shorthand for
/// the labels `b_{i,j}` and `c_{i,j}`.
pub fn b(p: u8, n: usize, i: usize, j: usize) -> AffineSymElement {
    make_transposition(p, n, i, j, TranspositionVariant::Plain).expect("valid indices")
}

/// `c_{i,j}`: `(e_i+e_j)(i,j)` for p = 2 and `(e_i−e_j)(i,j)` for p = 3.
pub fn c(p: u8, n: usize, i: usize, j: usize) -> AffineSymElement {
    let variant = if p == 2 {
        TranspositionVariant::Sum
    } else {
        TranspositionVariant::Diff
    };
    make_transposition(p, n, i, j, variant).expect("valid indices")
}

/// A conjugacy class of 3-transpositions in F_p^n : S_n.
#[derive(Debug, Clone)]
pub struct TranspositionClass {
    p: u8,
    n: usize,
    elements: Vec<AffineSymElement>,
    index: HashMap<AffineSymElement, usize>,
}

impl TranspositionClass {
    pub fn modulus(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[AffineSymElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &AffineSymElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn position(&self, g: &AffineSymElement) -> Result<usize> {
        self.index_of(g)
            .ok_or_else(|| Error::NotInClass(g.to_string()))
    }
}

/// The class of `(1,2)` in F_p^n : S_n, sorted by canonical key.
///
/// The closure runs over conjugation by the generators `(i,i+1)` of S_n
/// and the translation `e_1`, so that for p > 1 the vector-carrying
/// transpositions are reached.
pub fn generate_class(p: u8, n: usize) -> Result<TranspositionClass> {
    if !(1..=3).contains(&p) {
        return Err(Error::InvalidArgument(format!("modulus {p} not in 1..=3")));
    }
    if !(2..=64).contains(&n) {
        return Err(Error::InvalidArgument(format!("degree {n} not in 2..=64")));
    }
    let mut gens: Vec<AffineSymElement> = (1..n).map(|i| b(p, n, i, i + 1)).collect();
    if p > 1 {
        let mut e1 = vec![0u8; n];
        e1[0] = 1;
        gens.push(AffineSymElement::translation(p, e1)?);
    }
    let seed = b(p, n, 1, 2);
    let mut seen = BTreeSet::new();
    seen.insert(seed.clone());
    let mut queue = VecDeque::from([seed]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = conjugate(&x, g)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let elements: Vec<_> = seen.into_iter().collect();
    for (i, c) in elements.iter().enumerate() {
        if element_order(c) != 2 {
            return Err(Error::ThreeTranspositionViolation {
                c: c.to_string(),
                d: c.to_string(),
                order: element_order(c),
            });
        }
        for d in &elements[i + 1..] {
            let o = element_order(&c.mul(d)?);
            if !(o == 2 || o == 3) {
                return Err(Error::ThreeTranspositionViolation {
                    c: c.to_string(),
                    d: d.to_string(),
                    order: o,
                });
            }
        }
    }
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    Ok(TranspositionClass {
        p,
        n,
        elements,
        index,
    })
}

/// An involution of the class: optionally `z`, then conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipMap {
    pub conjugator: AffineSymElement,
    pub twist_z: bool,
}

impl FlipMap {
    pub fn conj(g: AffineSymElement) -> Self {
        FlipMap {
            conjugator: g,
            twist_z: false,
        }
    }

    pub fn twisted(g: AffineSymElement) -> Self {
        FlipMap {
            conjugator: g,
            twist_z: true,
        }
    }

    /// The map `τ₀ = (1,2)(3,4)…(2k−1,2k)` on `n` letters.
    pub fn standard(p: u8, n: usize, k: usize, twist_z: bool) -> Result<Self> {
        if 2 * k > n {
            return Err(Error::InvalidArgument(format!(
                "{k} transpositions do not fit in {n} letters"
            )));
        }
        let cycles: Vec<Vec<usize>> = (0..k).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
        Ok(FlipMap {
            conjugator: AffineSymElement::from_cycles(p, n, &cycles)?,
            twist_z,
        })
    }
}

pub fn apply_flip(
    fm: &FlipMap,
    cls: &TranspositionClass,
    x: &AffineSymElement,
) -> Result<AffineSymElement> {
    cls.position(x)?;
    let y = if fm.twist_z { x.twist_z() } else { x.clone() };
    let y = conjugate(&y, &fm.conjugator)?;
    cls.position(&y)?;
    Ok(y)
}

/// Parses cycle notation such as `(1,2)(3,4)`.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(0, format!("expected '(' in {s:?}")))?;
        let end = body
            .find(')')
            .ok_or_else(|| Error::parse(0, format!("unclosed cycle in {s:?}")))?;
        let cyc: Vec<usize> = if body[..end].trim().is_empty() {
            Vec::new()
        } else {
            body[..end]
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Error::parse(0, format!("bad cycle entry {x:?}")))
                })
                .collect::<Result<_>>()?
        };
        if !cyc.is_empty() {
            out.push(cyc);
        }
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn transposition_labels() {
        assert_eq!(b(1, 4, 1, 2).to_string(), "(1,2)");
        assert_eq!(c(2, 4, 1, 2).to_string(), "(e1+e2)(1,2)");
        assert_eq!(c(3, 4, 1, 2).to_string(), "(e1-e2)(1,2)");
        let r = make_transposition(3, 4, 1, 2, TranspositionVariant::RevDiff).unwrap();
        assert_eq!(r.to_string(), "(e2-e1)(1,2)");
        assert!(matches!(
            make_transposition(1, 4, 1, 2, TranspositionVariant::Sum),
            Err(Error::BadVariant { .. })
        ));
        assert!(matches!(
            make_transposition(2, 4, 1, 2, TranspositionVariant::Diff),
            Err(Error::BadVariant { .. })
        ));
        for s in ["(e1+e2)(1,2)", "(e2-e1)(1,2)", "(1,3)"] {
            let p = if s.contains('+') { 2 } else { 3 };
            assert_eq!(AffineSymElement::parse(p, 4, s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn class_sizes() {
        for n in 2..=8 {
            assert_eq!(generate_class(1, n).unwrap().len(), n * (n - 1) / 2);
            assert_eq!(generate_class(2, n).unwrap().len(), n * (n - 1));
            assert_eq!(generate_class(3, n).unwrap().len(), 3 * n * (n - 1) / 2);
        }
    }

    #[test]
    fn hand_computations() {
        let s = b(1, 4, 1, 2).mul(&b(1, 4, 1, 3)).unwrap();
        assert_eq!(element_order(&s), 3);

        let (a, bb, cc, d) = (c(2, 4, 1, 2), b(2, 4, 3, 4), b(2, 4, 1, 3), b(2, 4, 2, 4));
        let prod = conjugate(&a, &d)
            .unwrap()
            .mul(&conjugate(&bb, &cc).unwrap())
            .unwrap();
        assert_eq!(prod.to_string(), "(e1+e4)");
        assert_eq!(element_order(&prod), 2);
        assert_eq!(a.mul(&d).unwrap().to_string(), "(e1+e2)(1,2,4)");

        let (a, d) = (c(3, 4, 1, 2), c(3, 4, 2, 4));
        assert_eq!(element_order(&a.mul(&d).unwrap()), 3);
    }

    #[test]
    fn flips() {
        let cls = generate_class(1, 4).unwrap();
        let fm = FlipMap::standard(1, 4, 2, false).unwrap();
        assert_eq!(
            apply_flip(&fm, &cls, &b(1, 4, 1, 3)).unwrap(),
            b(1, 4, 2, 4)
        );

        let cls3 = generate_class(3, 4).unwrap();
        let fm = FlipMap::twisted(b(3, 4, 1, 2));
        let x = c(3, 4, 1, 2);
        assert_eq!(apply_flip(&fm, &cls3, &x).unwrap(), x);

        let cls2 = generate_class(2, 4).unwrap();
        let fm = FlipMap::standard(2, 4, 2, false).unwrap();
        let x = AffineSymElement::parse(2, 4, "(e1+e3)(1,3)").unwrap();
        assert_eq!(
            apply_flip(&fm, &cls2, &x).unwrap().to_string(),
            "(e2+e4)(2,4)"
        );
        assert!(matches!(
            apply_flip(&fm, &cls2, &AffineSymElement::identity(2, 4)),
            Err(Error::NotInClass(_))
        ));
    }

    #[test]
    fn mismatched_groups() {
        assert!(matches!(
            b(1, 4, 1, 2).mul(&b(2, 4, 1, 2)),
            Err(Error::ModeMismatch(_))
        ));
        assert!(conjugate(&b(1, 4, 1, 2), &b(1, 5, 1, 2)).is_err());
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(
            parse_cycles("(1,2)(3,4)").unwrap(),
            vec![vec![1, 2], vec![3, 4]]
        );
        assert!(parse_cycles("()").unwrap().is_empty());
        assert!(parse_cycles("(1,2").is_err());
    }

    fn element(p: u8, n: usize) -> impl Strategy<Value = AffineSymElement> {
        (
            prop::collection::vec(0..p.max(1), n),
            Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle(),
        )
            .prop_map(move |(v, s)| AffineSymElement::new(p, v, s).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms((x, y, z) in (1u8..=3).prop_flat_map(|p| (element(p, 5), element(p, 5), element(p, 5)))) {
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert!(x.mul(&x.inverse()).unwrap().is_identity());
            prop_assert!(x.inverse().mul(&x).unwrap().is_identity());
        }

        #[test]
        fn flips_preserve_orders(p in 1u8..=3, i in 0usize..100, j in 0usize..100, twist in any::<bool>()) {
            let cls = generate_class(p, 6).unwrap();
            let fm = FlipMap::standard(p, 6, 3, twist && p == 3).unwrap();
            let x = &cls.elements()[i % cls.len()];
            let y = &cls.elements()[j % cls.len()];
            let fx = apply_flip(&fm, &cls, x).unwrap();
            let fy = apply_flip(&fm, &cls, y).unwrap();
            prop_assert_eq!(&apply_flip(&fm, &cls, &fx).unwrap(), x);
            prop_assert_eq!(element_order(&x.mul(y).unwrap()), element_order(&fx.mul(&fy).unwrap()));
            for g in [x, y] {
                let h = conjugate(g, y).unwrap();
                prop_assert!(cls.index_of(&h).is_some());
            }
        }
    }
}
