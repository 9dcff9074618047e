//! Fischer spaces: the point-line geometry of a class of 3-transpositions.

use std::fmt::Write as _;

use petgraph::graph::UnGraph;

use crate::error::{Error, Result};
use crate::groups::{apply_flip, conjugate, element_order, FlipMap, TranspositionClass};

const NONE: u32 = u32::MAX;

/// Points with labels and, for each collinear pair, the third point of
/// their line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FischerSpace {
    labels: Vec<String>,
    third: Vec<u32>,
}

impl FischerSpace {
    fn empty(labels: Vec<String>) -> Self {
        let n = labels.len();
        FischerSpace {
            labels,
            third: vec![NONE; n * n],
        }
    }

    /// Builds a space from explicit lines, checking that every pair of
    /// points lies on at most one line.
    pub fn from_lines(labels: Vec<String>, lines: &[[usize; 3]]) -> Result<Self> {
        let n = labels.len();
        let mut s = Self::empty(labels);
        for l in lines {
            let [a, b, c] = *l;
            if a == b || b == c || a == c {
                return Err(Error::LineAxiomViolation(format!(
                    "line {{{a},{b},{c}}} repeats a point"
                )));
            }
            if l.iter().any(|&x| x >= n) {
                return Err(Error::LineAxiomViolation(format!(
                    "line {{{a},{b},{c}}} has a point outside 0..{n}"
                )));
            }
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                if s.third(x, y).is_some() {
                    return Err(Error::LineAxiomViolation(format!(
                        "points {x} and {y} lie on two lines"
                    )));
                }
                s.set(x, y, z);
            }
        }
        Ok(s)
    }

    fn set(&mut self, x: usize, y: usize, z: usize) {
        let n = self.len();
        self.third[x * n + y] = z as u32;
        self.third[y * n + x] = z as u32;
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The third point on the line through `i` and `j`, if any.
    pub fn third(&self, i: usize, j: usize) -> Option<usize> {
        let t = self.third[i * self.len() + j];
        (t != NONE).then_some(t as usize)
    }

    pub fn collinear(&self, i: usize, j: usize) -> bool {
        self.third(i, j).is_some()
    }

    /// All lines as sorted triples, in lexicographic order.
    pub fn lines(&self) -> Vec<[usize; 3]> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(k) = self.third(i, j) {
                    if k > j {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Pairs `(d, e)` with `{a, d, e}` a line and `d < e`.
    pub fn lines_through(&self, a: usize) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|d| self.third(a, d).filter(|&e| d < e).map(|e| (d, e)))
            .collect()
    }

    pub fn neighbours(&self, a: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).filter_map(move |d| self.third(a, d).map(|e| (d, e)))
    }
}

/// The Fischer space of a class: `{c, d, c^d}` is a line whenever `cd`
/// has order 3.
pub fn build_space(cls: &TranspositionClass) -> Result<FischerSpace> {
    let els = cls.elements();
    let labels = els.iter().map(|e| e.to_string()).collect();
    let mut s = FischerSpace::empty(labels);
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            if element_order(&els[i].mul(&els[j])?) != 3 {
                continue;
            }
            let e = conjugate(&els[i], &els[j])?;
            let k = cls.position(&e)?;
            if conjugate(&els[j], &els[i])? != e || k == i || k == j {
                return Err(Error::InconsistentLine(i, j));
            }
            for (x, y, z) in [(i, j, k), (i, k, j), (j, k, i)] {
                if s.third(x, y).is_some_and(|t| t != z) {
                    return Err(Error::InconsistentLine(x, y));
                }
                s.set(x, y, z);
            }
        }
    }
    Ok(s)
}

/// The collinearity graph on `subset`; node weights are point indices.
pub fn diagram(space: &FischerSpace, subset: &[usize]) -> UnGraph<usize, ()> {
    let mut g = UnGraph::new_undirected();
    let nodes: Vec<_> = subset.iter().map(|&p| g.add_node(p)).collect();
    for i in 0..subset.len() {
        for j in i + 1..subset.len() {
            if space.collinear(subset[i], subset[j]) {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    g
}

/// A permutation of the points that maps lines to lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpaceAutomorphism {
    perm: Vec<usize>,
}

impl SpaceAutomorphism {
    pub fn identity(n: usize) -> Self {
        SpaceAutomorphism {
            perm: (0..n).collect(),
        }
    }

    /// Validates that `perm` is a permutation preserving collinearity.
    pub fn new(space: &FischerSpace, perm: Vec<usize>) -> Result<Self> {
        let n = space.len();
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &x in &perm {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAnAutomorphism("not a permutation".into()));
            }
        }
        for [a, b, c] in space.lines() {
            if space.third(perm[a], perm[b]) != Some(perm[c]) {
                return Err(Error::NotAnAutomorphism(format!(
                    "line {{{a},{b},{c}}} is not mapped to a line"
                )));
            }
        }
        Ok(SpaceAutomorphism { perm })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_involution(&self) -> bool {
        self.perm
            .iter()
            .enumerate()
            .all(|(i, &j)| self.perm[j] == i)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SpaceAutomorphism) -> SpaceAutomorphism {
        SpaceAutomorphism {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.perm.len())
            .filter(|&i| self.perm[i] == i)
            .collect()
    }
}

/// The point permutation induced by a flip of the class the space was
/// built from.
pub fn automorphism_from_flip(
    space: &FischerSpace,
    cls: &TranspositionClass,
    fm: &FlipMap,
) -> Result<SpaceAutomorphism> {
    if space.len() != cls.len() {
        return Err(Error::DimensionMismatch {
            expected: cls.len(),
            found: space.len(),
        });
    }
    let perm = cls
        .elements()
        .iter()
        .map(|c| apply_flip(fm, cls, c).and_then(|d| cls.position(&d)))
        .collect::<Result<Vec<_>>>()?;
    let aut = SpaceAutomorphism::new(space, perm)?;
    if !aut.is_involution() {
        return Err(Error::NotInvolutive);
    }
    Ok(aut)
}

pub fn save_space(space: &FischerSpace) -> String {
    let mut out = String::new();
    writeln!(out, "fischer-space v1").unwrap();
    writeln!(out, "points {}", space.len()).unwrap();
    for (i, l) in space.labels().iter().enumerate() {
        writeln!(out, "{i} {l}").unwrap();
    }
    let lines = space.lines();
    writeln!(out, "lines {}", lines.len()).unwrap();
    for [a, b, c] in lines {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

pub fn load_space(src: &str) -> Result<FischerSpace> {
    let mut it = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| {
        it.next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of file, expected {what}")))
    };
    let (ln, header) = next("header")?;
    if header != "fischer-space v1" {
        return Err(Error::parse(ln, "expected `fischer-space v1`"));
    }
    let count = |ln: usize, l: &str, key: &str| -> Result<usize> {
        l.strip_prefix(key)
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| Error::parse(ln, format!("expected `{key} <count>`")))
    };
    let (ln, l) = next("points")?;
    let n = count(ln, l, "points ")?;
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let (ln, l) = next("a point")?;
        let mut f = l.split_whitespace();
        let idx: usize = f
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::parse(ln, "expected `<index> <label>`"))?;
        if idx != i {
            return Err(Error::parse(ln, format!("expected index {i}, found {idx}")));
        }
        let label = f.next().ok_or_else(|| Error::parse(ln, "missing label"))?;
        if f.next().is_some() {
            return Err(Error::parse(ln, "labels may not contain whitespace"));
        }
        labels.push(label.to_string());
    }
    let (ln, l) = next("lines")?;
    let m = count(ln, l, "lines ")?;
    let mut lines = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, l) = next("a line")?;
        let pts: Vec<usize> = l
            .split_whitespace()
            .map(|x| {
                x.parse()
                    .map_err(|_| Error::parse(ln, format!("bad index {x:?}")))
            })
            .collect::<Result<_>>()?;
        let [a, b, c] = pts[..] else {
            return Err(Error::parse(ln, "a line has exactly three points"));
        };
        if pts.iter().any(|&x| x >= n) {
            return Err(Error::parse(ln, format!("point index out of range 0..{n}")));
        }
        if a < b && b < c {
            lines.push([a, b, c]);
        } else if a == b || b == c || a == c {
            return Err(Error::LineAxiomViolation(format!(
                "line at line {ln} repeats a point"
            )));
        } else {
            return Err(Error::parse(ln, "line points must be increasing"));
        }
    }
    if let Some((ln, _)) = it.next() {
        return Err(Error::parse(ln, "trailing content"));
    }
    FischerSpace::from_lines(labels, &lines)
}
