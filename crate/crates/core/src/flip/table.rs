//! Multiplication tables, their text format, and comparison up to a
//! relabelling of the basis.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use super::subalgebra::{BasisTag, SubalgebraBasis};
use crate::error::{Error, Result};
use crate::matsuo::MatsuoAlgebra;
use crate::scalar::{Field, RatFunc};
use crate::text::{format_combination, parse_expr};

/// `entries[i][j]` holds the coordinates of `b_i b_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultTable<F> {
    pub labels: Vec<String>,
    pub tags: Vec<Option<BasisTag>>,
    pub entries: Vec<Vec<Vec<F>>>,
}

impl<F: Field> MultTable<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn render_entry(&self, i: usize, j: usize) -> String {
        format_combination(
            self.labels
                .iter()
                .map(String::as_str)
                .zip(self.entries[i][j].iter()),
        )
    }

    /// The table in the `mult-table v1` format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "mult-table v1").unwrap();
        writeln!(out, "dim {}", self.dim()).unwrap();
        writeln!(out, "basis {}", self.labels.join(" ")).unwrap();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                writeln!(out, "{i} {j} : {}", self.render_entry(i, j)).unwrap();
            }
        }
        out
    }
}

/// Labels `s1, s2, …` for singles, `d1, …` for doubles and `x1, …` for
/// anything else, numbered in basis order.
pub fn default_labels(tags: &[BasisTag]) -> Vec<String> {
    let mut counts = [0usize; 3];
    tags.iter()
        .map(|t| {
            let (k, c) = match t {
                BasisTag::Single => (0, 's'),
                BasisTag::Double => (1, 'd'),
                BasisTag::Other => (2, 'x'),
            };
            counts[k] += 1;
            format!("{c}{}", counts[k])
        })
        .collect()
}

pub fn table_of<F: Field>(
    alg: &MatsuoAlgebra<F>,
    basis: &SubalgebraBasis<F>,
) -> Result<MultTable<F>> {
    let rows = basis.rows();
    let d = rows.len();
    let tags = basis.tags(alg);
    let mut entries = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in i..d {
            let c = basis
                .coordinates(&alg.product(&rows[i], &rows[j])?)
                .map_err(|_| Error::NotClosed)?;
            entries[j][i] = c.clone();
            entries[i][j] = c;
        }
    }
    Ok(MultTable {
        labels: default_labels(&tags),
        tags: tags.into_iter().map(Some).collect(),
        entries,
    })
}

/// Tag expected of a fixture label: `s…` single, `d…` double, else any.
fn label_tag(label: &str) -> Option<BasisTag> {
    match label.chars().next() {
        Some('s') => Some(BasisTag::Single),
        Some('d') => Some(BasisTag::Double),
        _ => None,
    }
}

/// Parses the `mult-table v1` format.
pub fn parse_table(src: &str) -> Result<MultTable<RatFunc>> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of table, expected {what}")))
    };
    let (ln, h) = next("header")?;
    if h != "mult-table v1" {
        return Err(Error::parse(ln, "expected `mult-table v1`"));
    }
    let (ln, l) = next("dim")?;
    let d: usize = l
        .strip_prefix("dim ")
        .and_then(|x| x.trim().parse().ok())
        .ok_or_else(|| Error::parse(ln, "expected `dim <d>`"))?;
    let (ln, l) = next("basis")?;
    let labels: Vec<String> = l
        .strip_prefix("basis")
        .ok_or_else(|| Error::parse(ln, "expected `basis <labels>`"))?
        .split_whitespace()
        .map(String::from)
        .collect();
    if labels.len() != d {
        return Err(Error::parse(
            ln,
            format!("expected {d} basis labels, found {}", labels.len()),
        ));
    }
    for (k, l) in labels.iter().enumerate() {
        if l == "eta" || labels[..k].contains(l) {
            return Err(Error::parse(ln, format!("bad or repeated label {l:?}")));
        }
    }
    let mut entries: Vec<Vec<Option<Vec<RatFunc>>>> = vec![vec![None; d]; d];
    for _ in 0..d * (d + 1) / 2 {
        let (ln, l) = next("an entry")?;
        let (ij, expr) = l
            .split_once(':')
            .ok_or_else(|| Error::parse(ln, "expected `i j : <expr>`"))?;
        let idx: Vec<usize> = ij
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::parse(ln, "bad index")))
            .collect::<Result<_>>()?;
        let [i, j] = idx[..] else {
            return Err(Error::parse(ln, "expected two indices"));
        };
        if i > j || j >= d {
            return Err(Error::parse(ln, format!("need i <= j < {d}")));
        }
        if entries[i][j].is_some() {
            return Err(Error::parse(ln, format!("entry {i} {j} given twice")));
        }
        let e = parse_expr(expr).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(ln, message),
            other => other,
        })?;
        if !e.constant.is_zero() {
            return Err(Error::parse(ln, "entry has a constant term"));
        }
        let mut v = vec![RatFunc::zero(); d];
        for (l, c) in e.terms {
            let k = labels
                .iter()
                .position(|x| *x == l)
                .ok_or_else(|| Error::parse(ln, format!("unknown label {l:?}")))?;
            v[k] = c;
        }
        entries[i][j] = Some(v.clone());
        entries[j][i] = Some(v);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "trailing content"));
    }
    let entries = entries
        .into_iter()
        .map(|r| r.into_iter().map(Option::unwrap).collect())
        .collect();
    Ok(MultTable {
        tags: labels.iter().map(|l| label_tag(l)).collect(),
        labels,
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisMatching {
    Exact,
    UpToPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub computed: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub equal: bool,
    /// `perm[k]` is the computed basis index matched to fixture index `k`.
    pub perm: Option<Vec<usize>>,
    /// Entry differences under the identity matching, when no match exists.
    pub mismatches: Vec<Mismatch>,
}

fn tags_compatible(want: Option<BasisTag>, have: Option<BasisTag>) -> bool {
    match (want, have) {
        (None, _) | (_, None) => true,
        (Some(a), Some(b)) => a == b,
    }
}

/// Permuted entry equality: `computed[π a][π b] = π(fixture[a][b])`.
fn entry_matches<F: Field>(
    computed: &MultTable<F>,
    fixture: &MultTable<F>,
    perm: &[usize],
    a: usize,
    b: usize,
) -> bool {
    let want = &fixture.entries[a][b];
    let have = &computed.entries[perm[a]][perm[b]];
    let mut hit = vec![false; have.len()];
    for (k, c) in want.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if &have[perm[k]] != c {
            return false;
        }
        hit[perm[k]] = true;
    }
    have.iter().zip(&hit).all(|(c, h)| *h || c.is_zero())
}

/// Compares two tables, optionally searching for a basis relabelling that
/// respects the tags and maps one table onto the other.
pub fn compare_tables<F: Field>(
    computed: &MultTable<F>,
    fixture: &MultTable<F>,
    matching: BasisMatching,
) -> Result<TableDiff> {
    let d = fixture.dim();
    if computed.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: computed.dim(),
        });
    }
    let identity: Vec<usize> = (0..d).collect();
    let exact = match matching {
        BasisMatching::Exact => mismatches_under(computed, fixture, &identity)
            .is_empty()
            .then(|| identity.clone()),
        BasisMatching::UpToPermutation => search(computed, fixture),
    };
    if let Some(perm) = exact {
        return Ok(TableDiff {
            equal: true,
            perm: Some(perm),
            mismatches: Vec::new(),
        });
    }
    let closest = match matching {
        BasisMatching::Exact => None,
        BasisMatching::UpToPermutation => closest_matching(computed, fixture),
    };
    let mismatches = mismatches_under(computed, fixture, closest.as_deref().unwrap_or(&identity));
    Ok(TableDiff {
        equal: false,
        perm: closest,
        mismatches,
    })
}

/// Entries that differ when computed index `perm[k]` stands for fixture
/// index `k`, rendered in the fixture's labels.
fn mismatches_under<F: Field>(
    computed: &MultTable<F>,
    fixture: &MultTable<F>,
    perm: &[usize],
) -> Vec<Mismatch> {
    let d = fixture.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            if entry_matches(computed, fixture, perm, i, j) {
                continue;
            }
            let have = &computed.entries[perm[i]][perm[j]];
            let relabelled: Vec<F> = (0..d).map(|k| have[perm[k]].clone()).collect();
            out.push(Mismatch {
                i,
                j,
                computed: format_combination(
                    fixture
                        .labels
                        .iter()
                        .map(String::as_str)
                        .zip(relabelled.iter()),
                ),
                expected: fixture.render_entry(i, j),
            });
        }
    }
    out
}

/// Zero-pattern row counts are invariant under relabelling.
fn signature<F: Field>(t: &MultTable<F>, i: usize) -> (usize, usize) {
    let zeros = (0..t.dim())
        .filter(|&j| t.entries[i][j].iter().all(Zero::is_zero))
        .count();
    let support: usize = (0..t.dim())
        .map(|j| t.entries[i][j].iter().filter(|c| !c.is_zero()).count())
        .sum();
    (zeros, support)
}

fn search<F: Field>(computed: &MultTable<F>, fixture: &MultTable<F>) -> Option<Vec<usize>> {
    let d = fixture.dim();
    let sig_c: Vec<_> = (0..d).map(|i| signature(computed, i)).collect();
    let sig_f: Vec<_> = (0..d).map(|i| signature(fixture, i)).collect();
    let candidates: Vec<Vec<usize>> = (0..d)
        .map(|a| {
            (0..d)
                .filter(|&c| {
                    sig_c[c] == sig_f[a]
                        && tags_compatible(fixture.tags[a], computed.tags[c])
                        && tags_compatible(computed.tags[c], fixture.tags[a])
                })
                .collect()
        })
        .collect();
    let mut perm = vec![usize::MAX; d];
    let mut used = vec![false; d];
    if backtrack(computed, fixture, &candidates, 0, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

/// The tag-compatible relabelling with the fewest differing entries,
/// searched with a node budget.
fn closest_matching<F: Field>(
    computed: &MultTable<F>,
    fixture: &MultTable<F>,
) -> Option<Vec<usize>> {
    let d = fixture.dim();
    let candidates: Vec<Vec<usize>> = (0..d)
        .map(|a| {
            (0..d)
                .filter(|&c| tags_compatible(fixture.tags[a], computed.tags[c]))
                .collect()
        })
        .collect();
    let mut state = Closest {
        perm: vec![usize::MAX; d],
        used: vec![false; d],
        best: None,
        budget: 2_000_000,
    };
    closest_rec(computed, fixture, &candidates, 0, 0, &mut state);
    state.best.map(|(_, p)| p)
}

struct Closest {
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<(usize, Vec<usize>)>,
    budget: usize,
}

fn closest_rec<F: Field>(
    computed: &MultTable<F>,
    fixture: &MultTable<F>,
    candidates: &[Vec<usize>],
    a: usize,
    bound: usize,
    st: &mut Closest,
) {
    let d = st.perm.len();
    if st.best.as_ref().is_some_and(|(b, _)| bound >= *b) || st.budget == 0 {
        return;
    }
    st.budget -= 1;
    if a == d {
        let n = mismatches_under(computed, fixture, &st.perm).len();
        if st.best.as_ref().is_none_or(|(b, _)| n < *b) {
            st.best = Some((n, st.perm.clone()));
        }
        return;
    }
    for &c in &candidates[a] {
        if st.used[c] {
            continue;
        }
        st.perm[a] = c;
        st.used[c] = true;
        let extra = (0..=a)
            .filter(|&x| {
                fixture.entries[x][a]
                    .iter()
                    .enumerate()
                    .all(|(k, v)| v.is_zero() || k <= a)
                    && !entry_matches(computed, fixture, &st.perm, x, a)
            })
            .count();
        closest_rec(computed, fixture, candidates, a + 1, bound + extra, st);
        st.used[c] = false;
    }
    st.perm[a] = usize::MAX;
}

fn backtrack<F: Field>(
    computed: &MultTable<F>,
    fixture: &MultTable<F>,
    candidates: &[Vec<usize>],
    a: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let d = perm.len();
    if a == d {
        return (0..d).all(|x| (x..d).all(|y| entry_matches(computed, fixture, perm, x, y)));
    }
    for &c in &candidates[a] {
        if used[c] {
            continue;
        }
        perm[a] = c;
        used[c] = true;
        // entries among assigned indices whose support is also assigned
        let ok = (0..=a).all(|x| {
            let want = &fixture.entries[x][a];
            let assigned = want.iter().enumerate().all(|(k, v)| v.is_zero() || k <= a);
            !assigned || entry_matches(computed, fixture, perm, x, a)
        });
        if ok && backtrack(computed, fixture, candidates, a + 1, perm, used) {
            return true;
        }
        used[c] = false;
    }
    perm[a] = usize::MAX;
    false
}
