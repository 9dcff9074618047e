use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::subalgebra::generate_from_axes;
use super::table::{table_of, MultTable};
use super::{flip_subalgebra, FlipSubalgebra};
use crate::axes::Axis;
use crate::error::{Error, Result};
use crate::fischer::{automorphism_from_flip, build_space, SpaceAutomorphism};
use crate::groups::{generate_class, FlipMap, TranspositionClass};
use crate::linalg::is_zero_vec;
use crate::matsuo::MatsuoAlgebra;
use crate::scalar::RatFunc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SeriesKind {
    Qk,
    TwoQk,
    ThreeQk,
}

impl SeriesKind {
    pub fn modulus(self) -> u8 {
        match self {
            SeriesKind::Qk => 1,
            SeriesKind::TwoQk => 2,
            SeriesKind::ThreeQk => 3,
        }
    }

    pub fn twisted(self) -> bool {
        self == SeriesKind::ThreeQk
    }

    /// `k², 2k², 3k²` plus the dimension of the part on the fixed letters.
    pub fn expected_dim(self, k: usize, m: usize) -> usize {
        let pairs = m * m.saturating_sub(1) / 2;
        match self {
            SeriesKind::Qk => k * k + pairs,
            SeriesKind::TwoQk => 2 * k * k + 2 * pairs,
            SeriesKind::ThreeQk => 3 * k * k + pairs,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::Qk => "qk",
            SeriesKind::TwoQk => "2qk",
            SeriesKind::ThreeQk => "3qk",
        })
    }
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qk" => Ok(SeriesKind::Qk),
            "2qk" => Ok(SeriesKind::TwoQk),
            "3qk" => Ok(SeriesKind::ThreeQk),
            _ => Err(Error::InvalidArgument(format!("unknown series {s:?}"))),
        }
    }
}

/// Splitting of the flip subalgebra into the parts living on the moved and
/// on the fixed letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub moved_dim: usize,
    pub fixed_dim: usize,
    pub cross_products_zero: bool,
    pub holds: bool,
}

pub struct SeriesResult {
    pub kind: SeriesKind,
    pub k: usize,
    pub m: usize,
    pub class: TranspositionClass,
    pub algebra: MatsuoAlgebra<RatFunc>,
    pub flip: SpaceAutomorphism,
    pub subalgebra: FlipSubalgebra<RatFunc>,
    pub table: MultTable<RatFunc>,
    pub split: Option<SplitCheck>,
}

/// Builds the flip subalgebra of `τ₀ = (1,2)…(2k−1,2k)` on `2k + m` letters
/// (twisted by `z` for [`SeriesKind::ThreeQk`]).
pub fn series(kind: SeriesKind, k: usize, m: usize) -> Result<SeriesResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = 2 * k + m;
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two letters".into()));
    }
    let p = kind.modulus();
    let class = generate_class(p, n)?;
    let space = build_space(&class)?;
    let fm = FlipMap::standard(p, n, k, kind.twisted())?;
    let flip = automorphism_from_flip(&space, &class, &fm)?;
    let algebra = MatsuoAlgebra::symbolic(space);
    let subalgebra = flip_subalgebra(&algebra, &flip)?;
    let table = table_of(&algebra, &subalgebra.basis)?;
    let split = if m > 0 {
        Some(split_check(&algebra, &class, &subalgebra, 2 * k)?)
    } else {
        None
    };
    Ok(SeriesResult {
        kind,
        k,
        m,
        class,
        algebra,
        flip,
        subalgebra,
        table,
        split,
    })
}

fn split_check(
    alg: &MatsuoAlgebra<RatFunc>,
    class: &TranspositionClass,
    sub: &FlipSubalgebra<RatFunc>,
    cut: usize,
) -> Result<SplitCheck> {
    let moved_letters = |p: usize| -> Vec<usize> {
        let s = class.elements()[p].permutation();
        (0..s.len()).filter(|&i| s[i] as usize != i).collect()
    };
    let mut moved: Vec<Axis> = Vec::new();
    let mut fixed: Vec<Axis> = Vec::new();
    for a in sub.classification.axes() {
        let letters: Vec<usize> = a.points().into_iter().flat_map(moved_letters).collect();
        if letters.iter().all(|&l| l < cut) {
            moved.push(a);
        } else if letters.iter().all(|&l| l >= cut) {
            fixed.push(a);
        } else {
            return Ok(SplitCheck {
                moved_dim: 0,
                fixed_dim: 0,
                cross_products_zero: false,
                holds: false,
            });
        }
    }
    let left = generate_from_axes(alg, &moved, alg.dim())?;
    let right = generate_from_axes(alg, &fixed, alg.dim())?;
    let mut cross_products_zero = true;
    'outer: for u in left.rows() {
        for v in right.rows() {
            if !is_zero_vec(&alg.product(u, v)?) {
                cross_products_zero = false;
                break 'outer;
            }
        }
    }
    let holds = cross_products_zero && left.dim() + right.dim() == sub.basis.dim();
    Ok(SplitCheck {
        moved_dim: left.dim(),
        fixed_dim: right.dim(),
        cross_products_zero,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_members() {
        let q1 = series(SeriesKind::Qk, 1, 0).unwrap();
        assert_eq!(q1.subalgebra.basis.dim(), 1);
        let q2 = series(SeriesKind::Qk, 2, 0).unwrap();
        assert_eq!(q2.subalgebra.basis.dim(), 4);
        assert!(q2.table.is_symmetric());
        let s = series(SeriesKind::Qk, 2, 2).unwrap();
        assert_eq!(s.subalgebra.basis.dim(), 5);
        let split = s.split.unwrap();
        assert!(split.holds);
        assert_eq!((split.moved_dim, split.fixed_dim), (4, 1));
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("2QK".parse::<SeriesKind>().unwrap(), SeriesKind::TwoQk);
        assert!("4qk".parse::<SeriesKind>().is_err());
        assert_eq!(SeriesKind::ThreeQk.expected_dim(2, 2), 13);
    }
}
