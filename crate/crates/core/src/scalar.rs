//! Exact coefficient fields.
//!
//! Two fields are used throughout the crate: the rationals (numeric mode,
//! a concrete value of η) and the rational function field Q(η) (symbolic
//! mode). Both implement [`Field`], and the algebra code is generic over
//! it. [`Scalar`] is the runtime-tagged wrapper used where the mode is only
//! known at run time.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// Which coefficient field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Numeric,
    Symbolic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Numeric => f.write_str("numeric"),
            Mode::Symbolic => f.write_str("symbolic"),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `p/q`, omitting `/1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

// ---------------------------------------------------------------------------
// Univariate polynomials
// ---------------------------------------------------------------------------

/// A polynomial in η with rational coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate η.
    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        UniPoly {
            coeffs: vec![-r.clone(), Rational::one()],
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        if d.is_constant() {
            return Some(self.scale(&d.coeffs[0].recip()));
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Splits `self = content * primitive` with `primitive` an integer
    /// polynomial whose coefficients have gcd 1 and positive leading term.
    pub fn primitive_integer_form(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm_den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let mut prim = primitive_part(&ints);
        let mut content = Rational::new(int_content(&ints), lcm_den);
        if prim.last().is_some_and(|c| c.is_negative()) {
            prim.iter_mut().for_each(|c| *c = -c.clone());
            content = -content;
        }
        (content, prim)
    }

    pub fn from_integer_coeffs(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Monic greatest common divisor, computed with a primitive
    /// pseudo-remainder sequence over the integers.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return UniPoly::one();
        }
        let (_, mut p) = a.primitive_integer_form();
        let (_, mut q) = b.primitive_integer_form();
        if p.len() < q.len() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_empty() {
            let r = int_pseudo_rem(&p, &q);
            p = q;
            q = if r.is_empty() { r } else { primitive_part(&r) };
        }
        UniPoly::from_integer_coeffs(&p).monic()
    }

    /// All rational roots with their exact multiplicities.
    ///
    /// Candidates come from the rational root theorem applied to the
    /// primitive integer form; each candidate's multiplicity is found by
    /// repeated exact division. Irrational roots are not reported.
    pub fn rational_roots(&self) -> Result<BTreeMap<Rational, usize>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (_, mut prim) = self.primitive_integer_form();
        let mut roots = BTreeMap::new();
        let zero_mult = prim.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            roots.insert(Rational::zero(), zero_mult);
            prim.drain(..zero_mult);
        }
        if prim.len() <= 1 {
            return Ok(roots);
        }
        let trailing = prim[0].abs();
        let leading = prim.last().unwrap().abs();
        let nums = divisors(&trailing);
        let dens = divisors(&leading);
        let mut candidates = Vec::new();
        for p in &nums {
            for q in &dens {
                let r = Rational::new(p.clone(), q.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            // divide by (q x - p), staying in Z[x]
            let factor = vec![-r.numer().clone(), r.denom().clone()];
            let mut mult = 0;
            while prim.len() > 1 {
                match int_exact_div(&prim, &factor) {
                    Some(q) => {
                        prim = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                roots.insert(r, mult);
            }
        }
        Ok(roots)
    }

    /// Lagrange interpolation through the given points; the result has
    /// degree below the number of points.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UniPoly> {
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::DuplicateAbscissa(format_rational(xi)));
            }
        }
        let mut acc = UniPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = UniPoly::one();
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &UniPoly::linear_root(xj);
                    denom *= xi - xj;
                }
            }
            acc = &acc + &basis.scale(&(yi / denom));
        }
        Ok(acc)
    }

    /// Parses the polynomial grammar, e.g. `1024*eta^3 - 768*eta^2 + 64`.
    pub fn parse(s: &str) -> Result<UniPoly> {
        let f = crate::text::parse_scalar(s)?;
        if !f.den().is_one() {
            return Err(Error::parse(0, format!("not a polynomial: {s:?}")));
        }
        Ok(f.num().clone())
    }
}

fn int_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = int_content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

fn trim_ints(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, in Z[x].
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        trim_ints(&mut r);
    }
    r
}

fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    let lb = &b[db];
    for i in (0..q.len()).rev() {
        let (c, m) = r[i + db].div_rem(lb);
        if !m.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    // factor by trial division, then expand
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if !m.is_one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        UniPoly {
            coeffs: vec![Rational::one()],
        }
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        UniPoly::from_coeffs(c)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        UniPoly::from_coeffs(c)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_poly_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: &'a UniPoly) -> UniPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "eta".to_string(),
                _ => format!("eta^{k}"),
            };
            if k == 0 {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// An element of Q(η): `num / den` in lowest terms with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let inv = den.coeffs[0].recip();
            return RatFunc {
                num: num.scale(&inv),
                den: UniPoly::one(),
            };
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.leading();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The symbol η itself.
    pub fn eta() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn evaluate_at(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format_rational(x)));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn inverse(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc {
            num: UniPoly::one(),
            den: UniPoly::one(),
        }
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = &self.num + &o.num;
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::reduce(num, &self.den * &o.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        // cross-cancel before multiplying
        let g1 = UniPoly::gcd(&self.num, &o.den);
        let g2 = UniPoly::gcd(&o.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = o.den.exact_div(&g1).unwrap();
        let n2 = o.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatFunc::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`Field::checked_div`] otherwise.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inverse().expect("division by zero in Q(eta)")
    }
}

macro_rules! forward_rf_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &'a RatFunc) -> RatFunc {
                (&self).$m(o)
            }
        }
    };
}
forward_rf_binop!(Add, add);
forward_rf_binop!(Sub, sub);
forward_rf_binop!(Mul, mul);
forward_rf_binop!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

// ---------------------------------------------------------------------------
// The field abstraction
// ---------------------------------------------------------------------------

/// A coefficient field the algebra code can run over.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    const MODE: Mode;

    fn from_rational(r: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// The value as a rational number, if it is constant.
    fn as_rational(&self) -> Option<Rational>;

    fn inverse(&self) -> Option<Self>;

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.clone() * &inv)
    }

    /// The value as a polynomial in η (constants in numeric mode).
    fn to_poly(&self) -> Option<UniPoly>;

    /// Specialises η to `x` (identity in numeric mode).
    fn eval_at(&self, x: &Rational) -> Result<Rational>;

    fn to_scalar(&self) -> Scalar;

    fn from_scalar(s: &Scalar) -> Result<Self>;
}

impl Field for Rational {
    const MODE: Mode = Mode::Numeric;

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn to_poly(&self) -> Option<UniPoly> {
        Some(UniPoly::constant(self.clone()))
    }

    fn eval_at(&self, _x: &Rational) -> Result<Rational> {
        Ok(self.clone())
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Numeric(self.clone())
    }

    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Numeric(r) => Ok(r.clone()),
            Scalar::Symbolic(_) => Err(Error::ModeMismatch(
                "expected a numeric scalar, found a symbolic one".into(),
            )),
        }
    }
}

impl Field for RatFunc {
    const MODE: Mode = Mode::Symbolic;

    fn from_rational(r: Rational) -> Self {
        RatFunc::constant(r)
    }

    fn as_rational(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    fn inverse(&self) -> Option<Self> {
        RatFunc::inverse(self).ok()
    }

    fn to_poly(&self) -> Option<UniPoly> {
        self.den.is_one().then(|| self.num.clone())
    }

    fn eval_at(&self, x: &Rational) -> Result<Rational> {
        self.evaluate_at(x)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Symbolic(self.clone())
    }

    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Symbolic(f) => Ok(f.clone()),
            Scalar::Numeric(_) => Err(Error::ModeMismatch(
                "expected a symbolic scalar, found a numeric one".into(),
            )),
        }
    }
}

// ---------------------------------------------------------------------------
// Runtime-tagged scalars
// ---------------------------------------------------------------------------

/// A coefficient whose field is chosen at run time. Combining a numeric
/// and a symbolic scalar is an error rather than an implicit coercion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Numeric(Rational),
    Symbolic(RatFunc),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Numeric(_) => Mode::Numeric,
            Scalar::Symbolic(_) => Mode::Symbolic,
        }
    }

    pub fn eta() -> Scalar {
        Scalar::Symbolic(RatFunc::eta())
    }

    fn binary(
        &self,
        o: &Scalar,
        num: impl FnOnce(&Rational, &Rational) -> Result<Rational>,
        sym: impl FnOnce(&RatFunc, &RatFunc) -> Result<RatFunc>,
    ) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Numeric(a), Scalar::Numeric(b)) => num(a, b).map(Scalar::Numeric),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => sym(a, b).map(Scalar::Symbolic),
            _ => Err(Error::ModeMismatch(format!(
                "cannot combine {} and {} scalars",
                self.mode(),
                o.mode()
            ))),
        }
    }

    pub fn add(&self, o: &Scalar) -> Result<Scalar> {
        self.binary(o, |a, b| Ok(a + b), |a, b| Ok(a + b))
    }

    pub fn sub(&self, o: &Scalar) -> Result<Scalar> {
        self.binary(o, |a, b| Ok(a - b), |a, b| Ok(a - b))
    }

    pub fn mul(&self, o: &Scalar) -> Result<Scalar> {
        self.binary(o, |a, b| Ok(a * b), |a, b| Ok(a * b))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        self.binary(
            o,
            |a, b| {
                if b.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(a / b)
                }
            },
            |a, b| Ok(a * &b.inverse()?),
        )
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Numeric(a) => Scalar::Numeric(-a),
            Scalar::Symbolic(a) => Scalar::Symbolic(-a),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Numeric(a) if a.is_zero() => Err(Error::DivisionByZero),
            Scalar::Numeric(a) => Ok(Scalar::Numeric(a.recip())),
            Scalar::Symbolic(a) => a.inverse().map(Scalar::Symbolic),
        }
    }

    /// Equality that refuses to compare across modes.
    pub fn equals(&self, o: &Scalar) -> Result<bool> {
        match (self, o) {
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Ok(a == b),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Ok(a == b),
            _ => Err(Error::ModeMismatch("cannot compare across modes".into())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Numeric(a) => a.is_zero(),
            Scalar::Symbolic(a) => a.is_zero(),
        }
    }

    /// Parses either a rational literal (numeric) or any expression
    /// mentioning `eta` (symbolic).
    pub fn parse(s: &str) -> Result<Scalar> {
        if s.contains("eta") {
            crate::text::parse_scalar(s).map(Scalar::Symbolic)
        } else {
            crate::text::parse_scalar(s)
                .and_then(|f| {
                    f.as_rational()
                        .ok_or_else(|| Error::parse(0, "expected a rational"))
                })
                .map(Scalar::Numeric)
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Numeric(a) => f.write_str(&format_rational(a)),
            Scalar::Symbolic(a) => write!(f, "{a}"),
        }
    }
}
