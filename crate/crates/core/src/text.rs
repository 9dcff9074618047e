//! Text grammar shared by scalar literals and table entries.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := integer | 'eta' | label | '(' expr ')'
//! ```
//!
//! An expression evaluates to a linear combination of labels with
//! coefficients in Q(η). Products of two label-carrying factors, and
//! division by one, are rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, RatFunc, Rational};

/// A linear combination `constant + Σ coeff·label`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinComb {
    pub constant: RatFunc,
    pub terms: BTreeMap<String, RatFunc>,
}

impl LinComb {
    fn scalar(c: RatFunc) -> Self {
        LinComb {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    fn label(l: String) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(l, RatFunc::one());
        LinComb {
            constant: RatFunc::zero(),
            terms,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(mut self, o: LinComb, sign: bool) -> LinComb {
        let combine = |a: &RatFunc, b: &RatFunc| if sign { a + b } else { a - b };
        self.constant = combine(&self.constant, &o.constant);
        for (l, c) in o.terms {
            let cur = self.terms.remove(&l).unwrap_or_else(RatFunc::zero);
            let v = combine(&cur, &c);
            if !v.is_zero() {
                self.terms.insert(l, v);
            }
        }
        self
    }

    fn scale(mut self, c: &RatFunc) -> LinComb {
        if c.is_zero() {
            return LinComb::default();
        }
        self.constant = &self.constant * c;
        for v in self.terms.values_mut() {
            *v = &*v * c;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::parse(0, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_sym() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(0, format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<LinComb> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(rhs, c == '+');
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LinComb> {
        let mut acc = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.factor()?;
            if c == '/' {
                if !rhs.is_scalar() {
                    return Err(Error::parse(0, "division by a label"));
                }
                let inv = rhs.constant.inverse().map_err(|_| Error::DivisionByZero)?;
                acc = acc.scale(&inv);
            } else if rhs.is_scalar() {
                acc = acc.scale(&rhs.constant);
            } else if acc.is_scalar() {
                acc = rhs.scale(&acc.constant);
            } else {
                return Err(Error::parse(0, "product of two labels"));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LinComb> {
        if self.peek_sym() == Some('-') {
            self.pos += 1;
            let f = self.factor()?;
            return Ok(f.scale(&-RatFunc::one()));
        }
        let base = self.atom()?;
        if self.peek_sym() == Some('^') {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    u32::try_from(n.clone()).map_err(|_| Error::parse(0, "exponent too large"))?
                }
                _ => return Err(Error::parse(0, "expected an exponent")),
            };
            self.pos += 1;
            if !base.is_scalar() {
                return Err(Error::parse(0, "power of a label"));
            }
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = &acc * &base.constant;
            }
            return Ok(LinComb::scalar(acc));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LinComb> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse(0, "unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(LinComb::scalar(RatFunc::from_rational(
                Rational::from_integer(n),
            ))),
            Tok::Ident(id) if id == "eta" => Ok(LinComb::scalar(RatFunc::eta())),
            Tok::Ident(id) => Ok(LinComb::label(id)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c) => Err(Error::parse(0, format!("unexpected {c:?}"))),
        }
    }
}

/// Parses an expression that may mention labels.
pub fn parse_expr(s: &str) -> Result<LinComb> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(0, format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Parses an expression with no labels into an element of Q(η).
pub fn parse_scalar(s: &str) -> Result<RatFunc> {
    let e = parse_expr(s)?;
    match e.terms.keys().next() {
        Some(l) => Err(Error::parse(0, format!("unexpected label {l:?}"))),
        None => Ok(e.constant),
    }
}

/// Renders `Σ c_i·label_i`, skipping zero coefficients; `0` if empty.
pub fn format_combination<'a, F: Field>(
    terms: impl IntoIterator<Item = (&'a str, &'a F)>,
) -> String {
    let mut parts = Vec::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let part = if c.is_one() {
            label.to_string()
        } else if (-c.clone()).is_one() {
            format!("-{label}")
        } else {
            format!("({c})*{label}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, UniPoly};

    #[test]
    fn scalars() {
        let f = parse_scalar("1024*eta^3 - 768*eta^2 + 64").unwrap();
        assert_eq!(f.num(), &UniPoly::from_ints(&[64, 0, -768, 1024]));
        let g = parse_scalar("-(1/2*eta)").unwrap();
        assert_eq!(g, RatFunc::eta().scale(&rat(-1, 2)));
        let h = parse_scalar("(1)/(eta + 1)").unwrap();
        assert_eq!(h.den(), &UniPoly::from_ints(&[1, 1]));
        assert_eq!(parse_scalar("2^3").unwrap(), RatFunc::constant(int(8)));
    }

    #[test]
    fn combinations() {
        let e = parse_expr("(eta)*s1 + (1/2*eta)*d1 + (-1/2*eta)*d2").unwrap();
        assert_eq!(e.terms.len(), 3);
        assert_eq!(e.terms["d2"], RatFunc::eta().scale(&rat(-1, 2)));
        let e = parse_expr("eta*(s1 - s2) - s1*eta").unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms["s2"], -RatFunc::eta());
        assert!(parse_expr("0").unwrap().terms.is_empty());
    }

    #[test]
    fn rejects() {
        assert!(parse_expr("s1*s2").is_err());
        assert!(parse_expr("1/s1").is_err());
        assert!(parse_expr("s1^2").is_err());
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("(1").is_err());
        assert!(parse_expr("1.5").is_err());
        assert_eq!(parse_expr("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn render_round_trip() {
        let coeffs = [
            RatFunc::one(),
            -RatFunc::eta(),
            RatFunc::eta().scale(&rat(1, 2)),
        ];
        let labels = ["a", "b", "c"];
        let s = format_combination(labels.iter().copied().zip(coeffs.iter()));
        assert_eq!(s, "a + (-eta)*b + (1/2*eta)*c");
        let e = parse_expr(&s).unwrap();
        for (l, c) in labels.iter().zip(&coeffs) {
            assert_eq!(&e.terms[*l], c);
        }
        let neg = [-RatFunc::one()];
        assert_eq!(format_combination(["x"].into_iter().zip(neg.iter())), "-x");
    }
}
