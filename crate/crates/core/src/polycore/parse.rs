//! Text form of polynomials.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' varpow)* | varpow ('*' varpow)*
//! varpow := var ('^' uint)?
//! var    := 'x' uint ('_' uint)?
//! coeff  := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant and the first term may carry a sign. Output is
//! canonical: descending degrevlex, `a - b` rather than `a + -b`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::coeff::Coeff;
use super::monomial::Monomial;
use super::poly::{MultiPoly, Ring, VarLayout};
use crate::error::{AlgebraError, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: Ring,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_uint(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.uint()?;
        n.try_into().map_err(|_| AlgebraError::Syntax {
            position: start,
            message: "number too large".into(),
        })
    }

    fn var(&mut self) -> Result<usize> {
        let start = self.pos;
        self.pos += 1; // 'x'
        let i = self.small_uint()?;
        let j = if self.peek() == Some(b'_') {
            self.pos += 1;
            Some(self.small_uint()?)
        } else {
            None
        };
        let name = match j {
            Some(j) => format!("x{i}_{j}"),
            None => format!("x{i}"),
        };
        let idx = match (self.ring.layout, j) {
            (VarLayout::Flat(n), None) if (1..=n).contains(&i) => Some(i - 1),
            (VarLayout::Matrix { .. }, Some(j)) => self.ring.entry_index(i, j),
            _ => None,
        };
        match idx {
            Some(v) => Ok(v),
            None => {
                self.pos = start;
                Err(AlgebraError::UnknownVariable(name))
            }
        }
    }

    fn varpow(&mut self, exps: &mut [u32]) -> Result<()> {
        let v = self.var()?;
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            let e = self.small_uint()?;
            u32::try_from(e).map_err(|_| AlgebraError::Syntax {
                position: start,
                message: "exponent too large".into(),
            })?
        } else {
            1
        };
        exps[v] += e;
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<(Monomial, Coeff)> {
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut coeff = self.ring.field.one();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num = self.uint()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.uint()?
                } else {
                    BigInt::one()
                };
                coeff = Coeff::from_ratio(self.ring.field, &num, &den).map_err(|e| match e {
                    AlgebraError::InvalidRational(_) => {
                        AlgebraError::InvalidRational(format!("{num}/{den} at position {start}"))
                    }
                    other => other,
                })?;
                while self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return self.err("expected variable after `*`");
                    }
                    self.varpow(&mut exps)?;
                }
            }
            Some(b'x') => {
                self.varpow(&mut exps)?;
                while self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return self.err("expected variable after `*`");
                    }
                    self.varpow(&mut exps)?;
                }
            }
            Some(_) => return self.err("expected coefficient or variable"),
            None => return self.err("unexpected end of input"),
        }
        if negative {
            coeff = -coeff;
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }

    fn poly(&mut self) -> Result<MultiPoly> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        terms.push(self.term(negative)?);
        loop {
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            }
        }
        Ok(MultiPoly::from_terms(self.ring, terms))
    }
}

/// Parse a polynomial in the given ring.
pub fn parse_poly(text: &str, ring: Ring) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    p.poly()
}

fn write_monomial(out: &mut String, m: &Monomial, ring: &Ring) {
    let mut first = true;
    for v in m.support() {
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&ring.var_name(v));
        let e = m.exponent(v);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Canonical text of a polynomial.
pub fn format_poly(f: &MultiPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ring = f.ring();
    let mut out = String::new();
    for (k, (m, c)) in f.terms().iter().enumerate() {
        let r = c.to_rational();
        let neg = r.is_negative();
        let abs = r.abs();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let coeff_text = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        if m.is_one() {
            out.push_str(&coeff_text);
        } else {
            if !abs.is_one() {
                out.push_str(&coeff_text);
                out.push('*');
            }
            write_monomial(&mut out, m, &ring);
        }
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Field;

    #[test]
    fn parses_flat_polynomial() {
        let r = Ring::flat(3, Field::Rational);
        let f = parse_poly("x1*x2 - x3^2", r).unwrap();
        let x1 = MultiPoly::var(r, 0);
        let x2 = MultiPoly::var(r, 1);
        let x3 = MultiPoly::var(r, 2);
        assert_eq!(f, &(&x1 * &x2) - &x3.pow(2));
        assert_eq!(format_poly(&f), "x1*x2 - x3^2");
    }

    #[test]
    fn parses_matrix_monomial() {
        let r = Ring::matrix(4, 3, Field::Rational);
        let f = parse_poly("x2_1*x3_2*x4_3", r).unwrap();
        assert_eq!(f.nterms(), 1);
        let expected = &(&MultiPoly::entry(r, 2, 1) * &MultiPoly::entry(r, 3, 2))
            * &MultiPoly::entry(r, 4, 3);
        assert_eq!(f, expected);
    }

    #[test]
    fn rejects_zero_denominator() {
        let r = Ring::flat(1, Field::Rational);
        assert!(matches!(
            parse_poly("3/0*x1", r),
            Err(AlgebraError::InvalidRational(_))
        ));
    }

    #[test]
    fn reports_positions_and_unknown_names() {
        let r = Ring::flat(2, Field::Rational);
        match parse_poly("x1 + * x2", r) {
            Err(AlgebraError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_poly("x1 + x3", r),
            Err(AlgebraError::UnknownVariable("x3".into()))
        );
        assert_eq!(
            parse_poly("x1_1", r),
            Err(AlgebraError::UnknownVariable("x1_1".into()))
        );
    }

    #[test]
    fn canonical_signs_and_coefficients() {
        let r = Ring::flat(2, Field::Rational);
        let f = parse_poly("-3/2*x2 + x1^2 - 1 + 2*x1*x2", r).unwrap();
        assert_eq!(format_poly(&f), "x1^2 + 2*x1*x2 - 3/2*x2 - 1");
        assert_eq!(format_poly(&MultiPoly::zero(r)), "0");
        assert_eq!(parse_poly("0", r).unwrap(), MultiPoly::zero(r));
        assert_eq!(format_poly(&parse_poly("-x1", r).unwrap()), "-x1");
    }

    #[test]
    fn prime_field_coefficients() {
        let r = Ring::flat(1, Field::Prime(7));
        let f = parse_poly("1/2*x1", r).unwrap();
        assert_eq!(format_poly(&f), "-3*x1");
        assert!(parse_poly("1/7*x1", r).is_err());
    }
}
