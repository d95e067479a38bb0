//! Exact coefficient domains: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// Default prime for heavy Gröbner runs.
pub const DEFAULT_PRIME: u32 = 32003;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Prime field `F_p`; rejects composite moduli.
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p as u64) {
            Ok(Field::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p as u64))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Coeff {
        Coeff::from_i64(*self, 0)
    }

    pub fn one(&self) -> Coeff {
        Coeff::from_i64(*self, 1)
    }

    /// All field elements, for prime fields only.
    pub fn elements(&self) -> Result<Vec<Coeff>> {
        match self {
            Field::Rational => Err(AlgebraError::RequiresPrimeField),
            Field::Prime(p) => Ok((0..*p)
                .map(|v| Coeff::Prime {
                    value: v,
                    modulus: *p,
                })
                .collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u32 = rest
                .parse()
                .map_err(|_| AlgebraError::InvalidInput(format!("bad field modulus `{rest}`")))?;
            return Field::prime(p);
        }
        Err(AlgebraError::InvalidInput(format!(
            "unknown field `{s}` (expected q or fp:<p>)"
        )))
    }
}

/// An element of ℚ or of `F_p`.
///
/// Rationals are kept in lowest terms with a positive denominator; prime-field
/// residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

fn reduce_i64(n: i64, p: u32) -> u32 {
    n.rem_euclid(p as i64) as u32
}

fn reduce_big(n: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    let r = n.mod_floor(&m);
    r.to_u32().expect("residue fits in u32")
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Coeff {
    pub fn from_i64(field: Field, n: i64) -> Coeff {
        match field {
            Field::Rational => Coeff::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Prime {
                value: reduce_i64(n, p),
                modulus: p,
            },
        }
    }

    /// `num/den` in the given field; fails when the denominator vanishes there.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(AlgebraError::InvalidRational(format!("{num}/{den}")));
        }
        match field {
            Field::Rational => Ok(Coeff::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let d = reduce_big(den, p);
                if d == 0 {
                    return Err(AlgebraError::InvalidRational(format!(
                        "{num}/{den} (denominator vanishes mod {p})"
                    )));
                }
                let n = Coeff::Prime {
                    value: reduce_big(num, p),
                    modulus: p,
                };
                let d = Coeff::Prime {
                    value: d,
                    modulus: p,
                };
                Ok(&n * &d.inv()?)
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Coeff::Rational(_) => Field::Rational,
            Coeff::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rational(r) => Coeff::Rational(r.recip()),
            Coeff::Prime { value, modulus } => Coeff::Prime {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Coeff {
        let mut acc = self.field().one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn check_same(&self, other: &Coeff) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(AlgebraError::MixedDomains(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Coeff) -> Result<Coeff> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Coeff) -> Result<Coeff> {
        self.check_same(other)?;
        Ok(self * other)
    }

    /// Representative used for printing: a rational, or the residue in `(-p/2, p/2]`.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Coeff::Rational(r) => r.clone(),
            Coeff::Prime { value, modulus } => {
                let v = *value as i64;
                let m = *modulus as i64;
                let s = if v > m / 2 { v - m } else { v };
                BigRational::from_integer(BigInt::from(s))
            }
        }
    }

    /// Printed sign; true when the representative is negative.
    pub fn is_negative(&self) -> bool {
        self.to_rational().is_negative()
    }

    /// Residue in `[0, p)` for prime-field elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Coeff::Prime { value, .. } => Some(*value),
            Coeff::Rational(_) => None,
        }
    }

    /// Re-interpret a rational in `F_p`; prime-field values must already match `field`.
    pub fn convert(&self, field: Field) -> Result<Coeff> {
        match (self, field) {
            (Coeff::Rational(r), _) => Coeff::from_ratio(field, r.numer(), r.denom()),
            (Coeff::Prime { modulus, .. }, Field::Prime(p)) if *modulus == p => Ok(self.clone()),
            _ => Err(AlgebraError::MixedDomains(
                self.field().to_string(),
                field.to_string(),
            )),
        }
    }
}

fn mismatch(a: &Coeff, b: &Coeff) -> ! {
    panic!(
        "mixed coefficient domains: {} vs {}",
        a.field(),
        b.field()
    )
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;

    fn add(self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (
                Coeff::Prime { value: a, modulus },
                Coeff::Prime {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Coeff::Prime {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => mismatch(self, other),
        }
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;

    fn sub(self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a - b),
            (
                Coeff::Prime { value: a, modulus },
                Coeff::Prime {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Coeff::Prime {
                value: ((*a as u64 + *modulus as u64 - *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => mismatch(self, other),
        }
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;

    fn mul(self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (
                Coeff::Prime { value: a, modulus },
                Coeff::Prime {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Coeff::Prime {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            _ => mismatch(self, other),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;

    fn neg(self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Prime { value, modulus } => Coeff::Prime {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;

    fn neg(self) -> Coeff {
        -&self
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.to_rational();
        if r.is_integer() {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = Coeff::from_i64(f, 3);
        let b = Coeff::from_i64(f, 5);
        assert_eq!(&a + &b, Coeff::from_i64(f, 1));
        assert_eq!(&a - &b, Coeff::from_i64(f, 5));
        assert_eq!(&a * &b, Coeff::from_i64(f, 1));
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(-&a, Coeff::from_i64(f, 4));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let c = Coeff::from_ratio(q, &BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(c.to_string(), "-3/2");
        match c {
            Coeff::Rational(r) => assert!(r.denom().is_positive()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Field::Rational.zero().inv(),
            Err(AlgebraError::DivisionByZero)
        );
        assert!(Coeff::from_ratio(Field::Rational, &BigInt::from(3), &BigInt::from(0)).is_err());
        assert!(Coeff::from_ratio(Field::Prime(5), &BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(Field::prime(9), Err(AlgebraError::NotPrime(9)));
        assert_eq!("fp:32003".parse::<Field>().unwrap(), Field::Prime(32003));
        assert!("fp:32004".parse::<Field>().is_err());
    }

    #[test]
    fn mixed_domains_reported() {
        let a = Field::Rational.one();
        let b = Field::Prime(5).one();
        assert!(matches!(a.try_add(&b), Err(AlgebraError::MixedDomains(..))));
    }

    #[test]
    fn symmetric_display() {
        let f = Field::Prime(7);
        assert_eq!(Coeff::from_i64(f, 6).to_string(), "-1");
        assert_eq!(Coeff::from_i64(f, 3).to_string(), "3");
        assert_eq!(Coeff::from_i64(f, 4).to_string(), "-3");
    }
}
