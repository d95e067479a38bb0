use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector over a fixed ambient variable count.
///
/// Stored densely; a zero entry means the variable is absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Variables with positive exponent, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |m, i| m | (1u64 << i))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Re-embed into a ring with `offset` fresh leading variables.
    pub fn shifted(&self, offset: usize) -> Monomial {
        let mut e = vec![0; offset];
        e.extend_from_slice(&self.0);
        Monomial(e)
    }

    /// Drop the first `count` variables (they must be absent).
    pub fn unshifted(&self, count: usize) -> Monomial {
        debug_assert!(self.0[..count].iter().all(|&e| e == 0));
        Monomial(self.0[count..].to_vec())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Monomial order. Variable 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Block order eliminating the first `n` variables: degrevlex on the
    /// first block, ties broken by degrevlex on the rest.
    Elimination(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.0.len());
                match degrevlex(&a.0[..k], &b.0[..k]) {
                    Ordering::Equal => degrevlex(&a.0[k..], &b.0[k..]),
                    o => o,
                }
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = crate::error::AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
            _ => Err(crate::error::AlgebraError::InvalidInput(format!(
                "unknown monomial order `{s}`"
            ))),
        }
    }
}
