//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::coeff::{Coeff, Field};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{AlgebraError, Result};

/// How ring variables are named.
///
/// `Flat(n)` gives `x1..xn`; `Matrix` gives `x<i>_<j>` for the entries of a
/// generic matrix, flattened row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarLayout {
    Flat(usize),
    Matrix { rows: usize, cols: usize },
}

/// Polynomial ring descriptor: coefficient field plus variable layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub field: Field,
    pub layout: VarLayout,
}

impl Ring {
    pub fn flat(nvars: usize, field: Field) -> Ring {
        Ring {
            field,
            layout: VarLayout::Flat(nvars),
        }
    }

    pub fn matrix(rows: usize, cols: usize, field: Field) -> Ring {
        Ring {
            field,
            layout: VarLayout::Matrix { rows, cols },
        }
    }

    pub fn nvars(&self) -> usize {
        match self.layout {
            VarLayout::Flat(n) => n,
            VarLayout::Matrix { rows, cols } => rows * cols,
        }
    }

    pub fn with_field(&self, field: Field) -> Ring {
        Ring {
            field,
            layout: self.layout,
        }
    }

    /// Index of matrix entry `(row, col)`, both 1-based.
    pub fn entry_index(&self, row: usize, col: usize) -> Option<usize> {
        match self.layout {
            VarLayout::Matrix { rows, cols }
                if (1..=rows).contains(&row) && (1..=cols).contains(&col) =>
            {
                Some((row - 1) * cols + (col - 1))
            }
            _ => None,
        }
    }

    /// 1-based `(row, col)` of a variable in a matrix ring.
    pub fn entry_position(&self, var: usize) -> Option<(usize, usize)> {
        match self.layout {
            VarLayout::Matrix { cols, .. } if var < self.nvars() => {
                Some((var / cols + 1, var % cols + 1))
            }
            _ => None,
        }
    }

    pub fn var_name(&self, var: usize) -> String {
        match self.layout {
            VarLayout::Flat(_) => format!("x{}", var + 1),
            VarLayout::Matrix { cols, .. } => format!("x{}_{}", var / cols + 1, var % cols + 1),
        }
    }

    pub fn check_compatible(&self, other: &Ring) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::MixedDomains(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if self != other {
            return Err(AlgebraError::RingMismatch(
                self.to_string(),
                other.to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.layout {
            VarLayout::Flat(n) => write!(f, "ring n={} field={}", n, self.field),
            VarLayout::Matrix { rows, cols } => write!(
                f,
                "ring n={} matrix={}x{} field={}",
                rows * cols,
                rows,
                cols,
                self.field
            ),
        }
    }
}

/// Sparse polynomial. Terms are kept sorted by descending degrevlex order,
/// with no zero coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

fn sort_desc(terms: &mut [(Monomial, Coeff)]) {
    terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
}

impl MultiPoly {
    pub fn zero(ring: Ring) -> MultiPoly {
        MultiPoly {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Ring, c: Coeff) -> MultiPoly {
        MultiPoly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: Ring) -> MultiPoly {
        MultiPoly::constant(ring, ring.field.one())
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Coeff) -> MultiPoly {
        debug_assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            MultiPoly::zero(ring)
        } else {
            MultiPoly {
                ring,
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(ring: Ring, index: usize) -> MultiPoly {
        MultiPoly::monomial(ring, Monomial::var(ring.nvars(), index), ring.field.one())
    }

    /// Matrix entry `x<row>_<col>` (1-based) of a matrix ring.
    pub fn entry(ring: Ring, row: usize, col: usize) -> MultiPoly {
        let idx = ring
            .entry_index(row, col)
            .unwrap_or_else(|| panic!("no entry ({row},{col}) in {ring}"));
        MultiPoly::var(ring, idx)
    }

    /// Build from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms<I>(ring: Ring, terms: I) -> MultiPoly
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_desc(&mut terms);
        MultiPoly { ring, terms }
    }

    /// Terms already sorted by descending degrevlex with distinct monomials.
    pub(crate) fn from_sorted_terms(ring: Ring, terms: Vec<(Monomial, Coeff)>) -> MultiPoly {
        debug_assert!(terms
            .windows(2)
            .all(|w| MonomialOrder::DegRevLex.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        MultiPoly { ring, terms }
    }

    pub fn from_i64_terms(ring: Ring, terms: &[(i64, &[u32])]) -> MultiPoly {
        MultiPoly::from_terms(
            ring,
            terms.iter().map(|(c, e)| {
                (
                    Monomial::from_exponents(e.to_vec()),
                    Coeff::from_i64(ring.field, *c),
                )
            }),
        )
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Maximal total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Homogeneous in the standard grading (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Leading term under degrevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_term_in(&self, order: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Bit mask of variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.terms
            .iter()
            .fold(0u64, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut mask = vec![false; self.nvars()];
        for (m, _) in &self.terms {
            for v in m.support() {
                mask[v] = true;
            }
        }
        (0..self.nvars()).filter(|&v| mask[v]).collect()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `var^k`, viewing `self` as univariate in `var`.
    pub fn coeff_in_var(&self, var: usize, k: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) == k)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e[var] = 0;
                (Monomial::from_exponents(e), c.clone())
            })
            .collect::<Vec<_>>();
        MultiPoly::from_terms(self.ring, terms)
    }

    pub fn scale(&self, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.ring);
        }
        MultiPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.ring);
        }
        // Multiplying by a monomial preserves degrevlex order.
        MultiPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Scale so the degrevlex-leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.ring.check_compatible(&other.ring)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.ring.check_compatible(&other.ring)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.ring.check_compatible(&other.ring)?;
        Ok(self * other)
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        assert_ring(self, other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match MonomialOrder::DegRevLex.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        MultiPoly {
            ring: self.ring,
            terms: out,
        }
    }

    fn product(&self, other: &MultiPoly) -> MultiPoly {
        assert_ring(self, other);
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(self.ring);
        }
        let mut acc: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_desc(&mut terms);
        MultiPoly {
            ring: self.ring,
            terms,
        }
    }

    /// Exact quotient `self / divisor`; fails when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        self.ring.check_compatible(&divisor.ring)?;
        let (lm, lc) = divisor
            .leading_term()
            .ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = m.div(lm).ok_or_else(|| {
                AlgebraError::DivisionFailure(format!("{divisor} does not divide {self}"))
            })?;
            let qc = c * &lc_inv;
            rem = &rem - &divisor.mul_term(&q, &qc);
            quot.push((q, qc));
        }
        // Quotient terms come out in descending order.
        Ok(MultiPoly {
            ring: self.ring,
            terms: quot,
        })
    }

    /// Evaluate at a point; `point[i]` is the value of variable `i`.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.support() {
                let val = point.get(v).ok_or(AlgebraError::MissingAssignment(v + 1))?;
                if val.field() != self.field() {
                    return Err(AlgebraError::MixedDomains(
                        val.field().to_string(),
                        self.field().to_string(),
                    ));
                }
                t = &t * &val.pow(m.exponent(v));
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.ring)
            .unwrap_or(self.ring);
        let mut acc = MultiPoly::zero(target);
        let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for v in m.support() {
                let e = m.exponent(v);
                let p = powers
                    .entry((v, e))
                    .or_insert_with(|| images[v].pow(e))
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Same polynomial in another ring with the same variable count.
    pub fn with_ring(&self, ring: Ring) -> Result<MultiPoly> {
        if ring.nvars() != self.nvars() {
            return Err(AlgebraError::RingMismatch(
                self.ring.to_string(),
                ring.to_string(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.convert(ring.field)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiPoly::from_terms(ring, terms))
    }

    /// Map to a ring with `offset` extra leading variables.
    pub fn shifted(&self, ring: Ring, offset: usize) -> MultiPoly {
        debug_assert_eq!(ring.nvars(), self.nvars() + offset);
        MultiPoly {
            ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(offset), c.clone()))
                .collect(),
        }
    }

    /// Inverse of [`MultiPoly::shifted`]; the dropped variables must not occur.
    pub fn unshifted(&self, ring: Ring, offset: usize) -> MultiPoly {
        MultiPoly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.unshifted(offset), c.clone())),
        )
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        MultiPoly::from_terms(
            self.ring,
            self.terms.iter().filter(|(m, _)| m.exponent(var) > 0).map(|(m, c)| {
                let k = m.exponent(var);
                let mut e = m.exponents().to_vec();
                e[var] -= 1;
                (
                    Monomial::from_exponents(e),
                    c * &Coeff::from_i64(self.field(), k as i64),
                )
            }),
        )
    }
}

fn assert_ring(a: &MultiPoly, b: &MultiPoly) {
    if let Err(e) = a.ring.check_compatible(&b.ring) {
        panic!("{e}");
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: &MultiPoly) -> MultiPoly {
        self.product(other)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: MultiPoly) -> MultiPoly {
        &self + &other
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: MultiPoly) -> MultiPoly {
        &self - &other
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: MultiPoly) -> MultiPoly {
        &self * &other
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> Ring {
        Ring::flat(3, Field::Rational)
    }

    #[test]
    fn additive_inverse() {
        let x1 = MultiPoly::var(q3(), 0);
        assert!((&x1 - &x1).is_zero());
        assert!((&x1 + &(-&x1)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let r = q3();
        let x1 = MultiPoly::var(r, 0);
        let x2 = MultiPoly::var(r, 1);
        let lhs = &(&x1 + &x2) * &(&x1 - &x2);
        let rhs = &(&x1 * &x1) - &(&x2 * &x2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.nterms(), 2);
    }

    #[test]
    fn mixed_domains_error() {
        let a = MultiPoly::var(Ring::flat(2, Field::Rational), 0);
        let b = MultiPoly::var(Ring::flat(2, Field::Prime(7)), 0);
        assert!(matches!(a.try_add(&b), Err(AlgebraError::MixedDomains(..))));
        let c = MultiPoly::var(Ring::flat(3, Field::Rational), 0);
        assert!(matches!(a.try_mul(&c), Err(AlgebraError::RingMismatch(..))));
    }

    #[test]
    fn evaluation() {
        let r = Ring::flat(2, Field::Rational);
        let f = &MultiPoly::var(r, 0) * &MultiPoly::var(r, 1);
        let pt = [Coeff::from_i64(r.field, 2), Coeff::from_i64(r.field, 3)];
        assert_eq!(f.evaluate(&pt).unwrap(), Coeff::from_i64(r.field, 6));
        assert!(MultiPoly::zero(r).evaluate(&[]).unwrap().is_zero());
        assert_eq!(
            f.evaluate(&pt[..1]),
            Err(AlgebraError::MissingAssignment(2))
        );

        let r5 = Ring::flat(2, Field::Prime(5));
        let x1 = MultiPoly::var(r5, 0);
        let x2 = MultiPoly::var(r5, 1);
        let g = &(&x1 * &x1) + &(&x2 * &x2);
        let pt = [Coeff::from_i64(r5.field, 1), Coeff::from_i64(r5.field, 2)];
        // 1 + 4 = 5 = 0 in F_5
        assert!(g.evaluate(&pt).unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let r = q3();
        let x = MultiPoly::var(r, 0);
        let y = MultiPoly::var(r, 1);
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert!(matches!(
            f.div_exact(&(&x + &x.pow(2))),
            Err(AlgebraError::DivisionFailure(_))
        ));
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let r = q3();
        let t = Ring::flat(1, Field::Rational);
        let tv = MultiPoly::var(t, 0);
        let images = [tv.clone(), tv.pow(2), tv.pow(3)];
        let x = MultiPoly::var(r, 0);
        let y = MultiPoly::var(r, 1);
        let z = MultiPoly::var(r, 2);
        // y^3 - z^2 vanishes on the twisted cubic
        let f = &y.pow(3) - &z.pow(2);
        assert!(f.substitute(&images).is_zero());
        let g = &x.pow(2) - &y;
        assert!(g.substitute(&images).is_zero());
    }

    #[test]
    fn derivative_and_var_degree() {
        let r = q3();
        let x = MultiPoly::var(r, 0);
        let y = MultiPoly::var(r, 1);
        let f = &(&x.pow(3) * &y) + &y;
        let three = Coeff::from_i64(r.field, 3);
        assert_eq!(f.derivative(0), (&x.pow(2) * &y).scale(&three));
        assert_eq!(f.degree_in(0), 3);
        assert_eq!(f.coeff_in_var(0, 3), y);
    }
}
