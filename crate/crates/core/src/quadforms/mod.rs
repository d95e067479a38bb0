//! Quadratic forms as symmetric Gram matrices: rank, strength, pencils,
//! minrank and the Jacobian minor ideal of a diagonal pair.

mod collective;
mod diag;
mod minrank;

pub use collective::{
    collective_strength_quadrics, projective_points, theorem_n32_report, CollectiveStrength,
    N32Report,
};
pub use diag::{simultaneous_diagonalize, Diagonalization, DiagonalPair};
pub use minrank::{
    coordinate_primary_components, jacobian_minor_ideal, minrank_bruteforce, minrank_formula,
    prime_certificate, verify_jacobian_minrank, JacobianMinrankReport, MinrankMethod, MinrankResult,
    PrimeVerdict,
};

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::polycore::{Coeff, Field, Matrix, Monomial, MultiPoly, Ring};

/// `q(x) = xᵀ G x`; off-diagonal Gram entries are half the cross coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    gram: Matrix,
}

fn check_char(field: Field) -> Result<()> {
    if field.characteristic() == 2 {
        Err(AlgebraError::CharacteristicTwo)
    } else {
        Ok(())
    }
}

impl QuadraticForm {
    pub fn from_gram(gram: Matrix) -> Result<QuadraticForm> {
        check_char(gram.field())?;
        if !gram.is_symmetric() {
            return Err(AlgebraError::NotQuadratic("Gram matrix is not symmetric".into()));
        }
        Ok(QuadraticForm { gram })
    }

    pub fn zero(field: Field, n: usize) -> QuadraticForm {
        QuadraticForm {
            gram: Matrix::zeros(field, n, n),
        }
    }

    pub fn diagonal(field: Field, entries: &[Coeff]) -> Result<QuadraticForm> {
        check_char(field)?;
        let mut g = Matrix::zeros(field, entries.len(), entries.len());
        for (i, c) in entries.iter().enumerate() {
            g.set(i, i, c.convert(field)?);
        }
        Ok(QuadraticForm { gram: g })
    }

    pub fn diagonal_i64(field: Field, entries: &[i64]) -> Result<QuadraticForm> {
        let cs: Vec<Coeff> = entries.iter().map(|&e| Coeff::from_i64(field, e)).collect();
        QuadraticForm::diagonal(field, &cs)
    }

    /// Read a degree-2 form (or zero) in its ring's variables.
    pub fn from_poly(f: &MultiPoly) -> Result<QuadraticForm> {
        let field = f.field();
        check_char(field)?;
        let n = f.nvars();
        let half = Coeff::from_i64(field, 2).inv()?;
        let mut g = Matrix::zeros(field, n, n);
        for (m, c) in f.terms() {
            if m.degree() != 2 {
                return Err(AlgebraError::NotQuadratic(format!("term of degree {}", m.degree())));
            }
            let vars: Vec<usize> = m.support().collect();
            match vars.as_slice() {
                [i] => g.set(*i, *i, c.clone()),
                [i, j] => {
                    let h = c * &half;
                    g.set(*i, *j, h.clone());
                    g.set(*j, *i, h);
                }
                _ => unreachable!("degree-2 monomial"),
            }
        }
        Ok(QuadraticForm { gram: g })
    }

    pub fn to_poly(&self, ring: Ring) -> Result<MultiPoly> {
        if ring.nvars() != self.n() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} variables for a form in {}",
                ring.nvars(),
                self.n()
            )));
        }
        let two = Coeff::from_i64(self.field(), 2);
        let mut terms = Vec::new();
        for i in 0..self.n() {
            for j in i..self.n() {
                let g = self.gram.get(i, j);
                if g.is_zero() {
                    continue;
                }
                let mut e = vec![0u32; self.n()];
                e[i] += 1;
                e[j] += 1;
                let c = if i == j { g.clone() } else { g * &two };
                terms.push((Monomial::from_exponents(e), c));
            }
        }
        Ok(MultiPoly::from_terms(ring, terms))
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_zero(&self) -> bool {
        (0..self.n()).all(|i| self.gram.row(i).iter().all(Coeff::is_zero))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n()).all(|i| (0..self.n()).all(|j| i == j || self.gram.get(i, j).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Coeff> {
        (0..self.n()).map(|i| self.gram.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn strength(&self) -> i64 {
        strength_from_rank(self.rank() as i64).expect("nonnegative rank")
    }

    /// `Tᵀ G T`, the form after the substitution `x = T y`.
    pub fn congruent(&self, t: &Matrix) -> Result<QuadraticForm> {
        let g = t.transpose().mul(&self.gram)?.mul(t)?;
        Ok(QuadraticForm { gram: g })
    }

    pub fn bilinear(&self, u: &[Coeff], w: &[Coeff]) -> Coeff {
        let gw = self.gram.mul_vec(w);
        u.iter()
            .zip(&gw)
            .fold(self.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn value(&self, v: &[Coeff]) -> Coeff {
        self.bilinear(v, v)
    }

    pub fn convert(&self, field: Field) -> Result<QuadraticForm> {
        check_char(field)?;
        Ok(QuadraticForm {
            gram: self.gram.convert(field)?,
        })
    }

    /// `Σ c_k q_k`.
    pub fn combination(forms: &[QuadraticForm], coeffs: &[Coeff]) -> QuadraticForm {
        let first = &forms[0];
        let mut g = Matrix::zeros(first.field(), first.n(), first.n());
        for (q, c) in forms.iter().zip(coeffs) {
            if !c.is_zero() {
                g = g.add(&q.gram.scale(c));
            }
        }
        QuadraticForm { gram: g }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::flat(self.n().max(1), self.field());
        match self.to_poly(ring) {
            Ok(p) => write!(f, "{p}"),
            Err(_) => write!(f, "0"),
        }
    }
}

/// Strength of a quadric of rank `k`: `⌈k/2⌉ − 1`, and `−1` for the zero form.
pub fn strength_from_rank(k: i64) -> Result<i64> {
    if k < 0 {
        return Err(AlgebraError::InvalidInput(format!("negative rank {k}")));
    }
    Ok((k + 1) / 2 - 1)
}

pub fn rank(q: &QuadraticForm) -> usize {
    q.rank()
}

/// Nonempty list of forms in the same number of variables over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    forms: Vec<QuadraticForm>,
}

impl Pencil {
    pub fn new(forms: Vec<QuadraticForm>) -> Result<Pencil> {
        let Some(first) = forms.first() else {
            return Err(AlgebraError::InvalidInput("empty pencil".into()));
        };
        if forms.iter().any(|q| q.n() != first.n()) {
            return Err(AlgebraError::DimensionMismatch("forms in different variable counts".into()));
        }
        if forms.iter().any(|q| q.field() != first.field()) {
            return Err(AlgebraError::MixedDomains(
                first.field().to_string(),
                "another field".into(),
            ));
        }
        Ok(Pencil { forms })
    }

    pub fn from_polys(polys: &[MultiPoly]) -> Result<Pencil> {
        Pencil::new(polys.iter().map(QuadraticForm::from_poly).collect::<Result<_>>()?)
    }

    pub fn forms(&self) -> &[QuadraticForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn field(&self) -> Field {
        self.forms[0].field()
    }

    pub fn n(&self) -> usize {
        self.forms[0].n()
    }

    pub fn combination(&self, coeffs: &[Coeff]) -> QuadraticForm {
        QuadraticForm::combination(&self.forms, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly;
    use crate::sampling;

    const Q: Field = Field::Rational;

    fn form(n: usize, s: &str) -> QuadraticForm {
        QuadraticForm::from_poly(&parse_poly(s, Ring::flat(n, Q)).unwrap()).unwrap()
    }

    /// Rank by fraction-free (Bareiss) elimination on integer entries.
    fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
        let n = m.len();
        let cols = m[0].len();
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(p) = (rank..n).find(|&i| m[i][c] != 0) else { continue };
            m.swap(rank, p);
            for i in rank + 1..n {
                for j in c + 1..cols {
                    m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
                }
                m[i][c] = 0;
            }
            prev = m[rank][c];
            rank += 1;
        }
        rank
    }

    #[test]
    fn ranks() {
        assert_eq!(form(1, "x1^2").rank(), 1);
        assert_eq!(form(2, "3*x1^2 - 5*x2^2").rank(), 2);
        let q = form(3, "x1*x2 - x3^2");
        assert_eq!(q.rank(), 3);
        // doubled Gram matrix has integer entries
        assert_eq!(bareiss_rank(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]]), 3);
    }

    #[test]
    fn strength_of_rank() {
        assert_eq!(strength_from_rank(4).unwrap(), 1);
        assert_eq!(strength_from_rank(0).unwrap(), -1);
        assert_eq!(strength_from_rank(5).unwrap(), 2);
        assert_eq!(strength_from_rank(1).unwrap(), 0);
        assert!(strength_from_rank(-1).is_err());
    }

    #[test]
    fn polynomial_round_trip() {
        let ring = Ring::flat(3, Q);
        let mut rng = sampling::rng(3);
        for _ in 0..20 {
            let f = sampling::form(ring, 2, 0.6, &mut rng);
            let q = QuadraticForm::from_poly(&f).unwrap();
            assert_eq!(q.to_poly(ring).unwrap(), f);
            assert!(q.gram().is_symmetric());
        }
    }

    #[test]
    fn characteristic_two_rejected() {
        let f = parse_poly("x1*x2", Ring::flat(2, Field::Prime(2))).unwrap();
        assert_eq!(QuadraticForm::from_poly(&f), Err(AlgebraError::CharacteristicTwo));
        assert!(QuadraticForm::from_poly(&parse_poly("x1^3", Ring::flat(1, Q)).unwrap()).is_err());
    }

    #[test]
    fn rank_agrees_with_integer_oracle() {
        let mut rng = sampling::rng(11);
        let ring = Ring::flat(4, Q);
        for _ in 0..30 {
            let f = sampling::form(ring, 2, 0.5, &mut rng);
            let q = QuadraticForm::from_poly(&f).unwrap();
            let doubled: Vec<Vec<i128>> = (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| {
                            let r = (q.gram().get(i, j) * &Coeff::from_i64(Q, 2)).to_rational();
                            r.to_integer().try_into().unwrap()
                        })
                        .collect()
                })
                .collect();
            assert_eq!(q.rank(), bareiss_rank(doubled));
        }
    }
}
