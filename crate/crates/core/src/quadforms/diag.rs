//! Simultaneous diagonalization of a pencil and the diagonal-pair normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuadraticForm;
use crate::error::{AlgebraError, Result};
use crate::polycore::{Coeff, Field, Matrix, Monomial, MultiPoly, Ring};

/// Pair of diagonal forms `f1 = Σ a_i x_i²`, `f2 = Σ b_i x_i²`.
///
/// When some `a_i` vanishes the pair is normalized through
/// `f1' = f1 + c·f2` (stored as `mix`), which spans the same pencil.
/// `ratios[i] = b_i / a'_i`; the distinct ratios in order of first appearance
/// are `alphas`, with block sizes `lambdas` and partial sums `mus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalPair {
    pub field: Field,
    pub a: Vec<Coeff>,
    pub b: Vec<Coeff>,
    pub mix: Coeff,
    pub ratios: Vec<Coeff>,
    pub alphas: Vec<Coeff>,
    pub lambdas: Vec<usize>,
    pub mus: Vec<usize>,
    /// Block index of each variable.
    pub blocks: Vec<usize>,
}

impl DiagonalPair {
    pub fn new(field: Field, a: Vec<Coeff>, b: Vec<Coeff>) -> Result<DiagonalPair> {
        if field.characteristic() == 2 {
            return Err(AlgebraError::CharacteristicTwo);
        }
        if a.len() != b.len() || a.is_empty() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "diagonals of length {} and {}",
                a.len(),
                b.len()
            )));
        }
        let a = a.iter().map(|c| c.convert(field)).collect::<Result<Vec<_>>>()?;
        let b = b.iter().map(|c| c.convert(field)).collect::<Result<Vec<_>>>()?;
        if let Some(i) = (0..a.len()).find(|&i| a[i].is_zero() && b[i].is_zero()) {
            return Err(AlgebraError::InvalidInput(format!(
                "x{} appears in neither form; drop it first",
                i + 1
            )));
        }
        let mix = (0i64..)
            .map(|k| Coeff::from_i64(field, k))
            .take(a.len() + 2)
            .find(|c| a.iter().zip(&b).all(|(x, y)| !(x + &(c * y)).is_zero()))
            .ok_or_else(|| AlgebraError::Unsupported("field too small to normalize f1".into()))?;
        let ratios: Vec<Coeff> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| y.div(&(x + &(&mix * y))).expect("nonzero by choice of mix"))
            .collect();
        let mut alphas: Vec<Coeff> = Vec::new();
        let mut lambdas: Vec<usize> = Vec::new();
        let mut blocks = Vec::with_capacity(ratios.len());
        for r in &ratios {
            match alphas.iter().position(|x| x == r) {
                Some(t) => {
                    lambdas[t] += 1;
                    blocks.push(t);
                }
                None => {
                    alphas.push(r.clone());
                    lambdas.push(1);
                    blocks.push(alphas.len() - 1);
                }
            }
        }
        let mus = lambdas
            .iter()
            .scan(0, |s, l| {
                *s += l;
                Some(*s)
            })
            .collect();
        Ok(DiagonalPair {
            field,
            a,
            b,
            mix,
            ratios,
            alphas,
            lambdas,
            mus,
            blocks,
        })
    }

    pub fn from_i64(field: Field, a: &[i64], b: &[i64]) -> Result<DiagonalPair> {
        let conv = |v: &[i64]| v.iter().map(|&x| Coeff::from_i64(field, x)).collect();
        DiagonalPair::new(field, conv(a), conv(b))
    }

    /// `f1 = Σ x_i²` and `f2 = Σ b_i x_i²`.
    pub fn normalized(field: Field, b: &[i64]) -> Result<DiagonalPair> {
        DiagonalPair::from_i64(field, &vec![1; b.len()], b)
    }

    pub fn from_forms(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<DiagonalPair> {
        if !f1.is_diagonal() || !f2.is_diagonal() {
            return Err(AlgebraError::InvalidInput("forms are not diagonal".into()));
        }
        DiagonalPair::new(f1.field(), f1.diagonal_entries(), f2.diagonal_entries())
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    pub fn f1(&self) -> QuadraticForm {
        QuadraticForm::diagonal(self.field, &self.a).expect("odd characteristic")
    }

    pub fn f2(&self) -> QuadraticForm {
        QuadraticForm::diagonal(self.field, &self.b).expect("odd characteristic")
    }

    /// Variables (0-based) of block `t`.
    pub fn block(&self, t: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.blocks[i] == t).collect()
    }
}

/// Outcome of [`simultaneous_diagonalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonalization {
    /// `transform` has columns `v_i` with `Tᵀ A T = diag(a)`, `Tᵀ B T = diag(b)`.
    Diagonal {
        pair: DiagonalPair,
        transform: Matrix,
    },
    Unsupported(String),
}

/// Simultaneously diagonalize `f1`, `f2` by one change of coordinates when `f1`
/// is nondegenerate and the pencil's eigenvalues all lie in the base field.
pub fn simultaneous_diagonalize(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<Diagonalization> {
    let field = f1.field();
    if field.characteristic() == 2 {
        return Err(AlgebraError::CharacteristicTwo);
    }
    if f1.n() != f2.n() || f2.field() != field {
        return Err(AlgebraError::DimensionMismatch("forms of different shape".into()));
    }
    let n = f1.n();
    let a = f1.gram();
    let b = f2.gram();
    if a.rank() < n {
        return Err(AlgebraError::DegenerateForm(format!(
            "f1 has rank {} < {n}; restrict to the variables it involves or replace f1 by f1 + c*f2",
            a.rank()
        )));
    }
    if f1.is_diagonal() && f2.is_diagonal() {
        let pair = DiagonalPair::from_forms(f1, f2)?;
        return Ok(Diagonalization::Diagonal {
            pair,
            transform: Matrix::identity(field, n),
        });
    }
    let roots = match char_poly(a, b).and_then(|chi| distinct_roots(&chi, field)) {
        Ok(r) => r,
        Err(AlgebraError::Unsupported(msg)) => return Ok(Diagonalization::Unsupported(msg)),
        Err(e) => return Err(e),
    };
    let mut columns: Vec<Vec<Coeff>> = Vec::new();
    for t in &roots {
        let shifted = b.add(&a.scale(&-t));
        let space = shifted.kernel();
        columns.extend(orthogonalize(f1, space)?);
    }
    if columns.len() < n {
        return Ok(Diagonalization::Unsupported(format!(
            "pencil is not diagonalizable over {field}: eigenvectors span {} of {n} dimensions",
            columns.len()
        )));
    }
    let mut t = Matrix::zeros(field, n, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            t.set(i, j, c.clone());
        }
    }
    let d1 = f1.congruent(&t)?;
    let d2 = f2.congruent(&t)?;
    if !d1.is_diagonal() || !d2.is_diagonal() {
        return Err(AlgebraError::DivisionFailure("congruence did not diagonalize".into()));
    }
    let pair = DiagonalPair::from_forms(&d1, &d2)?;
    Ok(Diagonalization::Diagonal { pair, transform: t })
}

/// `det(B − tA)` as a polynomial in one variable, by interpolation at
/// `t = 0..=n`.
fn char_poly(a: &Matrix, b: &Matrix) -> Result<MultiPoly> {
    let field = a.field();
    let n = a.rows();
    if let Field::Prime(p) = field {
        if (p as usize) <= n {
            return Err(AlgebraError::Unsupported(format!(
                "interpolation needs more than {n} field elements"
            )));
        }
    }
    let ring = Ring::flat(1, field);
    let t = MultiPoly::var(ring, 0);
    let nodes: Vec<Coeff> = (0..=n as i64).map(|k| Coeff::from_i64(field, k)).collect();
    let mut values = Vec::with_capacity(nodes.len());
    for x in &nodes {
        values.push(b.add(&a.scale(&-x)).determinant()?);
    }
    let mut acc = MultiPoly::zero(ring);
    for (i, xi) in nodes.iter().enumerate() {
        let mut basis = MultiPoly::constant(ring, values[i].clone());
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                let num = &t - &MultiPoly::constant(ring, xj.clone());
                basis = (&basis * &num).scale(&(xi - xj).inv()?);
            }
        }
        acc = &acc + &basis;
    }
    Ok(acc)
}

fn univariate_coeffs(f: &MultiPoly) -> Vec<Coeff> {
    let d = f.degree_in(0) as usize;
    (0..=d)
        .map(|k| f.coefficient(&Monomial::from_exponents(vec![k as u32])))
        .collect()
}

fn horner(coeffs: &[Coeff], x: &Coeff) -> Coeff {
    coeffs
        .iter()
        .rev()
        .fold(x.field().zero(), |acc, c| &(&acc * x) + c)
}

/// Largest prime allowed for the exhaustive root search.
const ROOT_SEARCH_LIMIT: u32 = 1 << 20;

/// Distinct roots in the base field, sorted descending (by symmetric value).
fn distinct_roots(f: &MultiPoly, field: Field) -> Result<Vec<Coeff>> {
    let coeffs = univariate_coeffs(f);
    let mut roots: Vec<Coeff> = match field {
        Field::Prime(p) => {
            if p > ROOT_SEARCH_LIMIT {
                return Err(AlgebraError::Unsupported(format!(
                    "root search over F_{p} exceeds the exhaustive limit"
                )));
            }
            (0..p as i64)
                .map(|k| Coeff::from_i64(field, k))
                .filter(|x| horner(&coeffs, x).is_zero())
                .collect()
        }
        Field::Rational => rational_roots(&coeffs)?,
    };
    roots.sort_by(|x, y| y.to_rational().cmp(&x.to_rational()));
    Ok(roots)
}

/// Rational roots by the rational root theorem on the integer-cleared polynomial.
fn rational_roots(coeffs: &[Coeff]) -> Result<Vec<Coeff>> {
    let q = Field::Rational;
    let rats: Vec<BigRational> = coeffs.iter().map(Coeff::to_rational).collect();
    let den = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let mut ints: Vec<BigInt> = rats.iter().map(|r| (r * &den).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(q.zero());
        ints.drain(..low);
    }
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let lead = ints.last().expect("nonconstant").abs();
    let constant = ints[0].abs();
    let ps = divisors(&constant)?;
    let qs = divisors(&lead)?;
    let coeffs_q: Vec<Coeff> = ints
        .iter()
        .map(|c| Coeff::Rational(BigRational::from_integer(c.clone())))
        .collect();
    let mut seen: Vec<BigRational> = Vec::new();
    for p in &ps {
        for d in &qs {
            for sign in [1i64, -1] {
                let r = BigRational::new(p * BigInt::from(sign), d.clone());
                if seen.contains(&r) {
                    continue;
                }
                seen.push(r.clone());
                let x = Coeff::Rational(r);
                if horner(&coeffs_q, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    Ok(roots)
}

/// Positive divisors of `n > 0`, by trial division; gives up on large cofactors.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p <= 1_000_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let small = rest.to_u64().map(|r| r < 1_000_000u64 * 1_000_000).unwrap_or(false);
        if !small {
            return Err(AlgebraError::Unsupported(
                "characteristic polynomial coefficients too large to factor".into(),
            ));
        }
        factors.push((rest, 1));
    }
    let mut out = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::new();
        for d in &out {
            let mut m = d.clone();
            for _ in 0..=e {
                next.push(m.clone());
                m *= &f;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Basis of `span(vectors)` that is orthogonal for `q` with `q(v) ≠ 0`.
fn orthogonalize(q: &QuadraticForm, mut vectors: Vec<Vec<Coeff>>) -> Result<Vec<Vec<Coeff>>> {
    let mut out = Vec::new();
    while !vectors.is_empty() {
        let k = match vectors.iter().position(|v| !q.value(v).is_zero()) {
            Some(k) => k,
            None => {
                let pair = (0..vectors.len())
                    .flat_map(|i| (i + 1..vectors.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !q.bilinear(&vectors[i], &vectors[j]).is_zero());
                let Some((i, j)) = pair else {
                    return Err(AlgebraError::DegenerateForm(
                        "f1 restricted to an eigenspace is degenerate".into(),
                    ));
                };
                let s: Vec<Coeff> = vectors[i].iter().zip(&vectors[j]).map(|(x, y)| x + y).collect();
                vectors[i] = s;
                i
            }
        };
        let v = vectors.remove(k);
        let qv = q.value(&v);
        for w in vectors.iter_mut() {
            let c = q.bilinear(w, &v).div(&qv)?;
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi = &*wi - &(&c * vi);
            }
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly;

    const Q: Field = Field::Rational;

    fn form(s: &str) -> QuadraticForm {
        QuadraticForm::from_poly(&parse_poly(s, Ring::flat(2, Q)).unwrap()).unwrap()
    }

    #[test]
    fn block_data() {
        let dp = DiagonalPair::normalized(Q, &[1, 1, 2, 3]).unwrap();
        assert_eq!(dp.lambdas, vec![2, 1, 1]);
        assert_eq!(dp.mus, vec![2, 3, 4]);
        assert_eq!(dp.r(), 3);
        assert_eq!(dp.block(0), vec![0, 1]);
    }

    #[test]
    fn zero_columns_are_remixed() {
        let dp = DiagonalPair::from_i64(Q, &[0, 1, 2], &[1, 1, 4]).unwrap();
        assert!(!dp.mix.is_zero());
        assert_eq!(dp.r(), 3);
        assert!(DiagonalPair::from_i64(Q, &[0, 1], &[0, 2]).is_err());
    }

    #[test]
    fn diagonal_input_is_identity() {
        let f1 = QuadraticForm::diagonal_i64(Q, &[1, 1, 1]).unwrap();
        let f2 = QuadraticForm::diagonal_i64(Q, &[2, 5, 2]).unwrap();
        let Diagonalization::Diagonal { pair, transform } = simultaneous_diagonalize(&f1, &f2).unwrap() else {
            panic!("diagonal input");
        };
        assert_eq!(transform, Matrix::identity(Q, 3));
        assert_eq!(pair.b, f2.diagonal_entries());
    }

    #[test]
    fn hyperbolic_pair() {
        let f1 = form("x1^2 + x2^2");
        let f2 = form("2*x1*x2");
        let Diagonalization::Diagonal { pair, transform } = simultaneous_diagonalize(&f1, &f2).unwrap() else {
            panic!("splits over Q");
        };
        assert_eq!(pair.ratios, vec![Coeff::from_i64(Q, 1), Coeff::from_i64(Q, -1)]);
        // congruence reproduces both Gram matrices
        let inv = transform.inverse().unwrap();
        assert_eq!(pair.f1().congruent(&inv).unwrap(), f1);
        assert_eq!(pair.f2().congruent(&inv).unwrap(), f2);
    }

    #[test]
    fn irrational_pencil() {
        let f1 = form("x1^2 + x2^2");
        let f2 = form("x1*x2 + x2^2");
        assert!(matches!(
            simultaneous_diagonalize(&f1, &f2).unwrap(),
            Diagonalization::Unsupported(_)
        ));
        let degenerate = form("x1^2");
        assert!(matches!(
            simultaneous_diagonalize(&degenerate, &f2),
            Err(AlgebraError::DegenerateForm(_))
        ));
    }

    #[test]
    fn prime_field_and_repeated_roots() {
        let f = Field::Prime(11);
        let r = Ring::flat(3, f);
        let f1 = QuadraticForm::from_poly(&parse_poly("x1*x2 + x3^2", r).unwrap()).unwrap();
        let f2 = QuadraticForm::from_poly(&parse_poly("3*x1*x2 + x1^2 + x2^2 + 3*x3^2", r).unwrap()).unwrap();
        let Diagonalization::Diagonal { pair, transform } = simultaneous_diagonalize(&f1, &f2).unwrap() else {
            panic!("splits over F_11");
        };
        let inv = transform.inverse().unwrap();
        assert_eq!(pair.f1().congruent(&inv).unwrap(), f1);
        assert_eq!(pair.f2().congruent(&inv).unwrap(), f2);
        assert_eq!(pair.n(), 3);
    }

    #[test]
    fn divisor_lists() {
        let d = divisors(&BigInt::from(12)).unwrap();
        assert_eq!(d, [1, 2, 3, 4, 6, 12].map(BigInt::from).to_vec());
    }
}
