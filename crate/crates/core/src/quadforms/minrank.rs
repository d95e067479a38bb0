//! Minrank of a pair of quadrics, the Jacobian minor ideal of a diagonal pair
//! and its coordinate components.

use serde::Serialize;

use super::{DiagonalPair, QuadraticForm};
use crate::error::{AlgebraError, Result};
use crate::groebner::{codimension, ideal_intersection, Ideal};
use crate::polycore::{Coeff, Field, Monomial, MultiPoly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinrankMethod {
    Formula,
    FiniteFieldScan,
}

/// Lowest rank of a nontrivial combination `w_1 f_1 + w_2 f_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinrankResult {
    pub value: usize,
    /// `(w_1, w_2)` for the original `f_1`, `f_2`.
    pub witness: Vec<Coeff>,
    pub method: MinrankMethod,
}

impl MinrankResult {
    pub fn witness_strings(&self) -> Vec<String> {
        self.witness.iter().map(|c| c.to_string()).collect()
    }
}

/// `n − max λ_t`, attained by `f2 − α_t f1'` for the first largest block.
pub fn minrank_formula(dp: &DiagonalPair) -> MinrankResult {
    let best = dp.lambdas.iter().copied().max().expect("nonempty pair");
    let t = dp.lambdas.iter().position(|&l| l == best).expect("max present");
    let alpha = &dp.alphas[t];
    // f2 − α(f1 + c f2) = −α f1 + (1 − α c) f2
    let w1 = -alpha;
    let w2 = &dp.field.one() - &(alpha * &dp.mix);
    MinrankResult {
        value: dp.n() - best,
        witness: vec![w1, w2],
        method: MinrankMethod::Formula,
    }
}

pub(crate) fn odd_prime(field: Field) -> Result<u32> {
    match field {
        Field::Rational => Err(AlgebraError::RequiresPrimeField),
        Field::Prime(2) => Err(AlgebraError::CharacteristicTwo),
        Field::Prime(p) => Ok(p),
    }
}

/// Minimum Gram rank over the `p + 1` points of the projective line.
pub fn minrank_bruteforce(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<MinrankResult> {
    let field = f1.field();
    let p = odd_prime(field)?;
    if f2.field() != field || f1.n() != f2.n() {
        return Err(AlgebraError::DimensionMismatch("forms of different shape".into()));
    }
    let points = (0..p as i64)
        .map(|t| vec![field.one(), Coeff::from_i64(field, t)])
        .chain(std::iter::once(vec![field.zero(), field.one()]));
    let forms = [f1.clone(), f2.clone()];
    let mut best: Option<MinrankResult> = None;
    for w in points {
        let r = QuadraticForm::combination(&forms, &w).rank();
        if best.as_ref().map_or(true, |b| r < b.value) {
            best = Some(MinrankResult {
                value: r,
                witness: w,
                method: MinrankMethod::FiniteFieldScan,
            });
        }
    }
    Ok(best.expect("projective line is nonempty"))
}

/// `⟨(r_j − r_i) x_i x_j : i < j, r_i ≠ r_j⟩`, the 2×2 minors of the Jacobian
/// up to units.
pub fn jacobian_minor_ideal(dp: &DiagonalPair) -> Ideal {
    let n = dp.n();
    let ring = Ring::flat(n, dp.field);
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = &dp.ratios[j] - &dp.ratios[i];
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0u32; n];
            e[i] = 1;
            e[j] = 1;
            gens.push(MultiPoly::monomial(ring, Monomial::from_exponents(e), c));
        }
    }
    Ideal::from_gens(ring, gens)
}

/// `I_t`: generated by every variable outside block `t`.
pub fn coordinate_primary_components(dp: &DiagonalPair) -> Vec<Ideal> {
    let ring = Ring::flat(dp.n(), dp.field);
    (0..dp.r())
        .map(|t| {
            let others: Vec<usize> = (0..dp.n()).filter(|&i| dp.blocks[i] != t).collect();
            Ideal::coordinate(ring, &others)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianMinrankReport {
    pub n: usize,
    pub lambdas: Vec<usize>,
    pub intersection_equal: bool,
    pub codim_j: i64,
    pub formula: usize,
    pub bruteforce: usize,
    pub prime: u32,
    pub passed: bool,
}

/// Check `J = ⋂ I_t` and `codim J = n − max λ_t = minrank` (scan over `F_p`
/// when the pair is rational).
pub fn verify_jacobian_minrank(dp: &DiagonalPair, p: u32) -> Result<JacobianMinrankReport> {
    let j = jacobian_minor_ideal(dp);
    let comps = coordinate_primary_components(dp);
    let mut inter = comps[0].clone();
    for c in &comps[1..] {
        inter = ideal_intersection(&inter, c)?;
    }
    let intersection_equal = inter.equals(&j);
    let codim_j = codimension(&j)?;
    let formula = minrank_formula(dp).value;
    let scan_field = match dp.field {
        Field::Rational => Field::prime(p)?,
        f => f,
    };
    let bruteforce = minrank_bruteforce(
        &dp.f1().convert(scan_field)?,
        &dp.f2().convert(scan_field)?,
    )?
    .value;
    let passed = intersection_equal && codim_j == formula as i64 && formula == bruteforce;
    Ok(JacobianMinrankReport {
        n: dp.n(),
        lambdas: dp.lambdas.clone(),
        intersection_equal,
        codim_j,
        formula,
        bruteforce,
        prime: scan_field.characteristic(),
        passed,
    })
}

/// One-sided primality certificate for `⟨f1, f2⟩`: a Jacobian minor ideal of
/// codimension above 4. Never reports "not prime".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PrimeVerdict {
    CertifiedPrime { codim_j: i64 },
    Inconclusive { codim_j: i64 },
}

impl PrimeVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, PrimeVerdict::CertifiedPrime { .. })
    }
}

pub fn prime_certificate(dp: &DiagonalPair) -> Result<PrimeVerdict> {
    let codim_j = codimension(&jacobian_minor_ideal(dp))?;
    Ok(if codim_j > 4 {
        PrimeVerdict::CertifiedPrime { codim_j }
    } else {
        PrimeVerdict::Inconclusive { codim_j }
    })
}
