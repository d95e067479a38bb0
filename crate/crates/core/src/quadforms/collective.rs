//! Collective strength of quadric families by projective scans, and the
//! three-quadric regularity report.

use rayon::prelude::*;
use serde::Serialize;

use super::minrank::odd_prime;
use super::{
    minrank_bruteforce, minrank_formula, prime_certificate, simultaneous_diagonalize,
    strength_from_rank, Diagonalization, Pencil, PrimeVerdict, QuadraticForm,
};
use crate::error::{AlgebraError, Result};
use crate::groebner::is_regular_sequence_codim;
use crate::polycore::{Coeff, Field, Ring};

/// Points of `P^{r−1}(F_p)` as vectors whose first nonzero entry is 1, in
/// lexicographic order of residues.
pub fn projective_points(field: Field, r: usize) -> Result<Vec<Vec<Coeff>>> {
    let p = odd_prime(field).or_else(|e| match field {
        Field::Prime(2) => Ok(2),
        _ => Err(e),
    })? as u64;
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = p.pow(free as u32);
        for k in 0..count {
            let mut v = vec![field.zero(); r];
            v[lead] = field.one();
            let mut rest = k;
            for slot in (lead + 1..r).rev() {
                v[slot] = Coeff::from_i64(field, (rest % p) as i64);
                rest /= p;
            }
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectiveStrength {
    pub value: i64,
    pub rank: usize,
    pub witness: Vec<Coeff>,
}

/// Minimum of `strength_from_rank` over all `F_p`-rational points of the
/// projective space of combinations. Ties go to the first point in
/// [`projective_points`] order.
pub fn collective_strength_quadrics(pencil: &Pencil) -> Result<CollectiveStrength> {
    odd_prime(pencil.field())?;
    let points = projective_points(pencil.field(), pencil.len())?;
    let (rank, idx) = points
        .par_iter()
        .enumerate()
        .map(|(i, w)| (pencil.combination(w).rank(), i))
        .min()
        .expect("nonempty projective space");
    Ok(CollectiveStrength {
        value: strength_from_rank(rank as i64)?,
        rank,
        witness: points[idx].clone(),
    })
}

/// Every step of the chain "collective strength ≥ 2 ⇒ minrank ≥ 5 ⇒
/// codim J > 4 ⇒ prime ⇒ regular", each computed independently.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct N32Report {
    pub diagonalization: String,
    pub minrank_formula: Option<usize>,
    pub minrank_scan: usize,
    pub scan_prime: u32,
    pub codim_j: Option<i64>,
    pub prime_certificate: Option<PrimeVerdict>,
    pub collective_strength: i64,
    pub collective_witness: Vec<String>,
    /// `minrank ≥ 4`.
    pub meets_threshold_4: bool,
    /// `minrank ≥ 5`, i.e. strength at least 2 on the pair.
    pub meets_threshold_5: bool,
    pub regular: bool,
    pub consistent: bool,
}

pub fn theorem_n32_report(
    f1: &QuadraticForm,
    f2: &QuadraticForm,
    f3: &QuadraticForm,
    p: u32,
) -> Result<N32Report> {
    let field = f1.field();
    if [f2, f3].iter().any(|q| q.field() != field || q.n() != f1.n()) {
        return Err(AlgebraError::DimensionMismatch("forms of different shape".into()));
    }
    let scan_field = match field {
        Field::Rational => Field::prime(p)?,
        f => f,
    };
    let conv = |q: &QuadraticForm| q.convert(scan_field);

    let (diagonalization, pair) = match simultaneous_diagonalize(f1, f2) {
        Ok(Diagonalization::Diagonal { pair, .. }) => ("diagonalized".to_string(), Some(pair)),
        Ok(Diagonalization::Unsupported(why)) => (format!("unsupported: {why}"), None),
        Err(AlgebraError::DegenerateForm(why)) => (format!("degenerate: {why}"), None),
        Err(e) => return Err(e),
    };
    let minrank_formula = pair.as_ref().map(|dp| minrank_formula(dp).value);
    let (codim_j, prime) = match &pair {
        Some(dp) => {
            let v = prime_certificate(dp)?;
            let c = match v {
                PrimeVerdict::CertifiedPrime { codim_j } | PrimeVerdict::Inconclusive { codim_j } => codim_j,
            };
            (Some(c), Some(v))
        }
        None => (None, None),
    };
    let minrank_scan = minrank_bruteforce(&conv(f1)?, &conv(f2)?)?.value;
    let minrank = minrank_formula.unwrap_or(minrank_scan);
    let cs = collective_strength_quadrics(&Pencil::new(vec![conv(f1)?, conv(f2)?, conv(f3)?])?)?;

    let ring = Ring::flat(f1.n(), field);
    let polys = [f1, f2, f3]
        .iter()
        .map(|q| q.to_poly(ring))
        .collect::<Result<Vec<_>>>()?;
    let regular = if polys.iter().any(|f| f.is_zero()) {
        false
    } else {
        is_regular_sequence_codim(&polys)?
    };
    Ok(N32Report {
        diagonalization,
        minrank_formula,
        minrank_scan,
        scan_prime: scan_field.characteristic(),
        codim_j,
        prime_certificate: prime,
        collective_strength: cs.value,
        collective_witness: cs.witness.iter().map(|c| c.to_string()).collect(),
        meets_threshold_4: minrank >= 4,
        meets_threshold_5: minrank >= 5,
        regular,
        consistent: cs.value < 2 || regular,
    })
}
