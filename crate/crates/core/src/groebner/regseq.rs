//! Regular-sequence tests: codimension count, colon ideals, and the gcd
//! criterion for pairs.

use serde::Serialize;

use super::{codimension, ideal_quotient, Ideal};
use crate::error::{AlgebraError, Result};
use crate::polycore::{gcd, MultiPoly, Ring};

fn check_inputs(fs: &[MultiPoly]) -> Result<Ring> {
    let Some(first) = fs.first() else {
        return Err(AlgebraError::InvalidInput("empty sequence".into()));
    };
    let ring = first.ring();
    for f in fs {
        ring.check_compatible(&f.ring())?;
        if f.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        if f.is_constant() {
            return Err(AlgebraError::ConstantForm);
        }
    }
    Ok(ring)
}

/// Homogeneous forms of positive degree are regular iff they cut out
/// codimension equal to their number.
pub fn is_regular_sequence_codim(fs: &[MultiPoly]) -> Result<bool> {
    let ring = check_inputs(fs)?;
    let c = codimension(&Ideal::new(ring, fs.to_vec())?)?;
    Ok(c == fs.len() as i64)
}

/// Definition-based test: the ideal is proper and each `f_{i+1}` is a
/// nonzerodivisor modulo `⟨f_1..f_i⟩`, i.e. the colon ideal does not grow.
pub fn is_regular_sequence_direct(fs: &[MultiPoly]) -> Result<bool> {
    let ring = check_inputs(fs)?;
    let whole = Ideal::new(ring, fs.to_vec())?;
    if whole.groebner(super::MonomialOrder::DegRevLex).is_unit() {
        return Ok(false);
    }
    for i in 1..fs.len() {
        let prefix = Ideal::new(ring, fs[..i].to_vec())?;
        let colon = ideal_quotient(&prefix, &fs[i])?;
        // prefix ⊆ colon always holds
        if !prefix.contains_ideal(&colon) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport {
    pub gcd: String,
    pub gcd_regular: bool,
    pub codim_regular: bool,
    pub agree: bool,
}

/// Two forms are a regular sequence iff they have no common factor.
pub fn regular_pair_gcd_check(f1: &MultiPoly, f2: &MultiPoly) -> Result<PairReport> {
    check_inputs(&[f1.clone(), f2.clone()])?;
    let g = gcd(f1, f2);
    let gcd_regular = g.is_one();
    let codim_regular = is_regular_sequence_codim(&[f1.clone(), f2.clone()])?;
    Ok(PairReport {
        gcd: g.to_string(),
        gcd_regular,
        codim_regular,
        agree: gcd_regular == codim_regular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, Field};

    fn polys(n: usize, gens: &[&str]) -> Vec<MultiPoly> {
        let r = Ring::flat(n, Field::Rational);
        gens.iter().map(|g| parse_poly(g, r).unwrap()).collect()
    }

    #[test]
    fn coordinate_sequence() {
        let fs = polys(3, &["x1", "x2", "x3"]);
        assert!(is_regular_sequence_codim(&fs).unwrap());
        assert!(is_regular_sequence_direct(&fs).unwrap());
    }

    #[test]
    fn common_factor() {
        let fs = polys(2, &["x1", "x1*x2"]);
        assert!(!is_regular_sequence_codim(&fs).unwrap());
        assert!(!is_regular_sequence_direct(&fs).unwrap());
        let fs = polys(3, &["x1*x2 + x1*x3", "x1*x3^2 - x1*x2^2"]);
        assert!(!is_regular_sequence_direct(&fs).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = Ring::flat(2, Field::Rational);
        assert_eq!(
            is_regular_sequence_codim(&[MultiPoly::zero(r)]),
            Err(AlgebraError::ZeroPolynomial)
        );
        assert_eq!(
            is_regular_sequence_codim(&polys(2, &["x1 + 1"])),
            Err(AlgebraError::NotHomogeneous)
        );
    }

    #[test]
    fn pair_reports() {
        let fs = polys(3, &["x1^2", "x2^2"]);
        let r = regular_pair_gcd_check(&fs[0], &fs[1]).unwrap();
        assert!(r.gcd_regular && r.codim_regular && r.agree);
        assert_eq!(r.gcd, "1");
        let fs = polys(3, &["x1*x2", "x1*x3"]);
        let r = regular_pair_gcd_check(&fs[0], &fs[1]).unwrap();
        assert_eq!(r.gcd, "x1");
        assert!(!r.gcd_regular && !r.codim_regular && r.agree);
    }
}
