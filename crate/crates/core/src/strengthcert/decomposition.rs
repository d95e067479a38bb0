//! `ab + cd` decompositions split into column-graded pieces, and the
//! off-degree vanishing conditions they must satisfy.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::polycore::{GradingSpec, Homogeneity, MultiDegree, MultiPoly, Ring};

pub type Pieces = BTreeMap<MultiDegree, MultiPoly>;

/// `Δ = a·b + c·d` with each factor stored as its graded components.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedDecomposition {
    pub grading: GradingSpec,
    pub ring: Ring,
    pub a: Pieces,
    pub b: Pieces,
    pub c: Pieces,
    pub d: Pieces,
}

fn check_pieces(grading: &GradingSpec, pieces: &Pieces) -> Result<()> {
    for (deg, p) in pieces {
        if p.is_zero() {
            continue;
        }
        match grading.multidegree(p)? {
            Homogeneity::Homogeneous(d) if &d == deg => {}
            _ => {
                return Err(AlgebraError::InvalidInput(format!(
                    "piece `{p}` is not of degree {deg}"
                )))
            }
        }
    }
    Ok(())
}

fn sum(ring: Ring, pieces: &Pieces) -> MultiPoly {
    pieces.values().fold(MultiPoly::zero(ring), |acc, p| &acc + p)
}

impl GradedDecomposition {
    /// From explicit pieces; each must be zero or of its key's multidegree.
    pub fn new(grading: GradingSpec, ring: Ring, a: Pieces, b: Pieces, c: Pieces, d: Pieces) -> Result<Self> {
        for p in [&a, &b, &c, &d] {
            check_pieces(&grading, p)?;
        }
        Ok(GradedDecomposition { grading, ring, a, b, c, d })
    }

    /// Split arbitrary `a, b, c, d` into graded components.
    pub fn from_factors(grading: GradingSpec, a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly) -> Result<Self> {
        let ring = a.ring();
        for f in [b, c, d] {
            ring.check_compatible(&f.ring())?;
        }
        Ok(GradedDecomposition {
            a: grading.components(a),
            b: grading.components(b),
            c: grading.components(c),
            d: grading.components(d),
            grading,
            ring,
        })
    }

    pub fn a(&self) -> MultiPoly {
        sum(self.ring, &self.a)
    }

    pub fn b(&self) -> MultiPoly {
        sum(self.ring, &self.b)
    }

    pub fn c(&self) -> MultiPoly {
        sum(self.ring, &self.c)
    }

    pub fn d(&self) -> MultiPoly {
        sum(self.ring, &self.d)
    }

    /// `a·b + c·d`.
    pub fn product(&self) -> MultiPoly {
        &(&self.a() * &self.b()) + &(&self.c() * &self.d())
    }

    /// Sum of the piece products landing in `target`.
    pub fn part_in(&self, target: &MultiDegree) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.ring);
        for (x, y) in [(&self.a, &self.b), (&self.c, &self.d)] {
            for (dx, px) in x {
                for (dy, py) in y {
                    if &dx.add(dy) == target {
                        acc = &acc + &(px * py);
                    }
                }
            }
        }
        acc
    }

    /// The `(1, …, 1)` part, e.g. `a_100 b_011 + a_010 b_101 + … + c_001 d_110`.
    pub fn diagonal_part(&self) -> MultiPoly {
        self.part_in(&MultiDegree::ones(self.grading.components_count()))
    }
}

/// Multidegree labels of the nine off-diagonal cubic equations, in order.
pub const EQUATION_DEGREES: [&str; 9] = ["300", "120", "102", "210", "030", "012", "201", "003", "021"];

/// Equation number (1-based) for an off-diagonal cubic multidegree in three columns.
pub fn equation_number(deg: &MultiDegree) -> Option<usize> {
    if deg.0.len() != 3 {
        return None;
    }
    EQUATION_DEGREES.iter().position(|l| *l == deg.label()).map(|k| k + 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub degree: MultiDegree,
    pub equation: Option<usize>,
    pub component: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintCheck {
    pub passed: bool,
    /// `ab + cd = 0`.
    pub product_is_zero: bool,
    pub violations: Vec<Violation>,
}

/// `ab + cd` has no component outside `(1, …, 1)`.
pub fn grading_constraint_check(dec: &GradedDecomposition) -> ConstraintCheck {
    let ones = MultiDegree::ones(dec.grading.components_count());
    let product = dec.product();
    let violations: Vec<Violation> = dec
        .grading
        .components(&product)
        .into_iter()
        .filter(|(deg, p)| deg != &ones && !p.is_zero())
        .map(|(degree, p)| Violation {
            equation: equation_number(&degree),
            degree,
            component: p.to_string(),
        })
        .collect();
    ConstraintCheck {
        passed: violations.is_empty(),
        product_is_zero: product.is_zero(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, Field};

    fn ring() -> Ring {
        Ring::matrix(4, 3, Field::Rational)
    }

    fn dec(a: &str, b: &str, c: &str, d: &str) -> GradedDecomposition {
        let r = ring();
        let p = |s: &str| parse_poly(s, r).unwrap();
        GradedDecomposition::from_factors(GradingSpec::columns(4, 3), &p(a), &p(b), &p(c), &p(d)).unwrap()
    }

    #[test]
    fn homogeneous_product_passes() {
        let d = dec("x1_1", "x2_2*x3_3", "x2_1", "x3_2*x4_3");
        let check = grading_constraint_check(&d);
        assert!(check.passed && !check.product_is_zero);
        assert_eq!(d.diagonal_part(), d.product());
    }

    #[test]
    fn injected_piece_violates_first_equation() {
        let d = dec("x1_1", "x2_2*x3_3 + x2_1*x3_1", "x2_1", "x3_2*x4_3");
        let check = grading_constraint_check(&d);
        assert!(!check.passed);
        assert_eq!(check.violations.len(), 1);
        assert_eq!(check.violations[0].equation, Some(1));
        assert_eq!(check.violations[0].degree.label(), "300");
        assert_eq!(check.violations[0].component, "x1_1*x2_1*x3_1");
    }

    #[test]
    fn zero_decomposition() {
        let check = grading_constraint_check(&dec("0", "0", "0", "0"));
        assert!(check.passed && check.product_is_zero);
    }

    #[test]
    fn equation_labels() {
        assert_eq!(equation_number(&MultiDegree(vec![0, 2, 1])), Some(9));
        assert_eq!(equation_number(&MultiDegree(vec![1, 1, 1])), None);
    }

    #[test]
    fn explicit_pieces_are_validated() {
        let r = ring();
        let g = GradingSpec::columns(4, 3);
        let mut a = Pieces::new();
        a.insert(MultiDegree(vec![0, 1, 0]), MultiPoly::entry(r, 1, 1));
        assert!(GradedDecomposition::new(g, r, a, Pieces::new(), Pieces::new(), Pieces::new()).is_err());
    }
}
