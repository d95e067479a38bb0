//! Multigradings, in particular the column grading of a generic matrix ring.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::poly::{MultiPoly, VarLayout};
use crate::error::{AlgebraError, Result};

/// A vector of nonnegative integers, one per grading component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(m: usize) -> MultiDegree {
        MultiDegree(vec![0; m])
    }

    pub fn unit(m: usize, k: usize) -> MultiDegree {
        let mut v = vec![0; m];
        v[k] = 1;
        MultiDegree(v)
    }

    pub fn ones(m: usize) -> MultiDegree {
        MultiDegree(vec![1; m])
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Compact label, e.g. `110` for `(1,1,0)` when all entries are single digits.
    pub fn label(&self) -> String {
        if self.0.iter().all(|&d| d < 10) {
            self.0.iter().map(|d| d.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Assignment of a multidegree in `Z^m` to every ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingSpec {
    m: usize,
    degrees: Vec<MultiDegree>,
}

/// Outcome of asking for the multidegree of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(MultiDegree),
    NonHomogeneous,
}

impl GradingSpec {
    pub fn new(m: usize, degrees: Vec<MultiDegree>) -> Result<GradingSpec> {
        if degrees.iter().any(|d| d.0.len() != m) {
            return Err(AlgebraError::DimensionMismatch(format!(
                "every multidegree must have {m} components"
            )));
        }
        Ok(GradingSpec { m, degrees })
    }

    /// Standard grading: `m = 1`, every variable of degree one.
    pub fn standard(nvars: usize) -> GradingSpec {
        GradingSpec {
            m: 1,
            degrees: vec![MultiDegree(vec![1]); nvars],
        }
    }

    /// Column grading of a `rows × cols` generic matrix ring (row-major variables).
    pub fn columns(rows: usize, cols: usize) -> GradingSpec {
        let degrees = (0..rows * cols)
            .map(|v| MultiDegree::unit(cols, v % cols))
            .collect();
        GradingSpec { m: cols, degrees }
    }

    /// Column grading for a matrix ring; `None` for flat layouts.
    pub fn columns_of(layout: VarLayout) -> Option<GradingSpec> {
        match layout {
            VarLayout::Matrix { rows, cols } => Some(GradingSpec::columns(rows, cols)),
            VarLayout::Flat(_) => None,
        }
    }

    pub fn components_count(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn var_degree(&self, var: usize) -> &MultiDegree {
        &self.degrees[var]
    }

    pub fn degree_of(&self, m: &Monomial) -> MultiDegree {
        let mut d = vec![0u32; self.m];
        for v in m.support() {
            let e = m.exponent(v);
            for (k, x) in self.degrees[v].0.iter().enumerate() {
                d[k] += e * x;
            }
        }
        MultiDegree(d)
    }

    fn check(&self, f: &MultiPoly) -> Result<()> {
        if f.nvars() != self.degrees.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "grading covers {} variables, polynomial has {}",
                self.degrees.len(),
                f.nvars()
            )));
        }
        Ok(())
    }

    /// Common multidegree of all terms of `f`.
    ///
    /// The zero polynomial has no degree and yields [`AlgebraError::ZeroPolynomial`].
    pub fn multidegree(&self, f: &MultiPoly) -> Result<Homogeneity> {
        self.check(f)?;
        let mut terms = f.terms().iter();
        let first = match terms.next() {
            None => return Err(AlgebraError::ZeroPolynomial),
            Some((m, _)) => self.degree_of(m),
        };
        if terms.all(|(m, _)| self.degree_of(m) == first) {
            Ok(Homogeneity::Homogeneous(first))
        } else {
            Ok(Homogeneity::NonHomogeneous)
        }
    }

    /// Sum of the terms of `f` of multidegree exactly `d`.
    pub fn component(&self, f: &MultiPoly, d: &MultiDegree) -> MultiPoly {
        let terms: Vec<_> = f
            .terms()
            .iter()
            .filter(|(m, _)| &self.degree_of(m) == d)
            .cloned()
            .collect();
        MultiPoly::from_sorted_terms(f.ring(), terms)
    }

    /// All nonzero homogeneous components of `f`, keyed by multidegree.
    pub fn components(&self, f: &MultiPoly) -> BTreeMap<MultiDegree, MultiPoly> {
        let mut buckets: BTreeMap<MultiDegree, Vec<_>> = BTreeMap::new();
        for t in f.terms() {
            buckets.entry(self.degree_of(&t.0)).or_default().push(t.clone());
        }
        buckets
            .into_iter()
            .map(|(d, terms)| (d, MultiPoly::from_sorted_terms(f.ring(), terms)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, Field, Ring};

    fn mat43() -> Ring {
        Ring::matrix(4, 3, Field::Rational)
    }

    #[test]
    fn example_not_homogeneous() {
        let g = GradingSpec::columns(4, 3);
        let f = parse_poly("x1_1 + x2_3", mat43()).unwrap();
        assert_eq!(g.multidegree(&f).unwrap(), Homogeneity::NonHomogeneous);
    }

    #[test]
    fn standard_grading_degree() {
        let r = Ring::flat(2, Field::Rational);
        let f = parse_poly("x1^2 + x1*x2", r).unwrap();
        assert_eq!(
            GradingSpec::standard(2).multidegree(&f).unwrap(),
            Homogeneity::Homogeneous(MultiDegree(vec![2]))
        );
    }

    #[test]
    fn zero_has_no_degree() {
        let g = GradingSpec::columns(4, 3);
        assert_eq!(
            g.multidegree(&MultiPoly::zero(mat43())),
            Err(AlgebraError::ZeroPolynomial)
        );
        assert!(g
            .component(&MultiPoly::zero(mat43()), &MultiDegree(vec![1, 0, 0]))
            .is_zero());
    }

    #[test]
    fn component_selection() {
        let g = GradingSpec::columns(4, 3);
        let f = parse_poly("x1_1 + x2_3", mat43()).unwrap();
        let c = g.component(&f, &MultiDegree(vec![1, 0, 0]));
        assert_eq!(c, parse_poly("x1_1", mat43()).unwrap());
        let parts = g.components(&f);
        assert_eq!(parts.len(), 2);
        let sum = parts.values().fold(MultiPoly::zero(mat43()), |a, p| &a + p);
        assert_eq!(sum, f);
    }
}
