//! Exclusion matrices: reduce a family modulo an ideal of two coordinates and
//! test whether any nontrivial combination vanishes.

use std::collections::BTreeSet;
use std::fmt;

use super::linear::PairTag;
use crate::error::{AlgebraError, Result};
use crate::groebner::{GroebnerBasis, Ideal, MonomialOrder};
use crate::polycore::{Coeff, Matrix, Monomial, MultiPoly, Ring, VarLayout};

/// Ideal generated by matrix entries (1-based `(row, col)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealClass {
    /// `⟨x11, x12⟩`
    ParallelRows,
    /// `⟨x11, x21⟩`
    SameColumn,
    /// `⟨x11, x22⟩`
    Skew,
    Custom(Vec<(usize, usize)>),
}

impl IdealClass {
    /// The three representatives of pairs of column-homogeneous linear forms.
    pub fn representatives() -> Vec<IdealClass> {
        vec![IdealClass::ParallelRows, IdealClass::SameColumn, IdealClass::Skew]
    }

    pub fn from_tag(tag: PairTag) -> IdealClass {
        match tag {
            PairTag::ParallelRows => IdealClass::ParallelRows,
            PairTag::SameColumn => IdealClass::SameColumn,
            PairTag::Skew => IdealClass::Skew,
        }
    }

    pub fn entries(&self) -> Vec<(usize, usize)> {
        match self {
            IdealClass::ParallelRows => PairTag::ParallelRows.representative_entries().to_vec(),
            IdealClass::SameColumn => PairTag::SameColumn.representative_entries().to_vec(),
            IdealClass::Skew => PairTag::Skew.representative_entries().to_vec(),
            IdealClass::Custom(e) => e.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            IdealClass::ParallelRows => "parallel-rows".into(),
            IdealClass::SameColumn => "same-column".into(),
            IdealClass::Skew => "skew".into(),
            IdealClass::Custom(e) => {
                let parts: Vec<String> = e.iter().map(|(i, j)| format!("x{i}_{j}")).collect();
                format!("custom-{}", parts.join("-"))
            }
        }
    }

    pub fn ideal(&self, ring: Ring) -> Result<Ideal> {
        let vars = self
            .entries()
            .iter()
            .map(|&(i, j)| {
                ring.entry_index(i, j)
                    .ok_or_else(|| AlgebraError::InvalidInput(format!("no entry x{i}_{j} in {ring}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::coordinate(ring, &vars))
    }
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().iter().map(|(i, j)| format!("x{i}_{j}")).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Every ideal generated by two distinct matrix entries.
pub fn all_coordinate_pairs(rows: usize, cols: usize) -> Vec<IdealClass> {
    let cells: Vec<(usize, usize)> = (1..=rows).flat_map(|i| (1..=cols).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            out.push(IdealClass::Custom(vec![cells[a], cells[b]]));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExclusionReport {
    pub class: IdealClass,
    /// Surviving monomials, descending degrevlex.
    pub monomials: Vec<Monomial>,
    /// Rows = monomials, columns = family members.
    pub matrix: Matrix,
    pub kernel: Vec<Vec<Coeff>>,
}

impl ExclusionReport {
    pub fn rows(&self) -> usize {
        self.monomials.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn excluded(&self) -> bool {
        self.kernel.is_empty()
    }

    pub fn monomial_names(&self, ring: Ring) -> Vec<String> {
        self.monomials
            .iter()
            .map(|m| MultiPoly::monomial(ring, m.clone(), ring.field.one()).to_string())
            .collect()
    }
}

/// Reduce each member of `family` modulo `class` and compute the kernel of
/// the monomial-by-member coefficient matrix.
pub fn exclusion_matrix(family: &[MultiPoly], class: &IdealClass) -> Result<ExclusionReport> {
    let Some(first) = family.first() else {
        return Err(AlgebraError::InvalidInput("empty family".into()));
    };
    let ring = first.ring();
    if !matches!(ring.layout, VarLayout::Matrix { .. }) {
        return Err(AlgebraError::InvalidInput("family must live in a matrix ring".into()));
    }
    let degree = first.total_degree();
    for f in family {
        ring.check_compatible(&f.ring())?;
        if !f.is_homogeneous() || f.total_degree() != degree {
            return Err(AlgebraError::InvalidInput("family members must be forms of one degree".into()));
        }
    }
    let gb: GroebnerBasis = class.ideal(ring)?.groebner(MonomialOrder::DegRevLex);
    let reduced: Vec<MultiPoly> = family.iter().map(|f| gb.normal_form(f)).collect();
    let monos: BTreeSet<Monomial> = reduced
        .iter()
        .flat_map(|f| f.terms().iter().map(|(m, _)| m.clone()))
        .collect();
    let mut monomials: Vec<Monomial> = monos.into_iter().collect();
    monomials.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
    let field = ring.field;
    let mut matrix = Matrix::zeros(field, monomials.len(), family.len());
    for (r, m) in monomials.iter().enumerate() {
        for (c, f) in reduced.iter().enumerate() {
            matrix.set(r, c, f.coefficient(m));
        }
    }
    let kernel = if monomials.is_empty() {
        (0..family.len())
            .map(|k| {
                let mut e = vec![field.zero(); family.len()];
                e[k] = field.one();
                e
            })
            .collect()
    } else {
        matrix.kernel()
    };
    Ok(ExclusionReport {
        class: class.clone(),
        monomials,
        matrix,
        kernel,
    })
}

/// No nontrivial combination of `family` lies in any of the `classes`.
pub fn strength_one_excluded(family: &[MultiPoly], classes: &[IdealClass]) -> Result<bool> {
    for c in classes {
        if !exclusion_matrix(family, c)?.excluded() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinantal::MinorFamily;
    use crate::polycore::{parse_poly, Field};

    fn family() -> MinorFamily {
        MinorFamily::generic(3, Field::Rational)
    }

    #[test]
    fn parallel_rows_keeps_ten_terms() {
        let fam = family();
        let rep = exclusion_matrix(&fam.minors[..3], &IdealClass::ParallelRows).unwrap();
        assert_eq!(rep.rows(), 10);
        assert!(rep.excluded());
    }

    #[test]
    fn same_column_keeps_ten_terms() {
        let fam = family();
        let rep = exclusion_matrix(&fam.minors[..3], &IdealClass::SameColumn).unwrap();
        assert_eq!(rep.rows(), 10);
        assert!(rep.excluded());
    }

    #[test]
    fn skew_class_keeps_eleven_terms() {
        // four from f1, four from f2, three from f3
        let fam = family();
        let rep = exclusion_matrix(&fam.minors[..3], &IdealClass::Skew).unwrap();
        assert_eq!(rep.rows(), 11);
        assert!(rep.excluded());
    }

    #[test]
    fn dependent_family_has_kernel() {
        let fam = family();
        let f1 = fam.minor(1).clone();
        let two = f1.scale(&Coeff::from_i64(Field::Rational, 2));
        for class in IdealClass::representatives() {
            assert!(exclusion_matrix(&[f1.clone(), two.clone()], &class).unwrap().kernel_dim() >= 1);
        }
    }

    #[test]
    fn product_with_pivot_lies_in_ideal() {
        let r = Ring::matrix(4, 3, Field::Rational);
        let f = parse_poly("x1_1*x2_2*x3_3 + x1_1*x4_2^2", r).unwrap();
        assert!(!strength_one_excluded(&[f], &IdealClass::representatives()).unwrap());
    }

    #[test]
    fn four_minor_family() {
        let fam = family();
        assert!(strength_one_excluded(&fam.minors, &IdealClass::representatives()).unwrap());
        let extra = IdealClass::Custom(vec![(1, 1), (1, 3)]);
        assert!(strength_one_excluded(&fam.minors[..3], &[extra]).unwrap());
        assert_eq!(all_coordinate_pairs(4, 3).len(), 66);
    }
}
