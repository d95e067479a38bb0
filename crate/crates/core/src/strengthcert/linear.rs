//! Linear forms homogeneous in the column grading and the normal forms of
//! pairs of them under row changes and column relabelling.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::polycore::{Coeff, Field, Matrix, MultiPoly, Ring, VarLayout};

/// A linear form `Σ_i u_i x_{i,j}` supported in a single column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearForm {
    form: MultiPoly,
    /// 0-based column.
    column: usize,
    /// Row coefficient vector `u`.
    rows: Vec<Coeff>,
}

fn matrix_shape(ring: Ring) -> Result<(usize, usize)> {
    match ring.layout {
        VarLayout::Matrix { rows, cols } => Ok((rows, cols)),
        VarLayout::Flat(_) => Err(AlgebraError::InvalidInput("expected a matrix ring".into())),
    }
}

impl GradedLinearForm {
    pub fn new(form: MultiPoly) -> Result<GradedLinearForm> {
        let ring = form.ring();
        let (nrows, _) = matrix_shape(ring)?;
        if form.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        if form.total_degree() != Some(1) || !form.is_homogeneous() {
            return Err(AlgebraError::InvalidInput(format!("`{form}` is not a linear form")));
        }
        let mut column = None;
        let mut rows = vec![ring.field.zero(); nrows];
        for (m, c) in form.terms() {
            let v = m.support().next().expect("degree one");
            let (i, j) = ring.entry_position(v).expect("matrix variable");
            match column {
                None => column = Some(j),
                Some(k) if k != j => return Err(AlgebraError::NotHomogeneous),
                _ => {}
            }
            rows[i - 1] = c.clone();
        }
        Ok(GradedLinearForm {
            form,
            column: column.expect("nonzero form") - 1,
            rows,
        })
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn column(&self) -> usize {
        self.column
    }

    pub fn row_vector(&self) -> &[Coeff] {
        &self.rows
    }
}

/// The three normal forms of a pair of column-homogeneous linear forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairTag {
    /// `(x11, x21)`: both forms in one column.
    SameColumn,
    /// `(x11, x12)`: different columns, proportional row vectors.
    ParallelRows,
    /// `(x11, x22)`: different columns, independent row vectors.
    Skew,
}

impl PairTag {
    /// 1-based entries of the representative pair.
    pub fn representative_entries(&self) -> [(usize, usize); 2] {
        match self {
            PairTag::SameColumn => [(1, 1), (2, 1)],
            PairTag::ParallelRows => [(1, 1), (1, 2)],
            PairTag::Skew => [(1, 1), (2, 2)],
        }
    }

    pub fn representative(&self, ring: Ring) -> (MultiPoly, MultiPoly) {
        let [(i1, j1), (i2, j2)] = self.representative_entries();
        (MultiPoly::entry(ring, i1, j1), MultiPoly::entry(ring, i2, j2))
    }
}

/// Substitution `M ↦ Q · M · C` where `C` sends column `j` to
/// `scale[j] · e_{perm[j]}`, i.e. `x_{ij} ↦ scale[j] Σ_k Q_{ik} x_{k,perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlAction {
    pub row: Matrix,
    pub perm: Vec<usize>,
    pub scale: Vec<Coeff>,
}

impl GlAction {
    pub fn identity(field: Field, rows: usize, cols: usize) -> GlAction {
        GlAction {
            row: Matrix::identity(field, rows),
            perm: (0..cols).collect(),
            scale: vec![field.one(); cols],
        }
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let ring = f.ring();
        let (rows, cols) = matrix_shape(ring)?;
        let mut images = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut img = MultiPoly::zero(ring);
                for k in 0..rows {
                    let q = self.row.get(i, k);
                    if !q.is_zero() {
                        let v = MultiPoly::entry(ring, k + 1, self.perm[j] + 1);
                        img = &img + &v.scale(&(q * &self.scale[j]));
                    }
                }
                images.push(img);
            }
        }
        Ok(f.substitute(&images))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPairClass {
    pub tag: PairTag,
    /// Sends `(ℓ1, ℓ2)` to the representative pair.
    pub action: GlAction,
}

/// Invertible matrix whose first columns are `vectors` (assumed independent).
fn complete_basis(field: Field, vectors: &[Vec<Coeff>]) -> Matrix {
    let n = vectors[0].len();
    let mut cols: Vec<Vec<Coeff>> = vectors.to_vec();
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![field.zero(); n];
        e[k] = field.one();
        let mut trial = cols.clone();
        trial.push(e);
        let m = Matrix::from_rows(field, trial.clone()).expect("rectangular");
        if m.rank() == trial.len() {
            cols = trial;
        }
    }
    Matrix::from_rows(field, cols).expect("rectangular").transpose()
}

/// Classify `(ℓ1, ℓ2)` and produce the transformation to its representative.
pub fn classify_linear_pair(l1: &GradedLinearForm, l2: &GradedLinearForm) -> Result<LinearPairClass> {
    let ring = l1.form.ring();
    ring.check_compatible(&l2.form.ring())?;
    let field = ring.field;
    let (rows, cols) = matrix_shape(ring)?;
    let (u, v) = (l1.rows.clone(), l2.rows.clone());
    let dependent_rows = Matrix::from_rows(field, vec![u.clone(), v.clone()])?.rank() < 2;
    if l1.column == l2.column && dependent_rows {
        return Err(AlgebraError::LinearlyDependent(format!("{} and {}", l1.form, l2.form)));
    }
    let (tag, basis) = if l1.column == l2.column {
        (PairTag::SameColumn, vec![u.clone(), v.clone()])
    } else if dependent_rows {
        (PairTag::ParallelRows, vec![u.clone()])
    } else {
        (PairTag::Skew, vec![u.clone(), v.clone()])
    };
    // Qᵀ = B⁻¹ sends u ↦ e1 (and v ↦ e2 when v is in the basis).
    let b = complete_basis(field, &basis);
    let row = b.inverse()?.transpose();

    let [(_, c1), (_, c2)] = tag.representative_entries();
    let mut perm: Vec<Option<usize>> = vec![None; cols];
    perm[l1.column] = Some(c1 - 1);
    if l2.column != l1.column {
        perm[l2.column] = Some(c2 - 1);
    }
    let used: Vec<Option<usize>> = perm.clone();
    let mut free = (0..cols).filter(|t| !used.contains(&Some(*t)));
    let perm: Vec<usize> = perm
        .into_iter()
        .map(|p| p.unwrap_or_else(|| free.next().expect("permutation")))
        .collect();

    let mut scale = vec![field.one(); cols];
    if tag == PairTag::ParallelRows {
        // v = λ u
        let k = u.iter().position(|x| !x.is_zero()).expect("nonzero form");
        let lambda = v[k].div(&u[k])?;
        scale[l2.column] = lambda.inv()?;
    }
    debug_assert_eq!(row.rows(), rows);
    Ok(LinearPairClass {
        tag,
        action: GlAction { row, perm, scale },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly;

    fn ring() -> Ring {
        Ring::matrix(4, 3, Field::Rational)
    }

    fn lin(s: &str) -> GradedLinearForm {
        GradedLinearForm::new(parse_poly(s, ring()).unwrap()).unwrap()
    }

    fn check(a: &str, b: &str, tag: PairTag) {
        let (l1, l2) = (lin(a), lin(b));
        let class = classify_linear_pair(&l1, &l2).unwrap();
        assert_eq!(class.tag, tag);
        let (r1, r2) = tag.representative(ring());
        assert_eq!(class.action.apply(l1.form()).unwrap(), r1, "{a}");
        assert_eq!(class.action.apply(l2.form()).unwrap(), r2, "{b}");
    }

    #[test]
    fn representatives() {
        check("x1_1", "x2_1", PairTag::SameColumn);
        check("x1_1", "x1_2", PairTag::ParallelRows);
        check("x1_1", "x2_2", PairTag::Skew);
    }

    #[test]
    fn witnessed_normalizations() {
        check("x1_1 + 2*x2_1", "x1_2 + 2*x2_2", PairTag::ParallelRows);
        check("x3_2 - x4_2", "x1_2 + x2_2", PairTag::SameColumn);
        check("x1_3 + x2_3", "3*x1_1 + 3*x2_1", PairTag::ParallelRows);
        check("x4_3", "x1_2 - x4_2", PairTag::Skew);
    }

    #[test]
    fn rejects_bad_pairs() {
        let r = ring();
        assert_eq!(
            GradedLinearForm::new(parse_poly("x1_1 + x2_3", r).unwrap()),
            Err(AlgebraError::NotHomogeneous)
        );
        let l = lin("x1_1 + x2_1");
        let m = lin("2*x1_1 + 2*x2_1");
        assert!(matches!(classify_linear_pair(&l, &m), Err(AlgebraError::LinearlyDependent(_))));
    }
}
