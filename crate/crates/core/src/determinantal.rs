//! Generic matrices, cofactor determinants and maximal-minor families.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::{codimension, io, Ideal};
use crate::polycore::{Field, GradingSpec, Homogeneity, MultiDegree, MultiPoly, Ring};

/// `rows × cols` matrix whose `(i, j)` entry is the variable `x<i>_<j>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenericMatrix {
    pub rows: usize,
    pub cols: usize,
}

impl GenericMatrix {
    pub fn new(rows: usize, cols: usize) -> GenericMatrix {
        assert!(rows > 0 && cols > 0, "empty generic matrix");
        GenericMatrix { rows, cols }
    }

    pub fn ring(&self, field: Field) -> Ring {
        Ring::matrix(self.rows, self.cols, field)
    }

    pub fn symbolic(&self, field: Field) -> SymbolicMatrix {
        let ring = self.ring(field);
        SymbolicMatrix {
            ring,
            entries: (1..=self.rows)
                .map(|i| (1..=self.cols).map(|j| MultiPoly::entry(ring, i, j)).collect())
                .collect(),
        }
    }

    pub fn grading(&self) -> GradingSpec {
        GradingSpec::columns(self.rows, self.cols)
    }
}

/// Matrix with polynomial entries over a common ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicMatrix {
    pub ring: Ring,
    pub entries: Vec<Vec<MultiPoly>>,
}

impl SymbolicMatrix {
    pub fn new(ring: Ring, entries: Vec<Vec<MultiPoly>>) -> Result<SymbolicMatrix> {
        let cols = entries.first().map(Vec::len).unwrap_or(0);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch("ragged symbolic matrix".into()));
        }
        for e in entries.iter().flatten() {
            ring.check_compatible(&e.ring())?;
        }
        Ok(SymbolicMatrix { ring, entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map(Vec::len).unwrap_or(0)
    }

    pub fn delete_row(&self, i: usize) -> SymbolicMatrix {
        let mut entries = self.entries.clone();
        entries.remove(i);
        SymbolicMatrix {
            ring: self.ring,
            entries,
        }
    }

    pub fn transpose(&self) -> SymbolicMatrix {
        SymbolicMatrix {
            ring: self.ring,
            entries: (0..self.cols())
                .map(|j| self.entries.iter().map(|r| r[j].clone()).collect())
                .collect(),
        }
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> SymbolicMatrix {
        let mut m = self.clone();
        m.entries.swap(a, b);
        m
    }

    fn minor_matrix(&self, skip_row: usize, skip_col: usize) -> SymbolicMatrix {
        SymbolicMatrix {
            ring: self.ring,
            entries: self
                .entries
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip_row)
                .map(|(_, r)| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != skip_col)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Line of a square matrix to expand along.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

fn check_square(m: &SymbolicMatrix) -> Result<usize> {
    if m.rows() != m.cols() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.rows())
}

/// Determinant by cofactor expansion along the first column, memoizing the
/// sub-minors on the remaining row set.
pub fn determinant_laplace(m: &SymbolicMatrix) -> Result<MultiPoly> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(MultiPoly::one(m.ring));
    }
    assert!(n < 64, "determinant too large");
    let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
    Ok(det_rows(m, (1u64 << n) - 1, 0, &mut memo))
}

fn det_rows(m: &SymbolicMatrix, rows: u64, col: usize, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
    if rows == 0 {
        return MultiPoly::one(m.ring);
    }
    if let Some(d) = memo.get(&rows) {
        return d.clone();
    }
    let mut acc = MultiPoly::zero(m.ring);
    let mut position = 0;
    for i in 0..m.rows() {
        if rows & (1 << i) == 0 {
            continue;
        }
        let e = &m.entries[i][col];
        if !e.is_zero() {
            let sub = det_rows(m, rows & !(1 << i), col + 1, memo);
            let term = e * &sub;
            acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        position += 1;
    }
    memo.insert(rows, acc.clone());
    acc
}

/// Determinant by one cofactor expansion along `line`, sub-minors by
/// [`determinant_laplace`].
pub fn determinant_along(m: &SymbolicMatrix, line: Line) -> Result<MultiPoly> {
    let n = check_square(m)?;
    let mut acc = MultiPoly::zero(m.ring);
    for k in 0..n {
        let (i, j) = match line {
            Line::Row(r) => (r, k),
            Line::Column(c) => (k, c),
        };
        if i >= n || j >= n {
            return Err(AlgebraError::DimensionMismatch(format!("no line {line:?}")));
        }
        let e = &m.entries[i][j];
        if e.is_zero() {
            continue;
        }
        let term = e * &determinant_laplace(&m.minor_matrix(i, j))?;
        acc = if (i + j) % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// Maximal minors `f_i = det(M with row i deleted)` of an `(n+1) × n` generic
/// matrix, without alternating signs.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorFamily {
    pub source: GenericMatrix,
    pub ring: Ring,
    pub minors: Vec<MultiPoly>,
    /// Sign applied to each `det(delete row i)`; always `+1` here.
    pub signs: Vec<i8>,
}

pub fn maximal_minors(m: GenericMatrix, field: Field) -> Result<MinorFamily> {
    if m.rows != m.cols + 1 {
        return Err(AlgebraError::DimensionMismatch(format!(
            "maximal minor family needs (n+1)xn, got {}x{}",
            m.rows, m.cols
        )));
    }
    let sym = m.symbolic(field);
    let minors = (0..m.rows)
        .map(|i| determinant_laplace(&sym.delete_row(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MinorFamily {
        source: m,
        ring: sym.ring,
        signs: vec![1; minors.len()],
        minors,
    })
}

impl MinorFamily {
    /// The family of the generic `(n+1) × n` matrix.
    pub fn generic(n: usize, field: Field) -> MinorFamily {
        maximal_minors(GenericMatrix::new(n + 1, n), field).expect("square-plus-one shape")
    }

    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }

    /// `f_i`, 1-based as in `f_1, …, f_{n+1}`.
    pub fn minor(&self, i: usize) -> &MultiPoly {
        &self.minors[i - 1]
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::from_gens(self.ring, self.minors.clone())
    }

    /// Column multidegree of each minor (`None` if not column-homogeneous).
    pub fn multidegrees(&self) -> Vec<Option<MultiDegree>> {
        let g = self.source.grading();
        self.minors
            .iter()
            .map(|f| match g.multidegree(f) {
                Ok(Homogeneity::Homogeneous(d)) => Some(d),
                _ => None,
            })
            .collect()
    }

    pub fn with_field(&self, field: Field) -> Result<MinorFamily> {
        let ring = self.ring.with_field(field);
        Ok(MinorFamily {
            source: self.source,
            ring,
            minors: self
                .minors
                .iter()
                .map(|f| f.with_ring(ring))
                .collect::<Result<_>>()?,
            signs: self.signs.clone(),
        })
    }

    /// The family as an ideal input file.
    pub fn export(&self) -> String {
        io::export_polys(self.ring, &self.minors)
    }
}

/// Upper bound on strength from a cofactor expansion, with the products.
#[derive(Clone, Debug, PartialEq)]
pub struct StrengthBound {
    /// `None` when there is no decomposition (a linear form).
    pub bound: Option<usize>,
    /// Pairs `(x_{i,1}, cofactor)` summing to the minor.
    pub products: Vec<(MultiPoly, MultiPoly)>,
}

impl StrengthBound {
    pub fn reconstruct(&self, ring: Ring) -> MultiPoly {
        self.products
            .iter()
            .fold(MultiPoly::zero(ring), |acc, (a, b)| &acc + &(a * b))
    }
}

/// Group the terms of an `n × n` minor by their first-column variable; each
/// group is `x_{i,1}` times a form of degree `n − 1`, so the minor is a sum of
/// `n` products and has strength at most `n − 1`.
pub fn laplace_strength_bound(minor: &MultiPoly, n: usize) -> Result<StrengthBound> {
    let ring = minor.ring();
    let Some(rows) = (match ring.layout {
        crate::polycore::VarLayout::Matrix { rows, .. } => Some(rows),
        _ => None,
    }) else {
        return Err(AlgebraError::InvalidInput("minor must live in a matrix ring".into()));
    };
    if minor.total_degree() != Some(n as u32) || !minor.is_homogeneous() {
        return Err(AlgebraError::InvalidInput(format!("not a form of degree {n}")));
    }
    let mut products = Vec::new();
    for i in 1..=rows {
        let v = ring.entry_index(i, 1).expect("entry in range");
        let cof = minor.coeff_in_var(v, 1);
        if !cof.is_zero() {
            products.push((MultiPoly::var(ring, v), cof));
        }
    }
    let covered = products
        .iter()
        .fold(MultiPoly::zero(ring), |acc, (a, b)| &acc + &(a * b));
    if &covered != minor {
        return Err(AlgebraError::InvalidInput(
            "every term must contain exactly one first-column variable".into(),
        ));
    }
    let bound = if n <= 1 { None } else { Some(products.len() - 1) };
    Ok(StrengthBound { bound, products })
}

/// Codimension of the full maximal-minor ideal is 2.
pub fn hilbert_burch_codim_check(family: &MinorFamily) -> Result<bool> {
    Ok(codimension(&family.ideal())? == 2)
}

/// Three minors generate an ideal of codimension below 3, so they are not a
/// regular sequence.
pub fn not_regular_by_containment(subfamily: &[MultiPoly]) -> Result<bool> {
    if subfamily.len() != 3 {
        return Err(AlgebraError::InvalidInput(format!(
            "expected three minors, got {}",
            subfamily.len()
        )));
    }
    if subfamily[0] == subfamily[1] || subfamily[0] == subfamily[2] || subfamily[1] == subfamily[2] {
        return Err(AlgebraError::InvalidInput("minors must be distinct".into()));
    }
    let ring = subfamily[0].ring();
    Ok(codimension(&Ideal::new(ring, subfamily.to_vec())?)? < 3)
}
