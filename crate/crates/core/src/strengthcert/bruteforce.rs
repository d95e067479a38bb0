//! Exhaustive strength of small quadrics over `F_p` or `F_{p²}`.
//!
//! A quadric has strength `≤ s` iff it lies in an ideal `(ℓ_0, …, ℓ_s)` of
//! linear forms, i.e. `q = Σ ℓ_i m_i`. We enumerate every subspace of linear
//! forms of dimension `s + 1` (as reduced echelon bases) and solve the linear
//! system for the cofactors `m_i`.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::polycore::{Field, MultiPoly};

/// Search field for [`strength_bruteforce_small`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchField {
    /// `F_p` itself.
    Base,
    /// The quadratic extension `F_{p²}`.
    Quadratic,
}

/// `F_p` or `F_{p²} = F_p[w]/(w² − r)` by lookup tables; element `a + b·w`
/// is encoded as `a + p·b`.
#[derive(Clone, Debug)]
pub struct SmallField {
    p: usize,
    q: usize,
    nonresidue: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(p: u32, search: SearchField) -> Result<SmallField> {
        let p = p as usize;
        if !(3..=13).contains(&p) || !crate::polycore::Field::prime(p as u32).is_ok() {
            return Err(AlgebraError::Unsupported(format!("small-field search needs an odd prime ≤ 13, got {p}")));
        }
        let (q, nonresidue) = match search {
            SearchField::Base => (p, 0),
            SearchField::Quadratic => {
                let r = (2..p)
                    .find(|&r| (1..p).all(|x| x * x % p != r))
                    .expect("odd prime has a nonresidue");
                (p * p, r)
            }
        };
        let split = |x: usize| (x % p, x / p);
        let join = |a: usize, b: usize| (a % p + p * (b % p)) as u8;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = split(x);
                let (c, d) = split(y);
                add[x * q + y] = join(a + c, b + d);
                mul[x * q + y] = join(a * c + b * d * nonresidue, a * d + b * c);
            }
        }
        let neg = (0..q)
            .map(|x| {
                let (a, b) = split(x);
                join(p - a, p - b)
            })
            .collect();
        let mut inv = vec![0u8; q];
        for x in 1..q {
            inv[x] = (1..q).find(|&y| mul[x * q + y] == 1).expect("field") as u8;
        }
        Ok(SmallField { p, q, nonresidue, add, mul, neg, inv })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, x: u8, y: u8) -> u8 {
        self.add[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.mul[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: u8, y: u8) -> u8 {
        self.add(x, self.neg[y as usize])
    }

    pub fn inv(&self, x: u8) -> u8 {
        self.inv[x as usize]
    }

    pub fn label(&self) -> String {
        format!("F_{}", self.q)
    }

    pub fn format(&self, x: u8) -> String {
        let (a, b) = (x as usize % self.p, x as usize / self.p);
        match (a, b) {
            (a, 0) => a.to_string(),
            (0, b) => format!("{b}w"),
            (a, b) => format!("{a}+{b}w"),
        }
    }

    /// `w² = r` for the quadratic extension.
    pub fn nonresidue(&self) -> usize {
        self.nonresidue
    }
}

/// Upper-triangular coefficient vector of a quadric in `n` variables:
/// index of `x_a x_b` with `a ≤ b`.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * n - a * (a + 1) / 2 + b
}

fn quadric_coeffs(f: &MultiPoly, p: u32) -> Result<Vec<u8>> {
    let n = f.nvars();
    let mut out = vec![0u8; n * (n + 1) / 2];
    for (m, c) in f.terms() {
        if m.degree() != 2 {
            return Err(AlgebraError::NotQuadratic(format!("term of degree {}", m.degree())));
        }
        let vars: Vec<usize> = m.support().collect();
        let (a, b) = match vars.as_slice() {
            [a] => (*a, *a),
            [a, b] => (*a, *b),
            _ => unreachable!("degree two"),
        };
        out[pair_index(n, a, b)] = c.residue().expect("prime field") as u8 % p as u8;
    }
    Ok(out)
}

/// A decomposition `q = Σ ℓ_i m_i` with coefficient vectors over the search field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub field: String,
    pub products: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteStrength {
    /// `None` when no decomposition with at most `s_max + 1` products exists.
    pub value: Option<i64>,
    pub witness: Option<Decomposition>,
}

/// Least `s ≤ s_max` such that `f` is a sum of `s + 1` products of linear
/// forms over the search field; `−1` for the zero form.
pub fn strength_bruteforce_small(f: &MultiPoly, s_max: i64, search: SearchField) -> Result<BruteStrength> {
    let p = match f.field() {
        Field::Prime(p) => p,
        Field::Rational => return Err(AlgebraError::RequiresPrimeField),
    };
    if f.nvars() > 4 {
        return Err(AlgebraError::Unsupported(format!("{} variables (at most 4)", f.nvars())));
    }
    let k = SmallField::new(p, search)?;
    let target = quadric_coeffs(f, p)?;
    Ok(search_strength(&k, f.nvars(), &target, s_max))
}

/// Core search on a coefficient vector (see [`pair_index`]) with entries in `k`.
pub fn search_strength(k: &SmallField, n: usize, target: &[u8], s_max: i64) -> BruteStrength {
    if target.iter().all(|&c| c == 0) {
        return BruteStrength {
            value: Some(-1),
            witness: Some(Decomposition {
                field: k.label(),
                products: vec![],
            }),
        };
    }
    for s in 0..=s_max {
        let dim = (s + 1) as usize;
        if dim > n {
            break;
        }
        let mut found = None;
        for_each_subspace(k, n, dim, &mut |basis| match solve_cofactors(k, n, basis, target) {
            Some(m) => {
                found = Some((basis.to_vec(), m));
                true
            }
            None => false,
        });
        if let Some((ls, ms)) = found {
            let fmt = |v: &Vec<u8>| v.iter().map(|&x| k.format(x)).collect();
            let witness = Decomposition {
                field: k.label(),
                products: ls.iter().zip(&ms).map(|(l, m)| (fmt(l), fmt(m))).collect(),
            };
            debug_assert!(expand(k, n, &ls, &ms) == target);
            return BruteStrength {
                value: Some(s),
                witness: Some(witness),
            };
        }
    }
    BruteStrength {
        value: None,
        witness: None,
    }
}

/// Coefficients of `Σ ℓ_i m_i`.
pub fn expand(k: &SmallField, n: usize, ls: &[Vec<u8>], ms: &[Vec<u8>]) -> Vec<u8> {
    let mut out = vec![0u8; n * (n + 1) / 2];
    for (l, m) in ls.iter().zip(ms) {
        for a in 0..n {
            for b in 0..n {
                let idx = pair_index(n, a.min(b), a.max(b));
                out[idx] = k.add(out[idx], k.mul(l[a], m[b]));
            }
        }
    }
    out
}

/// Visit reduced echelon bases of every `dim`-subspace of `k^n`; stop when
/// `visit` returns true.
fn for_each_subspace(k: &SmallField, n: usize, dim: usize, visit: &mut dyn FnMut(&[Vec<u8>]) -> bool) -> bool {
    let mut pivots = Vec::with_capacity(dim);
    choose_pivots(k, n, dim, 0, &mut pivots, visit)
}

fn choose_pivots(
    k: &SmallField,
    n: usize,
    dim: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[Vec<u8>]) -> bool,
) -> bool {
    if pivots.len() == dim {
        // free slots: (row r, column c) with c > pivots[r], c not a pivot
        let slots: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| ((pivots[r] + 1)..n).map(move |c| (r, c)))
            .filter(|(_, c)| !pivots.contains(c))
            .collect();
        let mut basis: Vec<Vec<u8>> = (0..dim)
            .map(|r| {
                let mut v = vec![0u8; n];
                v[pivots[r]] = 1;
                v
            })
            .collect();
        let q = k.size();
        let total = q.pow(slots.len() as u32);
        for code in 0..total {
            let mut rest = code;
            for &(r, c) in &slots {
                basis[r][c] = (rest % q) as u8;
                rest /= q;
            }
            if visit(&basis) {
                return true;
            }
        }
        return false;
    }
    for c in start..n {
        pivots.push(c);
        if choose_pivots(k, n, dim, c + 1, pivots, visit) {
            return true;
        }
        pivots.pop();
    }
    false
}

/// Solve `Σ ℓ_i m_i = target` for the `m_i`, by Gaussian elimination.
fn solve_cofactors(k: &SmallField, n: usize, ls: &[Vec<u8>], target: &[u8]) -> Option<Vec<Vec<u8>>> {
    let unknowns = ls.len() * n;
    let eqs = n * (n + 1) / 2;
    // augmented matrix, one row per monomial x_a x_b (a ≤ b)
    let mut rows = vec![vec![0u8; unknowns + 1]; eqs];
    for (i, l) in ls.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                // ℓ_i[a] · m_i[b] contributes to x_a x_b
                let idx = pair_index(n, a.min(b), a.max(b));
                let col = i * n + b;
                rows[idx][col] = k.add(rows[idx][col], l[a]);
            }
        }
    }
    for (r, &t) in target.iter().enumerate() {
        rows[r][unknowns] = t;
    }
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(pr) = (r..eqs).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = k.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for i in 0..eqs {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..=unknowns {
                    let v = k.mul(f, rows[r][j]);
                    rows[i][j] = k.sub(rows[i][j], v);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == eqs {
            break;
        }
    }
    if rows[r..].iter().any(|row| row[unknowns] != 0) {
        return None;
    }
    let mut sol = vec![0u8; unknowns];
    for (i, &c) in pivot_cols.iter().enumerate() {
        sol[c] = rows[i][unknowns];
    }
    Some(sol.chunks(n).map(|c| c.to_vec()).collect())
}
