//! Gröbner bases and the ideal-theoretic queries built on them.

mod buchberger;
pub mod io;
mod regseq;

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
pub use crate::polycore::MonomialOrder;
use crate::polycore::{Monomial, MultiPoly, Ring};
use buchberger::{reduce, reduced_basis, s_pairs_reduce_to_zero, sort_terms, to_poly, Terms};
pub use regseq::{
    is_regular_sequence_codim, is_regular_sequence_direct, regular_pair_gcd_check, PairReport,
};

/// Ideal given by generators. Zero generators are dropped, so the zero ideal
/// has an empty generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(ring: Ring, generators: Vec<MultiPoly>) -> Result<Ideal> {
        for g in &generators {
            ring.check_compatible(&g.ring())?;
        }
        Ok(Ideal {
            ring,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Panicking variant of [`Ideal::new`] for generators known to share `ring`.
    pub fn from_gens(ring: Ring, generators: Vec<MultiPoly>) -> Ideal {
        Ideal::new(ring, generators).expect("generators in the ideal's ring")
    }

    pub fn zero(ring: Ring) -> Ideal {
        Ideal {
            ring,
            generators: Vec::new(),
        }
    }

    pub fn unit(ring: Ring) -> Ideal {
        Ideal {
            ring,
            generators: vec![MultiPoly::one(ring)],
        }
    }

    /// Ideal generated by a set of variables.
    pub fn coordinate(ring: Ring, vars: &[usize]) -> Ideal {
        Ideal {
            ring,
            generators: vars.iter().map(|&v| MultiPoly::var(ring, v)).collect(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(MultiPoly::is_homogeneous)
    }

    pub fn groebner(&self, order: MonomialOrder) -> GroebnerBasis {
        buchberger(self, order)
    }

    /// Membership via the reduced degrevlex basis.
    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.groebner(MonomialOrder::DegRevLex).contains(f)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        let gb = self.groebner(MonomialOrder::DegRevLex);
        other.generators.iter().all(|g| gb.contains(g))
    }

    /// Equality by mutual generator membership.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Reduced Gröbner basis for a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    sorted: Vec<Terms>,
    elements: Vec<MultiPoly>,
}

/// Compute the reduced Gröbner basis of `ideal` under `order`.
///
/// The unit ideal yields `{1}` and the zero ideal an empty basis.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    let sorted = reduced_basis(order, &ideal.generators);
    let elements = sorted
        .iter()
        .map(|t| to_poly(ideal.ring, t.clone()))
        .collect();
    GroebnerBasis {
        ring: ideal.ring,
        order,
        sorted,
        elements,
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Elements, monic under the basis order, ascending by leading monomial.
    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0][0].0.is_one()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.sorted.iter().map(|t| &t[0].0).collect()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal {
            ring: self.ring,
            generators: self.elements.clone(),
        }
    }

    /// Remainder of `f` modulo the basis; no term is divisible by a leading monomial.
    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        let basis = &self.sorted;
        let r = reduce(
            self.order,
            sort_terms(self.order, f),
            || Box::new(basis.iter()),
            true,
        );
        to_poly(self.ring, r)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Post-hoc certificate: every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        s_pairs_reduce_to_zero(self.order, &self.sorted)
    }

    /// No term of any element is divisible by another element's leading monomial,
    /// and every element is monic.
    pub fn is_reduced(&self) -> bool {
        self.sorted.iter().enumerate().all(|(i, g)| {
            g[0].1.is_one()
                && self.sorted.iter().enumerate().all(|(j, h)| {
                    i == j || g.iter().all(|(m, _)| !h[0].0.divides(m))
                })
        })
    }

    /// Krull dimension of `R / I`: the largest set of variables containing the
    /// support of no leading monomial. The unit ideal has dimension −1.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        assert!(n < 64, "dimension search supports at most 63 variables");
        let supports: Vec<u64> = self.sorted.iter().map(|t| t[0].0.support_mask()).collect();
        max_independent_set(n, &supports) as i64
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.elements == other.elements
    }
}

/// Largest `S ⊆ {0..n}` such that no mask in `supports` is contained in `S`.
fn max_independent_set(n: usize, supports: &[u64]) -> u32 {
    fn search(var: usize, n: usize, chosen: u64, supports: &[u64], best: &mut u32) {
        let size = chosen.count_ones();
        if size + (n - var) as u32 <= *best {
            return;
        }
        if var == n {
            *best = size;
            return;
        }
        let with = chosen | (1u64 << var);
        if supports.iter().all(|&s| s & !with != 0) {
            search(var + 1, n, with, supports, best);
        }
        search(var + 1, n, chosen, supports, best);
    }
    let mut best = 0;
    if supports.iter().all(|&s| s != 0) {
        search(0, n, 0, supports, &mut best);
    }
    best
}

/// Dimension and codimension of a homogeneous ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdealInvariants {
    pub dimension: i64,
    pub codimension: i64,
}

/// Krull dimension of `R / I` via a degrevlex basis; −1 for the unit ideal.
pub fn dimension(ideal: &Ideal) -> i64 {
    ideal.groebner(MonomialOrder::DegRevLex).dimension()
}

/// Codimension `n − dim` of a homogeneous ideal.
pub fn codimension(ideal: &Ideal) -> Result<i64> {
    Ok(invariants(ideal, MonomialOrder::DegRevLex)?.codimension)
}

/// Dimension and codimension under a chosen order (the values do not depend on it).
pub fn invariants(ideal: &Ideal, order: MonomialOrder) -> Result<IdealInvariants> {
    if !ideal.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    let dim = ideal.groebner(order).dimension();
    Ok(IdealInvariants {
        dimension: dim,
        codimension: ideal.ring.nvars() as i64 - dim,
    })
}

pub fn normal_form(f: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    gb.normal_form(f)
}

/// `I ∩ J`, via elimination of `t` from `t·I + (1 − t)·J`.
pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.ring.check_compatible(&j.ring)?;
    let ring = i.ring;
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let ext = Ring::flat(ring.nvars() + 1, ring.field);
    let t = MultiPoly::var(ext, 0);
    let one_minus_t = &MultiPoly::one(ext) - &t;
    let mut gens = Vec::new();
    for f in &i.generators {
        gens.push(&t * &f.shifted(ext, 1));
    }
    for g in &j.generators {
        gens.push(&one_minus_t * &g.shifted(ext, 1));
    }
    let gb = buchberger(&Ideal::from_gens(ext, gens), MonomialOrder::Elimination(1));
    let eliminated: Vec<MultiPoly> = gb
        .elements()
        .iter()
        .filter(|g| !g.contains_var(0))
        .map(|g| g.unshifted(ring, 1))
        .collect();
    let result = Ideal::from_gens(ring, eliminated);
    Ok(result.groebner(MonomialOrder::DegRevLex).to_ideal())
}

/// `(I : f) = { g : g·f ∈ I }`, computed as `(I ∩ ⟨f⟩) / f`.
pub fn ideal_quotient(i: &Ideal, f: &MultiPoly) -> Result<Ideal> {
    i.ring.check_compatible(&f.ring())?;
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let inter = ideal_intersection(i, &Ideal::from_gens(i.ring, vec![f.clone()]))?;
    let gens = inter
        .generators
        .iter()
        .map(|g| g.div_exact(f))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::from_gens(i.ring, gens)
        .groebner(MonomialOrder::DegRevLex)
        .to_ideal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, Field};

    fn ring(n: usize) -> Ring {
        Ring::flat(n, Field::Rational)
    }

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        let r = ring(n);
        Ideal::from_gens(r, gens.iter().map(|g| parse_poly(g, r).unwrap()).collect())
    }

    #[test]
    fn already_reduced_basis() {
        let gb = ideal(2, &["x1", "x2"]).groebner(MonomialOrder::DegRevLex);
        let r = ring(2);
        assert_eq!(gb.elements(), &[MultiPoly::var(r, 1), MultiPoly::var(r, 0)]);
        assert!(gb.is_reduced());
        assert!(gb.verify_s_pairs());
    }

    #[test]
    fn lex_eliminant_on_twisted_cubic() {
        let i = ideal(3, &["x1^2 - x2", "x1^3 - x3"]);
        let gb = i.groebner(MonomialOrder::Lex);
        let elim = parse_poly("x2^3 - x3^2", ring(3)).unwrap();
        assert!(gb.elements().contains(&elim), "{:?}", gb.elements());
        // every basis element vanishes on (t, t^2, t^3)
        let t = MultiPoly::var(ring(1), 0);
        let images = [t.clone(), t.pow(2), t.pow(3)];
        assert!(gb.elements().iter().all(|g| g.substitute(&images).is_zero()));
        assert!(gb.verify_s_pairs());
    }

    #[test]
    fn unit_ideal() {
        let gb = ideal(1, &["x1", "x1 + 1"]).groebner(MonomialOrder::DegRevLex);
        assert!(gb.is_unit());
        assert_eq!(gb.dimension(), -1);
    }

    #[test]
    fn normal_forms() {
        let r = Ring::matrix(4, 3, Field::Rational);
        let i = Ideal::from_gens(r, vec![MultiPoly::entry(r, 1, 1), MultiPoly::entry(r, 1, 2)]);
        let gb = i.groebner(MonomialOrder::DegRevLex);
        let f = parse_poly("x1_1*x3_2*x4_3", r).unwrap();
        assert!(gb.normal_form(&f).is_zero());
        let z = Ideal::zero(r).groebner(MonomialOrder::DegRevLex);
        assert_eq!(z.normal_form(&f), f);
    }

    #[test]
    fn codimensions() {
        assert_eq!(codimension(&ideal(3, &["x1", "x2"])).unwrap(), 2);
        assert_eq!(codimension(&ideal(3, &["x1*x2", "x1*x3"])).unwrap(), 1);
        assert_eq!(codimension(&Ideal::zero(ring(3))).unwrap(), 0);
        assert_eq!(
            codimension(&ideal(2, &["x1 + 1"])),
            Err(AlgebraError::NotHomogeneous)
        );
    }

    #[test]
    fn intersections() {
        let got = ideal_intersection(&ideal(2, &["x1"]), &ideal(2, &["x2"])).unwrap();
        assert!(got.equals(&ideal(2, &["x1*x2"])));
        let got = ideal_intersection(&ideal(3, &["x3"]), &ideal(3, &["x1", "x2"])).unwrap();
        assert!(got.equals(&ideal(3, &["x1*x3", "x2*x3"])));
        let i = ideal(3, &["x1^2 - x2*x3", "x3^2"]);
        let got = ideal_intersection(&i, &Ideal::unit(ring(3))).unwrap();
        assert!(got.equals(&i));
    }

    #[test]
    fn quotients() {
        let r = ring(2);
        let y = MultiPoly::var(r, 1);
        let got = ideal_quotient(&ideal(2, &["x1*x2"]), &y).unwrap();
        assert!(got.equals(&ideal(2, &["x1"])));
        let got = ideal_quotient(&ideal(2, &["x1"]), &y).unwrap();
        assert!(got.equals(&ideal(2, &["x1"])));
        assert_eq!(
            ideal_quotient(&ideal(2, &["x1"]), &MultiPoly::zero(r)),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn independent_sets() {
        // <x1*x2, x1*x3>: {x2, x3} is independent
        assert_eq!(max_independent_set(3, &[0b011, 0b101]), 2);
        assert_eq!(max_independent_set(3, &[]), 3);
        assert_eq!(max_independent_set(3, &[0]), 0);
    }
}
