//! Seeded random generation of coefficients and forms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polycore::{Coeff, Field, Monomial, MultiPoly, Ring};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform element of `F_p`, or an integer in `[-bound, bound]` over ℚ.
pub fn coeff<R: Rng>(field: Field, bound: i64, rng: &mut R) -> Coeff {
    match field {
        Field::Rational => Coeff::from_i64(field, rng.gen_range(-bound..=bound)),
        Field::Prime(p) => Coeff::from_i64(field, rng.gen_range(0..p as i64)),
    }
}

pub fn nonzero_coeff<R: Rng>(field: Field, bound: i64, rng: &mut R) -> Coeff {
    loop {
        let c = coeff(field, bound, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// Random nonzero homogeneous form of degree `d`; each monomial is kept with
/// probability `density`.
pub fn form<R: Rng>(ring: Ring, d: u32, density: f64, rng: &mut R) -> MultiPoly {
    let monos = monomials_of_degree(ring.nvars(), d);
    loop {
        let mut terms = Vec::new();
        for m in &monos {
            if rng.gen_bool(density) {
                terms.push((m.clone(), coeff(ring.field, 3, rng)));
            }
        }
        let f = MultiPoly::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random polynomial with terms of every degree up to `max_degree`.
pub fn poly<R: Rng>(ring: Ring, max_degree: u32, density: f64, rng: &mut R) -> MultiPoly {
    let mut terms = Vec::new();
    for m in (0..=max_degree).flat_map(|d| monomials_of_degree(ring.nvars(), d)) {
        if rng.gen_bool(density) {
            terms.push((m, coeff(ring.field, 3, rng)));
        }
    }
    MultiPoly::from_terms(ring, terms)
}

pub fn linear_form<R: Rng>(ring: Ring, rng: &mut R) -> MultiPoly {
    form(ring, 1, 0.8, rng)
}
