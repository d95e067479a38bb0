//! Multivariate gcd by primitive pseudo-remainder sequences.
//!
//! The recursion views both inputs as univariate in the lowest-index variable
//! they share; coefficients live in the ring of the remaining variables and
//! are handled by the same routine. Results are monic under degrevlex.

use super::poly::MultiPoly;

/// Greatest common divisor, normalized to be monic; `gcd(f, 0) = monic(f)`.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    gcd_nonzero(f, g).monic()
}

fn gcd_nonzero(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let ring = f.ring();
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(ring);
    }
    let shared = f.support_mask() & g.support_mask();
    if shared == 0 {
        // Any nonconstant common factor would involve a shared variable.
        return MultiPoly::one(ring);
    }
    let v = shared.trailing_zeros() as usize;

    let cf = content(f, v);
    let cg = content(g, v);
    let c = gcd_nonzero(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree_in(v) == 0 {
            // b is a nonzero v-free polynomial and a, b are v-primitive.
            return c;
        }
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            let pp = primitive_part(&b, v);
            return &c * &pp;
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

/// Gcd of the coefficients of `f` viewed in `k[others][x_v]`.
pub fn content(f: &MultiPoly, v: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(f.ring());
    for k in (0..=f.degree_in(v)).rev() {
        let c = f.coeff_in_var(v, k);
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() {
            c.monic()
        } else {
            gcd_nonzero(&acc, &c).monic()
        };
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub fn primitive_part(f: &MultiPoly, v: usize) -> MultiPoly {
    if f.is_zero() {
        return f.clone();
    }
    f.div_exact(&content(f, v)).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `x_v`.
pub fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v);
    let lcb = b.coeff_in_var(v, db);
    let ring = a.ring();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coeff_in_var(v, dr);
        let mut e = vec![0u32; ring.nvars()];
        e[v] = dr - db;
        let shift = MultiPoly::monomial(
            ring,
            super::monomial::Monomial::from_exponents(e),
            ring.field.one(),
        );
        r = &(&lcb * &r) - &(&(&lcr * &shift) * b);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{parse_poly, Field, Ring};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, Ring::flat(3, Field::Rational)).unwrap()
    }

    #[test]
    fn common_variable() {
        assert_eq!(gcd(&p("x1*x2"), &p("x1*x3")), p("x1"));
    }

    #[test]
    fn zero_convention() {
        assert_eq!(gcd(&p("2*x1 + 4*x2"), &p("0")), p("x1 + 2*x2"));
        assert_eq!(gcd(&p("0"), &p("0")), p("0"));
    }

    #[test]
    fn coprime_inputs() {
        assert!(gcd(&p("x1^2 + x2^2"), &p("x1 + x3")).is_one());
        assert!(gcd(&p("x1"), &p("x2")).is_one());
    }

    #[test]
    fn nested_contents() {
        // (x2 + x3) * (x1 - x2)^2 and (x2 + x3) * x1 * x3
        let a = p("x2 + x3");
        let f = &a * &p("x1 - x2").pow(2);
        let g = &a * &p("x1*x3");
        assert_eq!(gcd(&f, &g), a);
    }

    #[test]
    fn prime_field_gcd() {
        let r = Ring::flat(2, Field::Prime(7));
        let f = parse_poly("x1^2 - x2^2", r).unwrap();
        let g = parse_poly("3*x1 + 3*x2", r).unwrap();
        assert_eq!(gcd(&f, &g), parse_poly("x1 + x2", r).unwrap());
    }
}
