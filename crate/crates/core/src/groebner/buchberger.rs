//! Buchberger's algorithm with Gebauer–Möller pair elimination and sugar
//! pair selection.

use std::cmp::Ordering;

use crate::polycore::{Coeff, Monomial, MonomialOrder, MultiPoly, Ring};

/// Terms sorted descending under a fixed order.
pub(crate) type Terms = Vec<(Monomial, Coeff)>;

pub(crate) fn sort_terms(order: MonomialOrder, f: &MultiPoly) -> Terms {
    let mut t = f.terms().to_vec();
    if order != MonomialOrder::DegRevLex {
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    }
    t
}

pub(crate) fn to_poly(ring: Ring, terms: Terms) -> MultiPoly {
    MultiPoly::from_terms(ring, terms)
}

/// `a - coef * mult * g`, all descending under `order`.
fn sub_scaled(
    order: MonomialOrder,
    a: &[(Monomial, Coeff)],
    g: &[(Monomial, Coeff)],
    mult: &Monomial,
    coef: &Coeff,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gj: Option<(Monomial, Coeff)> = g.first().map(|(m, c)| (m.mul(mult), c * coef));
    while i < a.len() {
        let Some((gm, gc)) = gj.as_ref() else { break };
        match order.cmp(&a[i].0, gm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.clone(), -gc));
                j += 1;
                gj = g.get(j).map(|(m, c)| (m.mul(mult), c * coef));
            }
            Ordering::Equal => {
                let c = &a[i].1 - gc;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|(m, c)| (m.mul(mult), c * coef));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while let Some((gm, gc)) = gj {
        out.push((gm, -&gc));
        j += 1;
        gj = g.get(j).map(|(m, c)| (m.mul(mult), c * coef));
    }
    out
}

/// Remainder of `f` on division by `basis` (every term reduced when `full`).
pub(crate) fn reduce<'a, I>(order: MonomialOrder, f: Terms, basis: I, full: bool) -> Terms
where
    I: Fn() -> Box<dyn Iterator<Item = &'a Terms> + 'a>,
{
    let mut rem = f;
    let mut start = 0;
    let mut result: Terms = Vec::new();
    while start < rem.len() {
        let (m, c) = &rem[start];
        let divisor = basis().find(|g| g[0].0.divides(m));
        match divisor {
            Some(g) => {
                let mult = m.div(&g[0].0).expect("divisible");
                let coef = c * &g[0].1.inv().expect("nonzero leading coefficient");
                rem = sub_scaled(order, &rem[start..], g, &mult, &coef);
                start = 0;
            }
            None => {
                if !full {
                    result.extend_from_slice(&rem[start..]);
                    return result;
                }
                result.push(rem[start].clone());
                start += 1;
            }
        }
    }
    result
}

fn monic(mut t: Terms) -> Terms {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.inv().expect("nonzero");
            for (_, x) in t.iter_mut() {
                *x = &*x * &inv;
            }
        }
    }
    t
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State {
    order: MonomialOrder,
    polys: Vec<Terms>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lt(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.lt(i).lcm(self.lt(j));
        let si = self.sugar[i] + lcm.degree() - self.lt(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lt(j).degree();
        Pair {
            i,
            j,
            lcm,
            sugar: si.max(sj),
        }
    }

    /// Gebauer–Möller installation of element `h`.
    fn update(&mut self, h: usize) {
        let lt_h = self.lt(h).clone();
        let mut cands: Vec<Pair> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| self.make_pair(g, h))
            .collect();

        // Chain criterion among the new pairs.
        let mut keep: Vec<Pair> = Vec::new();
        while let Some(p) = cands.pop() {
            let coprime = self.lt(p.i).is_coprime(&lt_h);
            let dominated = cands.iter().chain(keep.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                keep.push(p);
            }
        }
        // Product criterion.
        keep.retain(|p| !self.lt(p.i).is_coprime(&lt_h));

        // Chain criterion for old pairs.
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                if !lt_h.divides(&p.lcm) {
                    return true;
                }
                let l1 = self.lt(p.i).lcm(&lt_h);
                let l2 = self.lt(p.j).lcm(&lt_h);
                l1 == p.lcm || l2 == p.lcm
            })
            .collect();
        self.pairs.extend(keep);

        for g in 0..h {
            if self.active[g] && lt_h.divides(self.lt(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Terms {
        let fi = &self.polys[p.i];
        let fj = &self.polys[p.j];
        let mi = p.lcm.div(&fi[0].0).expect("lcm");
        let mj = p.lcm.div(&fj[0].0).expect("lcm");
        let one = fi[0].1.field().one();
        let a: Terms = fi.iter().map(|(m, c)| (m.mul(&mi), c.clone())).collect();
        sub_scaled(self.order, &a, fj, &mj, &one)
    }

    fn reduce_active(&self, f: Terms, full: bool) -> Terms {
        let polys = &self.polys;
        let active = &self.active;
        reduce(
            self.order,
            f,
            || {
                Box::new(
                    polys
                        .iter()
                        .zip(active.iter())
                        .filter(|(_, a)| **a)
                        .map(|(p, _)| p),
                )
            },
            full,
        )
    }
}

/// Reduced Gröbner basis (monic, sorted by ascending leading monomial) of the
/// ideal generated by `gens`, in the term representation of `order`.
pub(crate) fn reduced_basis(order: MonomialOrder, gens: &[MultiPoly]) -> Vec<Terms> {
    let mut st = State {
        order,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs: Vec<Terms> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| sort_terms(order, g))
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for f in inputs {
        let sugar = f.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let h = st.reduce_active(f, true);
        if h.is_empty() {
            continue;
        }
        let h = monic(h);
        if h[0].0.is_one() {
            return vec![h];
        }
        st.polys.push(h);
        st.sugar.push(sugar);
        st.active.push(false);
        let k = st.polys.len() - 1;
        st.update(k);
    }
    while let Some(p) = st.select() {
        let s = st.spoly(&p);
        let h = st.reduce_active(s, true);
        if h.is_empty() {
            continue;
        }
        let h = monic(h);
        if h[0].0.is_one() {
            return vec![h];
        }
        st.polys.push(h);
        st.sugar.push(p.sugar);
        st.active.push(false);
        let k = st.polys.len() - 1;
        st.update(k);
    }

    // Interreduce the (already minimal) active set.
    let minimal: Vec<Terms> = st
        .polys
        .iter()
        .zip(&st.active)
        .filter(|(_, a)| **a)
        .map(|(p, _)| p.clone())
        .collect();
    let mut out: Vec<Terms> = (0..minimal.len())
        .map(|k| {
            let head = minimal[k][0].clone();
            let tail = minimal[k][1..].to_vec();
            let others = || {
                Box::new(
                    minimal
                        .iter()
                        .enumerate()
                        .filter(move |(i, _)| *i != k)
                        .map(|(_, p)| p),
                ) as Box<dyn Iterator<Item = &Terms>>
            };
            let mut r = vec![head];
            r.extend(reduce(order, tail, others, true));
            monic(r)
        })
        .collect();
    out.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    out
}

/// Does every S-polynomial of `basis` reduce to zero modulo `basis`?
pub(crate) fn s_pairs_reduce_to_zero(order: MonomialOrder, basis: &[Terms]) -> bool {
    let all = || Box::new(basis.iter()) as Box<dyn Iterator<Item = &Terms>>;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (fi, fj) = (&basis[i], &basis[j]);
            let lcm = fi[0].0.lcm(&fj[0].0);
            let mi = lcm.div(&fi[0].0).expect("lcm");
            let mj = lcm.div(&fj[0].0).expect("lcm");
            let ci = fi[0].1.inv().expect("nonzero");
            let cj = fj[0].1.inv().expect("nonzero");
            let a: Terms = fi.iter().map(|(m, c)| (m.mul(&mi), c * &ci)).collect();
            let s = sub_scaled(order, &a, fj, &mj, &cj);
            if !reduce(order, s, all, true).is_empty() {
                return false;
            }
        }
    }
    true
}
