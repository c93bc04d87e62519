//! Buchberger's algorithm and the ideal toolbox built on it.

mod ideal;

pub use ideal::Ideal;

use std::sync::Arc;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{reduce_terms, sub_scaled, Polynomial, Term};
use crate::ring::PolyRing;

/// Upper bound on the number of ring variables; dimension is computed by
/// exhaustive search over variable subsets.
pub const MAX_DIM_VARS: usize = 8;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    field: &'a Field,
    order: MonomialOrder,
    polys: Vec<Vec<Term>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    fn lt(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn reduce(&self, f: Vec<Term>) -> Vec<Term> {
        let basis: Vec<&[Term]> =
            self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p.as_slice()).collect();
        reduce_terms(self.field, self.order, f, &basis)
    }

    fn make_monic(&self, mut f: Vec<Term>) -> Vec<Term> {
        let inv = self.field.inv(&f[0].1);
        for t in f.iter_mut() {
            t.1 = self.field.mul(&t.1, &inv);
        }
        f
    }

    /// Gebauer-Moeller installation of a new basis element.
    fn update(&mut self, h: Vec<Term>) {
        let hidx = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lth = self.lt(hidx).clone();

        let mut cands: Vec<(usize, Monomial, bool)> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| (g, lth.lcm(self.lt(g)), lth.is_coprime(self.lt(g))))
            .collect();

        // Chain criterion among the new pairs themselves.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, l, coprime)) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }
        // Product criterion.
        let new_pairs: Vec<Pair> =
            kept.into_iter().filter(|(_, _, coprime)| !coprime).map(|(g, lcm, _)| Pair { i: g, j: hidx, lcm }).collect();

        // Chain criterion on old pairs.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !lth.divides(&p.lcm)
                || polys[p.i][0].0.lcm(&lth) == p.lcm
                || polys[p.j][0].0.lcm(&lth) == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..hidx {
            if self.active[g] && lth.divides(&self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let mf = f[0].0.divide_into(&p.lcm).expect("lcm divisible");
        let mg = g[0].0.divide_into(&p.lcm).expect("lcm divisible");
        let scaled: Vec<Term> = f.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
        sub_scaled(self.field, self.order, &scaled, &self.field.one(), &mg, g)
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
///
/// Elements are monic and sorted by leading monomial, descending, so the
/// result is a canonical form of the ideal: permuting or rescaling the
/// generators never changes it. The zero ideal has the empty basis.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let field = ring.field();
    let mut eng = Engine { field, order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };

    let mut inputs: Vec<Vec<Term>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.terms_in(order)).collect();
    // Cheap-first insertion keeps the intermediate bases small.
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then_with(|| a.len().cmp(&b.len())));
    for f in inputs {
        let r = eng.reduce(f);
        if !r.is_empty() {
            let r = eng.make_monic(r);
            if r[0].0.is_one() {
                return vec![Polynomial::one(ring)];
            }
            eng.update(r);
        }
    }

    while let Some(pair) = eng.select_pair() {
        let s = eng.spoly(&pair);
        let r = eng.reduce(s);
        if !r.is_empty() {
            let r = eng.make_monic(r);
            if r[0].0.is_one() {
                return vec![Polynomial::one(ring)];
            }
            eng.update(r);
        }
    }

    // Minimal basis, then inter-reduce.
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    let idx: Vec<usize> = (0..eng.polys.len()).filter(|&i| eng.active[i]).collect();
    for &i in &idx {
        let redundant = idx.iter().any(|&j| j != i && eng.lt(j).divides(eng.lt(i)) && (eng.lt(j) != eng.lt(i) || j < i));
        if !redundant {
            minimal.push(eng.polys[i].clone());
        }
    }
    let mut reduced: Vec<Vec<Term>> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&[Term]> =
            minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.as_slice()).collect();
        let head = minimal[k][0].clone();
        let tail = reduce_terms(field, order, minimal[k][1..].to_vec(), &others);
        let mut p = Vec::with_capacity(tail.len() + 1);
        p.push(head);
        p.extend(tail);
        reduced.push(p);
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    reduced.into_iter().map(|t| Polynomial::from_sorted(ring, t, order)).collect()
}

/// Leading monomials of a reduced basis under `order`.
pub(crate) fn leading_monomials(basis: &[Polynomial], order: MonomialOrder) -> Vec<Monomial> {
    basis.iter().filter_map(|g| g.leading_term(order).map(|t| t.0.clone())).collect()
}

/// Krull dimension of `k[x]/J` from the leading monomials of a Groebner basis
/// of `J`: the largest variable set containing no leading-monomial support.
pub(crate) fn dim_from_leading(lms: &[Monomial], nvars: usize) -> i64 {
    if lms.iter().any(|m| m.is_one()) {
        return -1;
    }
    debug_assert!(nvars <= MAX_DIM_VARS + 2);
    let masks: Vec<u32> = lms.iter().map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for s in 0u32..(1u32 << nvars) {
        let size = s.count_ones() as i64;
        if size > best && masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn polys(ring: &Arc<PolyRing>, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| parse_poly(t, ring).unwrap()).collect()
    }

    #[test]
    fn monomial_pair_is_already_a_basis() {
        let r = PolyRing::default_field(&["X", "Y", "Z"]).unwrap();
        let gb = buchberger(&r, &polys(&r, &["XY", "XZ"]), MonomialOrder::GrevLex);
        assert_eq!(gb, polys(&r, &["XY", "XZ"]));
    }

    #[test]
    fn linear_system() {
        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let gb = buchberger(&r, &polys(&r, &["X+Y", "X-Y"]), MonomialOrder::GrevLex);
        assert_eq!(gb, polys(&r, &["X", "Y"]));
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let r = PolyRing::default_field(&["X"]).unwrap();
        assert!(buchberger(&r, &polys(&r, &["0"]), MonomialOrder::GrevLex).is_empty());
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = PolyRing::new(&["T", "X", "Y", "Z"], Field::Rational).unwrap();
        let gens = polys(&r, &["X - T", "Y - T^2", "Z - T^3"]);
        let gb = buchberger(&r, &gens, MonomialOrder::Elimination(1));
        let no_t: Vec<String> =
            gb.iter().filter(|g| g.terms().iter().all(|(m, _)| m.exp(0) == 0)).map(|g| g.to_string()).collect();
        // Twisted cubic: X^2 - Y, XY - Z, Y^2 - XZ.
        assert_eq!(no_t.len(), 3, "{no_t:?}");
        for s in &gens {
            let nf = crate::poly::normal_form(s, &gb, MonomialOrder::Elimination(1)).unwrap();
            assert!(nf.is_zero());
        }
    }

    #[test]
    fn dimension_from_leading_terms() {
        let lm = |e: &[u16]| Monomial::new(e);
        assert_eq!(dim_from_leading(&[lm(&[1, 1, 0]), lm(&[1, 0, 1])], 3), 2);
        assert_eq!(dim_from_leading(&[], 3), 3);
        assert_eq!(dim_from_leading(&[lm(&[1, 0, 0]), lm(&[0, 1, 0]), lm(&[0, 0, 1])], 3), 0);
        assert_eq!(dim_from_leading(&[lm(&[0, 0, 0])], 3), -1);
    }
}
