use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_poly;
use crate::poly::{normal_form, Polynomial};
use crate::ring::{same_ring, PolyRing};

use super::{buchberger, dim_from_leading, leading_monomials};

#[derive(Default)]
struct GbCache {
    bases: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
}

/// An ideal of a [`PolyRing`], given by generators.
///
/// Reduced Groebner bases are memoized per monomial order. The memo is
/// shared between clones; a concurrent fill computes the same canonical
/// basis, so whichever value lands first is the value everyone sees.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    cache: Arc<GbCache>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, cache: Arc::default() })
    }

    /// Parses each string as a generator.
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, gens: &[S]) -> Result<Ideal> {
        let gens = gens.iter().map(|s| parse_poly(s.as_ref(), ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal { ring: ring.clone(), gens: Vec::new(), cache: Arc::default() }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], cache: Arc::default() }
    }

    /// The irrelevant ideal `m = (x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<PolyRing>) -> Ideal {
        Ideal { ring: ring.clone(), gens: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect(), cache: Arc::default() }
    }

    fn fresh(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal { ring: self.ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect(), cache: Arc::default() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner_basis(&self, order: MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some(b) = self.cache.bases.lock().expect("gb cache poisoned").get(&order) {
            return b.clone();
        }
        let basis = Arc::new(buchberger(&self.ring, &self.gens, order));
        self.cache.bases.lock().expect("gb cache poisoned").entry(order).or_insert(basis).clone()
    }

    /// Reduced grevlex basis, the canonical form used for comparisons.
    pub fn gb(&self) -> Arc<Vec<Polynomial>> {
        self.groebner_basis(MonomialOrder::GrevLex)
    }

    pub fn is_unit(&self) -> bool {
        self.gb().first().is_some_and(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.gb(), MonomialOrder::GrevLex)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Equality of ideals via their reduced grevlex bases.
    pub fn ideal_equal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(*self.gb() == *other.gb())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.fresh(gens))
    }

    pub fn with_gens(&self, extra: &[Polynomial]) -> Result<Ideal> {
        if extra.iter().any(|g| !same_ring(g.ring(), &self.ring)) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ok(self.fresh(gens))
    }

    /// Ideal generated by the reduced grevlex basis; equal as an ideal, with
    /// the basis already cached.
    pub fn canonical(&self) -> Ideal {
        let gb = self.gb();
        let out = self.fresh(gb.to_vec());
        out.cache.bases.lock().expect("gb cache poisoned").insert(MonomialOrder::GrevLex, gb);
        out
    }

    /// `A ∩ B`, by eliminating `t` from `t*A + (1-t)*B`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.canonical());
        }
        if other.is_unit() {
            return Ok(self.canonical());
        }
        let big = self.ring.with_aux_front(1);
        let n = self.ring.nvars();
        let map: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens: Vec<Polynomial> = self.gb().iter().map(|g| &g.embed(&big, &map) * &t).collect();
        gens.extend(other.gb().iter().map(|g| &g.embed(&big, &map) * &one_minus_t));
        let keep: Vec<usize> = (1..=n).collect();
        let basis = buchberger(&big, &gens, MonomialOrder::Elimination(1));
        let out: Vec<Polynomial> = basis
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exp(0) == 0))
            .map(|g| g.restrict_monomials(&self.ring, &keep))
            .collect();
        Ok(self.fresh(out))
    }

    /// `(J : f) = { g : g f ∈ J }`.
    pub fn quotient_by_poly(&self, f: &Polynomial) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if f.is_constant() {
            return Ok(self.canonical());
        }
        if self.contains(f)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = self.fresh(vec![f.clone()]);
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.div_exact(f).expect("generators of J ∩ (f) are multiples of f"))
            .collect();
        Ok(self.fresh(gens).canonical())
    }

    /// `(J : A) = ∩_a (J : a)` over the generators of `A`.
    pub fn quotient_by_ideal(&self, a: &Ideal) -> Result<Ideal> {
        self.check_ring(a)?;
        let gens = a.gb();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc: Option<Ideal> = None;
        for g in gens.iter() {
            let q = self.quotient_by_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(prev) => prev.intersect(&q)?,
            });
        }
        Ok(acc.expect("nonempty basis").canonical())
    }

    /// `(J : f^∞)`, by iterating single quotients until the ideal stabilizes.
    pub fn saturation(&self, f: &Polynomial) -> Result<Ideal> {
        let mut cur = self.canonical();
        loop {
            let next = cur.quotient_by_poly(f)?;
            if cur.contains_ideal(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `J ∩ k[remaining variables]`, returned in the subring on the variables
    /// not listed in `drop` (original order kept). Dropping nothing returns `J`.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if drop.iter().any(|&i| i >= n) {
            return Err(Error::InvalidArgument("variable index out of range".into()));
        }
        if drop.is_empty() {
            return Ok(self.canonical());
        }
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        if keep.is_empty() {
            return Err(Error::InvalidArgument("cannot eliminate every variable".into()));
        }
        let mut drop_sorted: Vec<usize> = drop.to_vec();
        drop_sorted.sort_unstable();
        drop_sorted.dedup();
        let k = drop_sorted.len();
        // Reorder so dropped variables come first.
        let perm: Vec<usize> = drop_sorted.iter().chain(keep.iter()).copied().collect();
        let mut map = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            map[old] = new;
        }
        let names: Vec<String> = perm.iter().map(|&i| self.ring.names()[i].clone()).collect();
        let reordered = Arc::new(PolyRing::from_parts(names, *self.ring.field()));
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&reordered, &map)).collect();
        let basis = buchberger(&reordered, &gens, MonomialOrder::Elimination(k));
        let sub = self.ring.subring(&keep)?;
        let tail: Vec<usize> = (k..n).collect();
        let out: Vec<Polynomial> = basis
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)))
            .map(|g| g.restrict_monomials(&sub, &tail))
            .collect();
        Ideal::new(&sub, out)
    }

    /// `f ∈ √J`, decided by `1 ∈ J + (1 - t f)` in `R[t]`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() || self.is_unit() {
            return Ok(true);
        }
        let big = self.ring.with_aux_front(1);
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        let t = Polynomial::var(&big, 0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big, &map)).collect();
        gens.push(&Polynomial::one(&big) - &(&t * &f.embed(&big, &map)));
        let basis = buchberger(&big, &gens, MonomialOrder::GrevLex);
        Ok(basis.first().is_some_and(|g| g.is_constant()))
    }

    /// Krull dimension of `R/J`; `-1` for the unit ideal.
    pub fn dim(&self) -> i64 {
        let gb = self.gb();
        dim_from_leading(&leading_monomials(&gb, MonomialOrder::GrevLex), self.ring.nvars())
    }

    /// True iff the reduced grevlex basis is homogeneous (equivalently, the ideal is).
    pub fn is_homogeneous(&self) -> bool {
        self.gb().iter().all(|g| g.is_homogeneous())
    }

    /// Monomial generators, when the ideal is monomial. Checks the
    /// generators first, then the reduced basis.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        if self.gens.iter().all(|g| g.is_monomial()) {
            return Some(self.gens.iter().map(|g| g.terms()[0].0.clone()).collect());
        }
        let gb = self.gb();
        if gb.iter().all(|g| g.is_monomial()) {
            return Some(gb.iter().map(|g| g.terms()[0].0.clone()).collect());
        }
        None
    }

    /// Reduced grevlex basis rendered as strings.
    pub fn basis_strings(&self) -> Vec<String> {
        self.gb().iter().map(|g| g.to_string()).collect()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        same_ring(&self.ring, &other.ring) && *self.gb() == *other.gb()
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.basis_strings().join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::default_field(&["X", "Y", "Z"]).unwrap()
    }

    fn id(r: &Arc<PolyRing>, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn equality_examples() {
        let r = ring();
        assert!(id(&r, &["XY", "XZ"]).ideal_equal(&id(&r, &["XZ", "XY"])).unwrap());
        assert!(!id(&r, &["X"]).ideal_equal(&id(&r, &["X^2"])).unwrap());
        assert!(id(&r, &["Y", "X+Y+Z"]).ideal_equal(&id(&r, &["Y", "X+Z"])).unwrap());
    }

    #[test]
    fn quotient_by_poly_examples() {
        let r = ring();
        let i = id(&r, &["XY", "XZ"]);
        assert_eq!(i.quotient_by_poly(&p(&r, "Y")).unwrap(), id(&r, &["X"]));
        assert_eq!(i.quotient_by_poly(&p(&r, "1")).unwrap(), i);
        assert_eq!(i.quotient_by_poly(&p(&r, "X+Y+Z")).unwrap(), i);
        assert_eq!(i.quotient_by_poly(&Polynomial::zero(&r)), Err(Error::ZeroDivisor));
    }

    #[test]
    fn quotient_by_ideal_examples() {
        let r = ring();
        let i = id(&r, &["XY", "XZ"]);
        assert_eq!(i.quotient_by_ideal(&id(&r, &["X"])).unwrap(), id(&r, &["Y", "Z"]));
        assert_eq!(i.quotient_by_ideal(&Ideal::unit(&r)).unwrap(), i);
        assert_eq!(i.quotient_by_ideal(&Ideal::maximal(&r)).unwrap(), i);
        assert_eq!(i.quotient_by_ideal(&Ideal::zero(&r)), Err(Error::ZeroIdeal));
    }

    #[test]
    fn saturation_examples() {
        let r = ring();
        let i = id(&r, &["XY", "XZ"]);
        assert_eq!(i.saturation(&p(&r, "Y")).unwrap(), id(&r, &["X"]));
        assert_eq!(i.saturation(&p(&r, "X+Y+Z")).unwrap(), i);
        assert!(id(&r, &["X^2"]).saturation(&p(&r, "X")).unwrap().is_unit());
    }

    #[test]
    fn intersection_examples() {
        let r = ring();
        assert_eq!(id(&r, &["X"]).intersect(&id(&r, &["Y", "Z"])).unwrap(), id(&r, &["XY", "XZ"]));
        let a = id(&r, &["X^2+YZ", "Y^3"]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(id(&r, &["X"]).intersect(&id(&r, &["Y"])).unwrap(), id(&r, &["XY"]));
    }

    #[test]
    fn elimination_examples() {
        let r = PolyRing::default_field(&["t", "X", "Y"]).unwrap();
        let j = id(&r, &["tX", "(1-t)Y"]);
        let e = j.eliminate(&[0]).unwrap();
        assert_eq!(e.ring().names(), &["X".to_string(), "Y".to_string()]);
        assert_eq!(e, id(e.ring(), &["XY"]));

        let r = ring();
        let j = id(&r, &["X^2+Y"]);
        assert_eq!(j.eliminate(&[]).unwrap(), j);
        let e = id(&r, &["X-Y"]).eliminate(&[0]).unwrap();
        assert!(e.is_zero() || e.gb().is_empty());
        assert_eq!(e.ring().names(), &["Y".to_string(), "Z".to_string()]);
    }

    #[test]
    fn radical_membership_examples() {
        let r = ring();
        assert!(id(&r, &["X^2"]).radical_contains(&p(&r, "X")).unwrap());
        assert!(!id(&r, &["XY", "XZ"]).radical_contains(&p(&r, "Y")).unwrap());
        assert!(id(&r, &["XY"]).radical_contains(&Polynomial::zero(&r)).unwrap());
        assert!(id(&r, &["X^3", "Y^2"]).radical_contains(&p(&r, "X+Y")).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = ring();
        assert_eq!(id(&r, &["XY", "XZ"]).dim(), 2);
        assert_eq!(Ideal::zero(&r).dim(), 3);
        assert_eq!(Ideal::maximal(&r).dim(), 0);
        assert_eq!(Ideal::unit(&r).dim(), -1);
    }

    #[test]
    fn shared_cache_is_consistent_across_threads() {
        let r = ring();
        let i = id(&r, &["X^2+YZ", "XY-Z^2", "Y^3"]);
        let bases: Vec<Arc<Vec<Polynomial>>> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..4).map(|_| s.spawn(|| i.gb())).collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(bases.windows(2).all(|w| w[0] == w[1]));
    }
}
