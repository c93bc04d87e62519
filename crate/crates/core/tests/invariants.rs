use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use redsop_core::monomial_oracle::{member_of_monomial_prime, MonomialIdeal};
use redsop_core::sop::{max_assoc_dim_containing, random_form};
use redsop_core::{buchberger, CyclicModule, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, RngSeed};

fn ring(n: usize) -> Arc<PolyRing> {
    let names = ["X", "Y", "Z", "W"];
    PolyRing::default_field(&names[..n]).unwrap()
}

fn monomial_ideal_strategy() -> impl Strategy<Value = (usize, Vec<Vec<u16>>)> {
    (2usize..=4).prop_flat_map(|n| {
        let gen = prop::collection::vec(0u16..=3, n).prop_filter("positive degree", |e| e.iter().any(|&x| x > 0));
        (Just(n), prop::collection::vec(gen, 1..=5))
    })
}

fn build(n: usize, gens: &[Vec<u16>]) -> Ideal {
    let r = ring(n);
    Ideal::new(&r, gens.iter().map(|e| Polynomial::monomial(&r, Monomial::new(e))).collect()).unwrap()
}

/// Random form of degree `deg` in the variables of `mask` only.
fn sparse_form(r: &Arc<PolyRing>, deg: u32, mask: u32, seed: u64) -> Polynomial {
    let f = random_form(r, deg, &mut RngSeed(seed).rng());
    let terms = f.terms().iter().filter(|(m, _)| m.support().all(|i| mask & (1 << i) != 0)).cloned().collect();
    Polynomial::from_terms(r, terms)
}

fn poly_strategy(n: usize) -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u16..=2, n), -5i64..=5), 0..=4)
}

fn to_poly(r: &Arc<PolyRing>, terms: &[(Vec<u16>, i64)]) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(r, terms.iter().map(|(e, c)| (Monomial::new(e), f.from_i64(*c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_division_inverts_multiplication(a in poly_strategy(3), b in poly_strategy(3)) {
        let r = ring(3);
        let (f, g) = (to_poly(&r, &a), to_poly(&r, &b));
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).div_exact(&g), Some(f));
    }

    #[test]
    fn reduced_basis_ignores_generator_order(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3), seed in any::<u64>()) {
        let r = ring(3);
        let mut gens = vec![to_poly(&r, &a), to_poly(&r, &b), to_poly(&r, &c)];
        let gb = buchberger(&r, &gens, MonomialOrder::GrevLex);
        gens.shuffle(&mut RngSeed(seed).rng());
        gens[0] = gens[0].scale(&r.field().from_i64(7));
        prop_assert_eq!(buchberger(&r, &gens, MonomialOrder::GrevLex), gb);
    }

    #[test]
    fn quotient_and_saturation_laws((n, gens) in monomial_ideal_strategy(), deg in 1u32..=2, mask in 1u32..16, seed in any::<u64>()) {
        let j = build(n, &gens);
        let r = j.ring().clone();
        let f = sparse_form(&r, deg, mask & ((1 << n) - 1), seed);
        prop_assume!(!f.is_zero());
        let q = j.quotient_by_poly(&f).unwrap();
        prop_assert!(q.contains_ideal(&j).unwrap());
        let fq = Ideal::new(&r, q.gens().iter().map(|g| g * &f).collect()).unwrap();
        prop_assert!(j.contains_ideal(&fq).unwrap());
        let sat = j.saturation(&f).unwrap();
        prop_assert!(sat.contains_ideal(&q).unwrap());
        prop_assert!(sat.quotient_by_poly(&f).unwrap().ideal_equal(&sat).unwrap());
    }

    #[test]
    fn intersection_and_dimension_match_the_oracle((n, a) in monomial_ideal_strategy(), b in prop::collection::vec(prop::collection::vec(0u16..=3, 4), 1..=3)) {
        let b: Vec<Vec<u16>> = b.into_iter().map(|e| e[..n].to_vec()).filter(|e| e.iter().any(|&x| x > 0)).collect();
        prop_assume!(!b.is_empty());
        let (ja, jb) = (build(n, &a), build(n, &b));
        let (ma, mb) = (MonomialIdeal::from_ideal(&ja).unwrap(), MonomialIdeal::from_ideal(&jb).unwrap());
        prop_assert!(ja.intersect(&jb).unwrap().ideal_equal(&ma.intersect(&mb).to_ideal()).unwrap());
        prop_assert_eq!(ja.dim(), ma.dim());
    }

    #[test]
    fn decomposition_is_sound_and_irredundant((n, gens) in monomial_ideal_strategy()) {
        let j = build(n, &gens);
        let mi = MonomialIdeal::from_ideal(&j).unwrap();
        let comps = mi.irreducible_decomposition().unwrap();
        let r = j.ring().clone();
        let mut acc = Ideal::unit(&r);
        for c in &comps {
            acc = acc.intersect(&c.to_ideal(&r)).unwrap();
        }
        prop_assert!(acc.ideal_equal(&j).unwrap());
        for (i, c) in comps.iter().enumerate() {
            for (k, d) in comps.iter().enumerate() {
                prop_assert!(i == k || !c.contains(d));
            }
        }
    }

    #[test]
    fn localization_keeps_exactly_the_smaller_associated_primes((n, gens) in monomial_ideal_strategy(), mask in 1u32..16) {
        let j = build(n, &gens);
        let mi = MonomialIdeal::from_ideal(&j).unwrap();
        let p = redsop_core::MonomialPrime::new((0..n).filter(|i| mask & (1 << i) != 0));
        prop_assume!(p.height() > 0);
        let local = mi.localize(&p).unwrap();
        let mut expected: Vec<Vec<usize>> = mi.ass().unwrap().into_iter()
            .filter(|q| q.is_subset_of(&p))
            .map(|q| q.vars().iter().map(|v| p.vars().iter().position(|w| w == v).unwrap()).collect())
            .collect();
        let mut got: Vec<Vec<usize>> = if local.is_unit() { vec![] } else {
            local.ass().unwrap().into_iter().map(|q| q.vars().to_vec()).collect()
        };
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn zero_divisors_are_the_union_of_associated_primes((n, gens) in monomial_ideal_strategy(), deg in 1u32..=2, mask in 1u32..16, seed in any::<u64>()) {
        let j = build(n, &gens);
        let f = sparse_form(j.ring(), deg, mask & ((1 << n) - 1), seed);
        prop_assume!(!f.is_zero());
        let ass = MonomialIdeal::from_ideal(&j).unwrap().ass().unwrap();
        let zd = !j.quotient_by_poly(&f).unwrap().ideal_equal(&j).unwrap();
        prop_assert_eq!(zd, ass.iter().any(|p| member_of_monomial_prime(&f, p)));
    }

    #[test]
    fn dimension_filter_matches_explicit_associated_primes((n, gens) in monomial_ideal_strategy(), deg in 1u32..=2, mask in 1u32..16, seed in any::<u64>()) {
        let j = build(n, &gens);
        prop_assume!(!j.is_unit());
        let f = sparse_form(j.ring(), deg, mask & ((1 << n) - 1), seed);
        prop_assume!(!f.is_zero());
        let m = CyclicModule::new(j.clone()).unwrap();
        let ass = MonomialIdeal::from_ideal(&j).unwrap().ass().unwrap();
        let expected = ass.iter().filter(|p| member_of_monomial_prime(&f, p)).map(|p| p.dim(n)).max().unwrap_or(-1);
        prop_assert_eq!(max_assoc_dim_containing(&f, &m).unwrap(), expected);
    }
}
