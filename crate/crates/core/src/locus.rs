//! The strong Cohen-Macaulay locus `CM(M)`: primes `P ⊇ I` with
//! `dim R/P + dim M_P = d` and `M_P` Cohen-Macaulay. `CM_r(M)` collects the
//! members with `dim M_P = r`.
//!
//! Monomial primes of monomial modules get exact answers through
//! localization. General homogeneous primes get a one-sided randomized
//! test: `P ∈ CM_r(M)` iff `P` is associated to `M/(x_1..x_r)M` for some
//! part of a reducing sop `x_1..x_r` inside `P`. A successful construction
//! together with `dim R/(I + (xs)) = dim R/P` certifies membership, since a
//! prime containing `J` with `dim R/P = dim R/J` is minimal over `J` and
//! therefore associated. A failed construction proves nothing.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::monomial_oracle::{all_monomial_primes, MonomialIdeal, MonomialPrime};
use crate::poly::Polynomial;
use crate::sop::{
    depth_oracle, is_part_of_reducing_sop, is_reducing_sop, max_assoc_dim_containing, random_form, CyclicModule,
    ParamSequence, RngSeed,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocusStatus {
    Member,
    NonMember,
    Inconclusive,
}

impl fmt::Display for LocusStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocusStatus::Member => "member",
            LocusStatus::NonMember => "non-member",
            LocusStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusPrime {
    Monomial(MonomialPrime),
    /// A homogeneous ideal the caller asserts to be prime.
    General(Ideal),
}

/// Evidence behind a locus verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusCertificate {
    /// `M_P` presented as a monomial quotient of `k[P's variables]`.
    Localized { prime_dim: i64, local_dim: i64, local_depth: i64 },
    /// A part of a reducing sop inside `P` with `P` minimal over `I + (xs)`.
    Constructed { sequence: ParamSequence, quotient_dim: i64, primality_assumed: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmLocusEntry {
    pub prime: LocusPrime,
    /// `dim M_P`; `-1` when `P ∉ Supp M`.
    pub r: i64,
    pub status: LocusStatus,
    pub certificate: Option<LocusCertificate>,
    pub reason: Option<String>,
}

impl CmLocusEntry {
    pub fn is_member(&self) -> bool {
        self.status == LocusStatus::Member
    }

    pub fn monomial_prime(&self) -> Option<&MonomialPrime> {
        match &self.prime {
            LocusPrime::Monomial(p) => Some(p),
            LocusPrime::General(_) => None,
        }
    }
}

fn monomial_module(m: &CyclicModule) -> Result<MonomialIdeal> {
    MonomialIdeal::from_ideal(m.ideal())
}

/// Exact membership of the monomial prime `P` in `CM(M)`, for monomial `I`.
pub fn cm_membership_monomial(p: &MonomialPrime, m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<CmLocusEntry> {
    let mi = monomial_module(m)?;
    let n = m.ring().nvars();
    if p.vars().iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument("prime mentions a variable outside the ring".into()));
    }
    let d = m.dim();
    let prime = LocusPrime::Monomial(p.clone());
    let prime_dim = p.dim(n);
    if !mi.contained_in_prime(p) {
        return Ok(CmLocusEntry {
            prime,
            r: -1,
            status: LocusStatus::NonMember,
            certificate: None,
            reason: Some("prime does not contain I, so it is outside Supp M".into()),
        });
    }
    // R_(0) is a field; M_(0) is nonzero only when I = 0, and then it is that field.
    let (local_dim, local_depth) = if p.height() == 0 {
        (0, 0)
    } else {
        let local = mi.localize(p)?;
        let lm = CyclicModule::new(local.to_ideal())?;
        let depth = depth_oracle(&lm, seed, max_retries)?.depth as i64;
        (lm.dim(), depth)
    };
    let certificate = Some(LocusCertificate::Localized { prime_dim, local_dim, local_depth });
    let (status, reason) = if prime_dim + local_dim != d {
        (LocusStatus::NonMember, Some(format!("dim R/P + dim M_P = {prime_dim} + {local_dim} ≠ {d}")))
    } else if local_depth != local_dim {
        (LocusStatus::NonMember, Some(format!("M_P has depth {local_depth} < dimension {local_dim}")))
    } else {
        (LocusStatus::Member, None)
    };
    Ok(CmLocusEntry { prime, r: local_dim, status, certificate, reason })
}

/// Every monomial prime in `CM_r(M)`, in height-then-index order.
pub fn cm_locus_monomial_r(m: &CyclicModule, r: i64, seed: RngSeed, max_retries: u32) -> Result<Vec<CmLocusEntry>> {
    let d = m.dim();
    if r < 0 || r > d {
        return Err(Error::InvalidArgument(format!("locus level r = {r} outside 0..={d}")));
    }
    let mi = monomial_module(m)?;
    let n = m.ring().nvars();
    let mut out = Vec::new();
    for (k, p) in all_monomial_primes(n).enumerate() {
        if p.dim(n) != d - r || !mi.contained_in_prime(&p) {
            continue;
        }
        let e = cm_membership_monomial(&p, m, seed.derive(k as u64), max_retries)?;
        if e.is_member() && e.r == r {
            out.push(e);
        }
    }
    Ok(out)
}

fn check_prime(p: &Ideal, m: &CyclicModule) -> Result<()> {
    if !crate::ring::same_ring(p.ring(), m.ring()) {
        return Err(Error::RingMismatch);
    }
    if let Some(g) = p.gens().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    if p.is_unit() {
        return Err(Error::InvalidArgument("the unit ideal is not a prime".into()));
    }
    Ok(())
}

/// Random homogeneous element of `P` of degree `deg`, built from `P`'s generators.
fn random_element_of<R: Rng + ?Sized>(p: &Ideal, gens: &[Polynomial], deg: u32, rng: &mut R) -> Polynomial {
    let mut x = Polynomial::zero(p.ring());
    for g in gens {
        let c = random_form(p.ring(), deg - g.degree().expect("nonzero generator"), rng);
        x = &x + &(&c * g);
    }
    x
}

/// Builds `x_1..x_r ∈ P` stepwise, each `x_i` avoiding the associated primes
/// of `M/(x_1..x_{i-1})M` of dimension at least `max(d - i, 1)`. The result
/// is part of a reducing sop (a reducing sop when `r = d`).
pub fn construct_reducing_part_in_prime(
    m: &CyclicModule,
    p: &Ideal,
    r: usize,
    seed: RngSeed,
    max_retries: u32,
) -> Result<ParamSequence> {
    check_prime(p, m)?;
    let d = m.dim();
    if r == 0 || r as i64 > d {
        return Err(Error::LengthMismatch { r, d, msg: "construction needs 1 ≤ r ≤ d" });
    }
    if !p.contains_ideal(m.ideal())? {
        return Err(Error::InvalidArgument("prime does not contain I".into()));
    }
    let gens: Vec<Polynomial> = p.gb().iter().filter(|g| !g.is_zero()).cloned().collect();
    let deg = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    if gens.is_empty() || deg == 0 {
        return Err(Error::InvalidArgument("prime has no element of positive degree".into()));
    }
    let mut rng = seed.rng();
    let mut xs: Vec<Polynomial> = Vec::with_capacity(r);
    for i in 1..=r {
        let n = m.quotient(&xs)?;
        let threshold = (d - i as i64).max(1);
        let mut found = None;
        for _ in 0..max_retries.max(1) {
            let x = random_element_of(p, &gens, deg, &mut rng);
            if x.is_zero() {
                continue;
            }
            if max_assoc_dim_containing(&x, &n)? < threshold {
                found = Some(x);
                break;
            }
        }
        let x = found.ok_or_else(|| Error::RetriesExhausted {
            what: format!("no element of {p} avoids the associated primes of dimension ≥ {threshold} at step {i}"),
            retries: max_retries,
        })?;
        xs.push(x);
    }
    let seq = ParamSequence::new(xs)?;
    let verdict = if r as i64 == d { is_reducing_sop(&seq, m)? } else { is_part_of_reducing_sop(&seq, m)? };
    if !verdict.holds {
        return Err(Error::InvalidArgument(format!("constructed sequence ({seq}) failed verification")));
    }
    Ok(seq)
}

/// One-sided membership test for a homogeneous prime `P` (primality assumed,
/// not checked). Construction failure yields [`LocusStatus::Inconclusive`].
pub fn cm_membership_general(p: &Ideal, m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<CmLocusEntry> {
    check_prime(p, m)?;
    let prime = LocusPrime::General(p.canonical());
    if !p.contains_ideal(m.ideal())? {
        return Ok(CmLocusEntry {
            prime,
            r: -1,
            status: LocusStatus::NonMember,
            certificate: None,
            reason: Some("prime does not contain I, so it is outside Supp M".into()),
        });
    }
    let d = m.dim();
    let prime_dim = p.dim();
    let r = d - prime_dim;
    if r == 0 {
        // P ⊇ I with dim R/P = dim R/I: minimal over I, and M_P has length.
        return Ok(CmLocusEntry {
            prime,
            r: 0,
            status: LocusStatus::Member,
            certificate: Some(LocusCertificate::Constructed {
                sequence: ParamSequence::empty(),
                quotient_dim: d,
                primality_assumed: true,
            }),
            reason: None,
        });
    }
    match construct_reducing_part_in_prime(m, p, r as usize, seed, max_retries) {
        Ok(xs) => {
            let quotient_dim = m.quotient(xs.elems())?.dim();
            let certificate =
                Some(LocusCertificate::Constructed { sequence: xs, quotient_dim, primality_assumed: true });
            if quotient_dim == prime_dim {
                Ok(CmLocusEntry { prime, r, status: LocusStatus::Member, certificate, reason: None })
            } else {
                Ok(CmLocusEntry {
                    prime,
                    r,
                    status: LocusStatus::Inconclusive,
                    certificate,
                    reason: Some(format!("quotient dimension {quotient_dim} differs from dim R/P = {prime_dim}")),
                })
            }
        }
        Err(Error::RetriesExhausted { what, .. }) => Ok(CmLocusEntry {
            prime,
            r,
            status: LocusStatus::Inconclusive,
            certificate: None,
            reason: Some(what),
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use crate::sop::DEFAULT_RETRIES;
    use std::sync::Arc;

    fn ring3() -> Arc<PolyRing> {
        PolyRing::default_field(&["X", "Y", "Z"]).unwrap()
    }

    fn ex16() -> CyclicModule {
        CyclicModule::parse(&ring3(), &["XY", "XZ"]).unwrap()
    }

    fn prime(m: &CyclicModule, names: &[&str]) -> MonomialPrime {
        MonomialPrime::from_names(m.ring(), names).unwrap()
    }

    #[test]
    fn monomial_membership_examples() {
        let m = ex16();
        let s = RngSeed(1);
        let e = cm_membership_monomial(&prime(&m, &["X"]), &m, s, DEFAULT_RETRIES).unwrap();
        assert!(e.is_member());
        assert_eq!(e.r, 0);
        let e = cm_membership_monomial(&prime(&m, &["Y", "Z"]), &m, s, DEFAULT_RETRIES).unwrap();
        assert_eq!(e.status, LocusStatus::NonMember);
        assert_eq!(e.certificate, Some(LocusCertificate::Localized { prime_dim: 1, local_dim: 0, local_depth: 0 }));
        let e = cm_membership_monomial(&MonomialPrime::maximal(3), &m, s, DEFAULT_RETRIES).unwrap();
        assert_eq!(e.status, LocusStatus::NonMember);
        let e = cm_membership_monomial(&prime(&m, &["Y"]), &m, s, DEFAULT_RETRIES).unwrap();
        assert_eq!((e.status, e.r), (LocusStatus::NonMember, -1));
    }

    #[test]
    fn zero_prime_is_a_member_only_of_the_free_module() {
        let free = CyclicModule::free(&ring3());
        let e = cm_membership_monomial(&MonomialPrime::new([]), &free, RngSeed(1), DEFAULT_RETRIES).unwrap();
        assert!(e.is_member());
        let e = cm_membership_monomial(&MonomialPrime::new([]), &ex16(), RngSeed(1), DEFAULT_RETRIES).unwrap();
        assert!(!e.is_member());
    }

    #[test]
    fn locus_levels_of_the_counterexample() {
        let m = ex16();
        let s = RngSeed(2);
        let level = |r| -> Vec<MonomialPrime> {
            cm_locus_monomial_r(&m, r, s, DEFAULT_RETRIES)
                .unwrap()
                .into_iter()
                .map(|e| e.monomial_prime().unwrap().clone())
                .collect()
        };
        assert_eq!(level(0), vec![prime(&m, &["X"])]);
        assert_eq!(level(1), vec![prime(&m, &["X", "Y"]), prime(&m, &["X", "Z"])]);
        assert!(level(2).is_empty());
        assert!(cm_locus_monomial_r(&m, 3, s, DEFAULT_RETRIES).is_err());
    }

    #[test]
    fn construction_examples() {
        let m = ex16();
        let s = RngSeed(3);
        let xy = Ideal::parse(m.ring(), &["X", "Y"]).unwrap();
        let xs = construct_reducing_part_in_prime(&m, &xy, 1, s, DEFAULT_RETRIES).unwrap();
        assert_eq!(m.quotient(xs.elems()).unwrap().dim(), 1);
        let yz = Ideal::parse(m.ring(), &["Y", "Z"]).unwrap();
        assert!(matches!(
            construct_reducing_part_in_prime(&m, &yz, 1, s, DEFAULT_RETRIES),
            Err(Error::RetriesExhausted { .. })
        ));
        let r2 = PolyRing::default_field(&["X", "Y"]).unwrap();
        let free = CyclicModule::free(&r2);
        let xs = construct_reducing_part_in_prime(&free, &Ideal::maximal(&r2), 2, s, DEFAULT_RETRIES).unwrap();
        assert!(is_reducing_sop(&xs, &free).unwrap().holds);
    }

    #[test]
    fn general_membership_examples() {
        let m = ex16();
        let s = RngSeed(4);
        let e = cm_membership_general(&Ideal::parse(m.ring(), &["X", "Y"]).unwrap(), &m, s, DEFAULT_RETRIES).unwrap();
        assert!(e.is_member());
        assert_eq!(e.r, 1);

        let free = CyclicModule::free(&ring3());
        let p = Ideal::parse(free.ring(), &["X+Y", "Z"]).unwrap();
        let e = cm_membership_general(&p, &free, s, DEFAULT_RETRIES).unwrap();
        assert!(e.is_member());
        assert_eq!(e.r, 2);

        let e = cm_membership_general(&Ideal::parse(m.ring(), &["Y"]).unwrap(), &m, s, DEFAULT_RETRIES).unwrap();
        assert_eq!(e.status, LocusStatus::NonMember);

        let e = cm_membership_general(&Ideal::parse(m.ring(), &["Y", "Z"]).unwrap(), &m, s, DEFAULT_RETRIES).unwrap();
        assert_eq!(e.status, LocusStatus::Inconclusive);

        let e = cm_membership_general(&Ideal::parse(m.ring(), &["X"]).unwrap(), &m, s, DEFAULT_RETRIES).unwrap();
        assert!(e.is_member());
        assert_eq!(e.r, 0);
    }
}
