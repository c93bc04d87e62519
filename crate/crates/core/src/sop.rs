//! Systems of parameters, the reducing property, and Cohen-Macaulay tests
//! for cyclic modules `M = R/I`.
//!
//! # The dimension filter
//!
//! The reducing conditions quantify over associated primes of
//! `N = R/J` containing an element `x` and having `dim R/P ≥ t`. Associated
//! primes of a general ideal are never enumerated. Instead, let
//! `T = (J : x^∞)/J` be the `x`-power torsion of `N`. Then
//!
//! * `Ass T = { P ∈ Ass N : x ∈ P }`, and
//! * `Ann T = (J : (J : x^∞))`, so `dim T = dim R/(J : (J : x^∞))`.
//!
//! Since the minimal primes of `Supp T` lie in `Ass T`, the maximum of
//! `dim R/P` over associated primes containing `x` equals `dim T`, with
//! `T = 0` (dimension `-1`) exactly when `x` is a non-zero-divisor. See
//! [`max_assoc_dim_containing`].
//!
//! # Equality versus inequality thresholds
//!
//! For a full system of parameters, step `i` of the reducing test asks that
//! `x_i` avoid the associated primes of `M/(x_1..x_{i-1})M` of dimension
//! exactly `d - i`. That module has dimension `d - i + 1`, and an element of
//! a system of parameters can never lie in one of its top-dimensional
//! primes, so once sop-ness has been verified the "dimension exactly
//! `d - i`" and "dimension at least `d - i`" tests coincide. The checkers
//! verify sop-ness first and then use the `≥` form.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::monomial_oracle::{member_of_monomial_prime, MonomialIdeal, MonomialPrime};
use crate::parse::parse_poly;
use crate::poly::Polynomial;
use crate::ring::{same_ring, PolyRing};

/// Default retry budget for every randomized construction.
pub const DEFAULT_RETRIES: u32 = 32;

/// Seed for the crate's deterministic generator (ChaCha8).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent child seed for sub-computation `stream` (splitmix64 mix).
    pub fn derive(self, stream: u64) -> RngSeed {
        let mut z = self.0 ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(0x632b_e59b_d9b4_e019);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        RngSeed(z ^ (z >> 31))
    }
}

/// `M = R/I` with `I` homogeneous and proper.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    ideal: Ideal,
    dim: i64,
}

impl CyclicModule {
    pub fn new(ideal: Ideal) -> Result<CyclicModule> {
        if let Some(g) = ideal.gens().iter().find(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        if ideal.is_unit() {
            return Err(Error::ZeroModule);
        }
        let dim = ideal.dim();
        Ok(CyclicModule { ideal, dim })
    }

    /// `R/(0)`, the ring itself.
    pub fn free(ring: &Arc<PolyRing>) -> CyclicModule {
        CyclicModule { ideal: Ideal::zero(ring), dim: ring.nvars() as i64 }
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, gens: &[S]) -> Result<CyclicModule> {
        CyclicModule::new(Ideal::parse(ring, gens)?)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// `M/(xs)M = R/(I + (xs))`; `Err(ZeroModule)` if that is zero.
    pub fn quotient(&self, xs: &[Polynomial]) -> Result<CyclicModule> {
        if xs.is_empty() {
            return Ok(self.clone());
        }
        let j = self.ideal.with_gens(xs)?;
        if j.is_unit() {
            return Err(Error::ZeroModule);
        }
        let dim = j.dim();
        Ok(CyclicModule { ideal: j, dim })
    }

    pub fn monomial_ideal(&self) -> Option<MonomialIdeal> {
        MonomialIdeal::from_ideal(&self.ideal).ok()
    }
}

/// A sequence `(x_1, ..., x_r)` of homogeneous elements of positive degree.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamSequence {
    elems: Vec<Polynomial>,
}

impl ParamSequence {
    pub fn new(elems: Vec<Polynomial>) -> Result<ParamSequence> {
        for e in &elems {
            if e.is_zero() {
                return Err(Error::InvalidArgument("parameter sequence contains 0".into()));
            }
            if !e.is_homogeneous() {
                return Err(Error::NotHomogeneous(e.to_string()));
            }
            if e.degree() == Some(0) {
                return Err(Error::NotInMaximalIdeal(e.to_string()));
            }
        }
        if elems.windows(2).any(|w| !same_ring(w[0].ring(), w[1].ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(ParamSequence { elems })
    }

    pub fn empty() -> ParamSequence {
        ParamSequence { elems: Vec::new() }
    }

    /// Parses a `;`-separated list such as `"Y; X+Y+Z"`.
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<ParamSequence> {
        if text.trim().is_empty() {
            return Ok(ParamSequence::empty());
        }
        let elems = text.split(';').map(|s| parse_poly(s, ring)).collect::<Result<Vec<_>>>()?;
        ParamSequence::new(elems)
    }

    pub fn elems(&self) -> &[Polynomial] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn prefix(&self, i: usize) -> &[Polynomial] {
        &self.elems[..i]
    }

    pub fn permuted(&self, perm: &[usize]) -> ParamSequence {
        ParamSequence { elems: perm.iter().map(|&i| self.elems[i].clone()).collect() }
    }

    /// The ideal `(xs)R`.
    pub fn ideal(&self, ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, self.elems.clone()).expect("checked ring")
    }

    fn check_ring(&self, m: &CyclicModule) -> Result<()> {
        if self.elems.iter().any(|e| !same_ring(e.ring(), m.ring())) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for ParamSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl fmt::Debug for ParamSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamSequence({self})")
    }
}

/// Certificate that step `index` (1-based) of the reducing test failed:
/// `x_index` lies in an associated prime of `M/(x_1..x_{index-1})M` of
/// dimension at least `threshold`. `witness` is the torsion annihilator
/// `(J : (J : x^∞))`, whose dimension is `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationWitness {
    pub index: usize,
    pub threshold: i64,
    pub witness: Ideal,
    pub dim: i64,
    /// An offending associated prime, when `J` is monomial.
    pub prime: Option<MonomialPrime>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The prefix `x_1..x_index` does not cut the dimension down to `d - index`.
    NotPartOfSop { index: usize, expected_dim: i64, actual_dim: i64 },
    Reducing(ViolationWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub violation: Option<Violation>,
}

impl Verdict {
    fn pass() -> Verdict {
        Verdict { holds: true, violation: None }
    }

    fn fail(v: Violation) -> Verdict {
        Verdict { holds: false, violation: Some(v) }
    }
}

fn check_length(r: usize, d: i64, ok: bool, msg: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::LengthMismatch { r, d, msg })
    }
}

pub fn quotient_module(m: &CyclicModule, xs: &ParamSequence) -> Result<CyclicModule> {
    xs.check_ring(m)?;
    m.quotient(xs.elems())
}

/// First prefix length whose quotient has the wrong dimension.
fn sop_violation(xs: &ParamSequence, m: &CyclicModule) -> Result<Option<Violation>> {
    let d = m.dim();
    let full = m.quotient(xs.elems())?.dim();
    if full == d - xs.len() as i64 {
        return Ok(None);
    }
    // Dimension drops by at most one per element, so some prefix fails first.
    for i in 1..=xs.len() {
        let actual = m.quotient(xs.prefix(i))?.dim();
        let expected = d - i as i64;
        if actual != expected {
            return Ok(Some(Violation::NotPartOfSop { index: i, expected_dim: expected, actual_dim: actual }));
        }
    }
    unreachable!("full quotient failed but every prefix passed")
}

/// `dim M/(xs)M = d - r`. For `r = d` this is the full sop test.
pub fn is_part_of_sop(xs: &ParamSequence, m: &CyclicModule) -> Result<bool> {
    xs.check_ring(m)?;
    check_length(xs.len(), m.dim(), xs.len() as i64 <= m.dim(), "a part of a sop has at most d elements")?;
    Ok(m.quotient(xs.elems())?.dim() == m.dim() - xs.len() as i64)
}

/// `(J : (J : x^∞))` for `J` the defining ideal of `n`, or `None` when `x` is a
/// non-zero-divisor on `n`.
pub fn torsion_annihilator(x: &Polynomial, n: &CyclicModule) -> Result<Option<Ideal>> {
    let j = n.ideal();
    let sat = j.saturation(x)?;
    if j.contains_ideal(&sat)? {
        return Ok(None);
    }
    Ok(Some(j.quotient_by_ideal(&sat)?))
}

/// `max { dim R/P : P ∈ Ass N, x ∈ P }`, or `-1` when no associated prime
/// contains `x`.
pub fn max_assoc_dim_containing(x: &Polynomial, n: &CyclicModule) -> Result<i64> {
    Ok(torsion_annihilator(x, n)?.map_or(-1, |w| w.dim()))
}

/// Runs steps `1..=upto` of the reducing test with thresholds `max(d - i, 1)`.
fn reducing_steps(xs: &ParamSequence, m: &CyclicModule, upto: usize) -> Result<Option<ViolationWitness>> {
    let d = m.dim();
    for i in 1..=upto {
        let n = m.quotient(xs.prefix(i - 1))?;
        let x = &xs.elems()[i - 1];
        let threshold = (d - i as i64).max(1);
        if let Some(w) = torsion_annihilator(x, &n)? {
            let dim = w.dim();
            if dim >= threshold {
                let prime = n.monomial_ideal().and_then(|mi| {
                    let ass = mi.ass().ok()?;
                    let nv = m.ring().nvars();
                    ass.into_iter()
                        .filter(|p| member_of_monomial_prime(x, p) && p.dim(nv) >= threshold)
                        .max_by(|a, b| a.dim(nv).cmp(&b.dim(nv)).then_with(|| b.cmp(a)))
                });
                return Ok(Some(ViolationWitness { index: i, threshold, witness: w.canonical(), dim, prime }));
            }
        }
    }
    Ok(None)
}

/// Is the full sequence `xs` (with `r = d ≥ 1`) a reducing system of parameters?
pub fn is_reducing_sop(xs: &ParamSequence, m: &CyclicModule) -> Result<Verdict> {
    xs.check_ring(m)?;
    let d = m.dim();
    check_length(xs.len(), d, d >= 1 && xs.len() as i64 == d, "a reducing sop has exactly d ≥ 1 elements")?;
    if let Some(v) = sop_violation(xs, m)? {
        return Ok(Verdict::fail(v));
    }
    Ok(match reducing_steps(xs, m, xs.len() - 1)? {
        Some(w) => Verdict::fail(Violation::Reducing(w)),
        None => Verdict::pass(),
    })
}

/// Is `xs` (with `r < d`) part of a reducing system of parameters?
pub fn is_part_of_reducing_sop(xs: &ParamSequence, m: &CyclicModule) -> Result<Verdict> {
    xs.check_ring(m)?;
    let d = m.dim();
    check_length(xs.len(), d, (xs.len() as i64) < d, "use the full reducing test when r = d")?;
    if let Some(v) = sop_violation(xs, m)? {
        return Ok(Verdict::fail(v));
    }
    Ok(match reducing_steps(xs, m, xs.len())? {
        Some(w) => Verdict::fail(Violation::Reducing(w)),
        None => Verdict::pass(),
    })
}

/// Dispatches to [`is_part_of_reducing_sop`] or [`is_reducing_sop`] by length.
pub fn is_reducing_prefix(xs: &ParamSequence, m: &CyclicModule) -> Result<Verdict> {
    if (xs.len() as i64) < m.dim() {
        is_part_of_reducing_sop(xs, m)
    } else {
        is_reducing_sop(xs, m)
    }
}

/// All monomials of degree `deg` in `n` variables.
pub fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == n - 1 {
            cur[i] = left as u16;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(n, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(n, 0, deg, &mut vec![0; n], &mut out);
    out
}

/// Dense random form of degree `deg` (possibly zero when all draws are zero).
pub fn random_form<R: Rng + ?Sized>(ring: &Arc<PolyRing>, deg: u32, rng: &mut R) -> Polynomial {
    let field = ring.field();
    let terms = monomials_of_degree(ring.nvars(), deg).into_iter().map(|m| (m, field.random(rng))).collect();
    Polynomial::from_terms(ring, terms)
}

fn random_nonzero_form<R: Rng + ?Sized>(ring: &Arc<PolyRing>, deg: u32, rng: &mut R) -> Polynomial {
    loop {
        let f = random_form(ring, deg, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

fn rank(field: &Field, mut rows: Vec<Vec<Coeff>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = field.mul(&rows[i][c], &inv);
                let pivot = rows[r].clone();
                for (x, y) in rows[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        r += 1;
    }
    r
}

/// Random invertible scalar matrix of size `k`.
fn random_invertible<R: Rng + ?Sized>(field: &Field, k: usize, rng: &mut R) -> Vec<Vec<Coeff>> {
    loop {
        let m: Vec<Vec<Coeff>> = (0..k).map(|_| (0..k).map(|_| field.random(rng)).collect()).collect();
        if rank(field, m.clone()) == k {
            return m;
        }
    }
}

/// A random graded change of generators: `(ys)R = (xs)R` always holds.
///
/// Elements are grouped by degree and emitted highest degree first. Within
/// a degree the new elements are an invertible scalar combination of the
/// old ones; each also picks up random multiples of every lower-degree
/// element. The transition matrix is block triangular with invertible
/// diagonal blocks, hence invertible over `R`.
pub fn random_graded_transform<R: Rng + ?Sized>(xs: &ParamSequence, rng: &mut R) -> ParamSequence {
    if xs.is_empty() {
        return xs.clone();
    }
    let ring = xs.elems()[0].ring().clone();
    let field = *ring.field();
    let mut degrees: Vec<u32> = xs.elems().iter().map(|e| e.degree().expect("nonzero")).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = Vec::with_capacity(xs.len());
    for &deg in degrees.iter().rev() {
        let same: Vec<&Polynomial> = xs.elems().iter().filter(|e| e.degree() == Some(deg)).collect();
        let lower: Vec<&Polynomial> = xs.elems().iter().filter(|e| e.degree().expect("nonzero") < deg).collect();
        let a = random_invertible(&field, same.len(), rng);
        for row in &a {
            let mut y = Polynomial::zero(&ring);
            for (c, x) in row.iter().zip(&same) {
                y = &y + &x.scale(c);
            }
            for x in &lower {
                let c = random_form(&ring, deg - x.degree().expect("nonzero"), rng);
                y = &y + &(&c * x);
            }
            out.push(y);
        }
    }
    ParamSequence { elems: out }
}

fn describe(v: &Option<Violation>) -> String {
    match v {
        None => "no witness".into(),
        Some(Violation::NotPartOfSop { index, expected_dim, actual_dim }) => {
            format!("prefix {index} leaves dimension {actual_dim}, expected {expected_dim}")
        }
        Some(Violation::Reducing(w)) => {
            format!("element {} lies in an associated prime of dimension {} (witness {})", w.index, w.dim, w.witness)
        }
    }
}

fn make_reducing_impl(
    xs: &ParamSequence,
    m: &CyclicModule,
    seed: RngSeed,
    max_retries: u32,
    check: fn(&ParamSequence, &CyclicModule) -> Result<Verdict>,
) -> Result<ParamSequence> {
    let first = check(xs, m)?;
    if first.holds {
        return Ok(xs.clone());
    }
    let target = xs.ideal(m.ring());
    let mut rng = seed.rng();
    let mut last = first.violation;
    for _ in 0..max_retries {
        let ys = random_graded_transform(xs, &mut rng);
        let v = check(&ys, m)?;
        if v.holds && ys.ideal(m.ring()).ideal_equal(&target)? {
            return Ok(ys);
        }
        last = v.violation;
    }
    Err(Error::RetriesExhausted { what: format!("no reducing transform found; last: {}", describe(&last)), retries: max_retries })
}

/// A reducing sop generating the same ideal as the sop `xs`.
pub fn make_reducing(xs: &ParamSequence, m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<ParamSequence> {
    xs.check_ring(m)?;
    check_length(xs.len(), m.dim(), m.dim() >= 1 && xs.len() as i64 == m.dim(), "make_reducing needs a full sop")?;
    if sop_violation(xs, m)?.is_some() {
        return Err(Error::InvalidArgument(format!("({xs}) is not a system of parameters")));
    }
    make_reducing_impl(xs, m, seed, max_retries, is_reducing_sop)
}

/// A part of a reducing sop generating the same ideal as the part of a sop `xs`.
/// Fails exactly when `xs` is not already part of a reducing sop.
pub fn make_reducing_part(xs: &ParamSequence, m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<ParamSequence> {
    xs.check_ring(m)?;
    check_length(xs.len(), m.dim(), (xs.len() as i64) < m.dim(), "make_reducing_part needs r < d")?;
    if sop_violation(xs, m)?.is_some() {
        return Err(Error::InvalidArgument(format!("({xs}) is not part of a system of parameters")));
    }
    make_reducing_impl(xs, m, seed, max_retries, is_part_of_reducing_sop)
}

/// Random linear form with at least one nonzero coefficient.
pub fn random_linear_form<R: Rng + ?Sized>(ring: &Arc<PolyRing>, rng: &mut R) -> Polynomial {
    random_nonzero_form(ring, 1, rng)
}

/// `d` random linear forms, each verified to cut the dimension by one.
pub fn random_sop(m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<ParamSequence> {
    let mut rng = seed.rng();
    let mut elems: Vec<Polynomial> = Vec::new();
    let mut cur = m.clone();
    for i in 1..=m.dim() {
        let mut found = None;
        for _ in 0..max_retries.max(1) {
            let l = random_linear_form(m.ring(), &mut rng);
            let next = cur.quotient(std::slice::from_ref(&l))?;
            if next.dim() == m.dim() - i {
                found = Some((l, next));
                break;
            }
        }
        let (l, next) = found.ok_or(Error::RetriesExhausted { what: format!("no parameter found at position {i}"), retries: max_retries })?;
        elems.push(l);
        cur = next;
    }
    Ok(ParamSequence { elems })
}

/// Each `x_i` is a non-zero-divisor on `M/(x_1..x_{i-1})M` and the final quotient is nonzero.
pub fn is_regular_sequence(xs: &ParamSequence, m: &CyclicModule) -> Result<bool> {
    xs.check_ring(m)?;
    let mut j = m.ideal().canonical();
    for x in xs.elems() {
        let q = j.quotient_by_poly(x)?;
        if !j.contains_ideal(&q)? {
            return Ok(false);
        }
        j = j.with_gens(std::slice::from_ref(x))?;
    }
    Ok(!j.is_unit())
}

/// Depth with its certificate: a regular sequence of that length after which
/// the maximal ideal is associated.
#[derive(Clone, Debug)]
pub struct DepthCertificate {
    pub depth: usize,
    pub regular_sequence: Vec<Polynomial>,
}

/// Greedy depth computation. Each step either certifies `m ∈ Ass` (stop) or
/// finds a random linear non-zero-divisor. The result is exact: a graded
/// module of positive depth always has a linear non-zero-divisor over an
/// infinite field, and the retry budget only guards against bad luck.
pub fn depth_oracle(m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<DepthCertificate> {
    let ring = m.ring();
    let maximal = Ideal::maximal(ring);
    let mut rng = seed.rng();
    let mut j = m.ideal().canonical();
    let mut seq = Vec::new();
    loop {
        let socle = j.quotient_by_ideal(&maximal)?;
        if !j.contains_ideal(&socle)? {
            return Ok(DepthCertificate { depth: seq.len(), regular_sequence: seq });
        }
        let mut found = None;
        for _ in 0..max_retries.max(1) {
            let l = random_linear_form(ring, &mut rng);
            if j.contains_ideal(&j.quotient_by_poly(&l)?)? {
                found = Some(l);
                break;
            }
        }
        let l = found.ok_or(Error::RetriesExhausted { what: "no linear non-zero-divisor found".into(), retries: max_retries })?;
        j = j.with_gens(std::slice::from_ref(&l))?.canonical();
        seq.push(l);
    }
}

pub fn is_cm_depth(m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<bool> {
    Ok(depth_oracle(m, seed, max_retries)?.depth as i64 == m.dim())
}

/// Outcome of the one-shot test: the reducing sop used and whether its last
/// element is a non-zero-divisor modulo the others.
#[derive(Clone, Debug)]
pub struct Theorem11Certificate {
    pub is_cm: bool,
    pub reducing_sop: ParamSequence,
    /// `I + (y_1..y_{d-1})` and its colon by `y_d`.
    pub colon: Option<(Ideal, Ideal)>,
}

/// Decides Cohen-Macaulayness from a given reducing sop: `M` is CM iff the
/// last element is a non-zero-divisor modulo the previous ones.
pub fn is_cm_with_reducing_sop(m: &CyclicModule, ys: &ParamSequence) -> Result<Theorem11Certificate> {
    if m.dim() == 0 {
        return Ok(Theorem11Certificate { is_cm: true, reducing_sop: ParamSequence::empty(), colon: None });
    }
    let v = is_reducing_sop(ys, m)?;
    if !v.holds {
        return Err(Error::InvalidArgument(format!("({ys}) is not a reducing system of parameters: {}", describe(&v.violation))));
    }
    let d = ys.len();
    let j = m.ideal().with_gens(ys.prefix(d - 1))?.canonical();
    let colon = j.quotient_by_poly(&ys.elems()[d - 1])?;
    let is_cm = j.contains_ideal(&colon)?;
    Ok(Theorem11Certificate { is_cm, reducing_sop: ys.clone(), colon: Some((j, colon)) })
}

/// Random sop, made reducing, then a single colon-ideal comparison.
pub fn is_cm_theorem11(m: &CyclicModule, seed: RngSeed, max_retries: u32) -> Result<Theorem11Certificate> {
    if m.dim() == 0 {
        return is_cm_with_reducing_sop(m, &ParamSequence::empty());
    }
    let xs = random_sop(m, seed.derive(1), max_retries)?;
    let ys = make_reducing(&xs, m, seed.derive(2), max_retries)?;
    is_cm_with_reducing_sop(m, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Arc<PolyRing> {
        PolyRing::default_field(&["X", "Y", "Z"]).unwrap()
    }

    fn ex16() -> CyclicModule {
        CyclicModule::parse(&ring3(), &["XY", "XZ"]).unwrap()
    }

    fn seq(m: &CyclicModule, s: &str) -> ParamSequence {
        ParamSequence::parse(m.ring(), s).unwrap()
    }

    fn poly(m: &CyclicModule, s: &str) -> Polynomial {
        parse_poly(s, m.ring()).unwrap()
    }

    #[test]
    fn module_construction_rejects_bad_ideals() {
        let r = ring3();
        assert!(matches!(CyclicModule::parse(&r, &["X^2+Y"]), Err(Error::NotHomogeneous(_))));
        assert!(matches!(CyclicModule::parse(&r, &["1"]), Err(Error::ZeroModule)));
        assert_eq!(ex16().dim(), 2);
    }

    #[test]
    fn sequence_construction_rejects_bad_elements() {
        let r = ring3();
        assert!(matches!(ParamSequence::parse(&r, "X; 3"), Err(Error::NotInMaximalIdeal(_))));
        assert!(matches!(ParamSequence::parse(&r, "X^2 + Y"), Err(Error::NotHomogeneous(_))));
        assert!(ParamSequence::parse(&r, "").unwrap().is_empty());
    }

    #[test]
    fn quotient_module_examples() {
        let m = ex16();
        assert_eq!(quotient_module(&m, &seq(&m, "Y; X+Y+Z")).unwrap().dim(), 0);
        assert_eq!(quotient_module(&m, &ParamSequence::empty()).unwrap().dim(), 2);
        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let n = CyclicModule::parse(&r, &["X"]).unwrap();
        let q = quotient_module(&n, &seq(&n, "X")).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.ideal().ideal_equal(n.ideal()).unwrap());
    }

    #[test]
    fn part_of_sop_examples() {
        let m = ex16();
        assert!(is_part_of_sop(&seq(&m, "Y; X+Y+Z"), &m).unwrap());
        assert!(!is_part_of_sop(&seq(&m, "X"), &m).unwrap());
        assert!(is_part_of_sop(&ParamSequence::empty(), &m).unwrap());
        assert!(matches!(is_part_of_sop(&seq(&m, "X; Y; Z"), &m), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn dimension_filter_examples() {
        let m = ex16();
        assert_eq!(max_assoc_dim_containing(&poly(&m, "Y"), &m).unwrap(), 1);
        let w = torsion_annihilator(&poly(&m, "Y"), &m).unwrap().unwrap();
        assert_eq!(w, Ideal::parse(m.ring(), &["Y", "Z"]).unwrap());
        assert_eq!(max_assoc_dim_containing(&poly(&m, "X+Y+Z"), &m).unwrap(), -1);
        assert_eq!(max_assoc_dim_containing(&poly(&m, "X"), &m).unwrap(), 2);
    }

    #[test]
    fn reducing_examples() {
        let m = ex16();
        let v = is_reducing_sop(&seq(&m, "Y; X+Y+Z"), &m).unwrap();
        assert!(!v.holds);
        match v.violation.unwrap() {
            Violation::Reducing(w) => {
                assert_eq!(w.index, 1);
                assert_eq!(w.dim, 1);
                assert_eq!(w.threshold, 1);
                assert_eq!(w.witness, Ideal::parse(m.ring(), &["Y", "Z"]).unwrap());
                assert_eq!(w.prime, Some(MonomialPrime::new([1, 2])));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(is_reducing_sop(&seq(&m, "X+Y+Z; Y"), &m).unwrap().holds);

        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let n = CyclicModule::parse(&r, &["XY"]).unwrap();
        assert!(is_reducing_sop(&seq(&n, "X+Y"), &n).unwrap().holds);
        assert!(matches!(is_reducing_sop(&seq(&m, "Y"), &m), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn non_sop_reports_prefix() {
        let m = ex16();
        let v = is_reducing_sop(&seq(&m, "X; Y"), &m).unwrap();
        assert_eq!(v.violation, Some(Violation::NotPartOfSop { index: 1, expected_dim: 1, actual_dim: 2 }));
    }

    #[test]
    fn part_of_reducing_examples() {
        let m = ex16();
        assert!(is_part_of_reducing_sop(&seq(&m, "X+Y"), &m).unwrap().holds);
        let v = is_part_of_reducing_sop(&seq(&m, "Y"), &m).unwrap();
        assert!(!v.holds);
        assert!(matches!(v.violation, Some(Violation::Reducing(ViolationWitness { dim: 1, .. }))));
        // A non-zero-divisor that is part of a sop.
        assert!(is_part_of_reducing_sop(&seq(&m, "X+Y+Z"), &m).unwrap().holds);
        assert!(matches!(is_part_of_reducing_sop(&seq(&m, "X+Y; Z"), &m), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn make_reducing_examples() {
        let m = ex16();
        let xs = seq(&m, "Y; X+Y+Z");
        let ys = make_reducing(&xs, &m, RngSeed(5), DEFAULT_RETRIES).unwrap();
        assert!(is_reducing_sop(&ys, &m).unwrap().holds);
        assert!(ys.ideal(m.ring()).ideal_equal(&xs.ideal(m.ring())).unwrap());
        // Deterministic per seed.
        assert_eq!(make_reducing(&xs, &m, RngSeed(5), DEFAULT_RETRIES).unwrap(), ys);

        let good = seq(&m, "X+Y+Z; Y");
        assert_eq!(make_reducing(&good, &m, RngSeed(1), DEFAULT_RETRIES).unwrap(), good);

        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let free = CyclicModule::free(&r);
        let xs = seq(&free, "X+Y; Y");
        let ys = make_reducing(&xs, &free, RngSeed(9), DEFAULT_RETRIES).unwrap();
        assert!(is_reducing_sop(&ys, &free).unwrap().holds);
    }

    #[test]
    fn make_reducing_part_examples() {
        let m = ex16();
        let xs = seq(&m, "X+Y");
        assert_eq!(make_reducing_part(&xs, &m, RngSeed(3), DEFAULT_RETRIES).unwrap(), xs);
        assert!(matches!(
            make_reducing_part(&seq(&m, "Y"), &m, RngSeed(3), DEFAULT_RETRIES),
            Err(Error::RetriesExhausted { .. })
        ));
        let free = CyclicModule::free(&ring3());
        let xs = seq(&free, "Y; X+Y+Z");
        assert!(make_reducing_part(&xs, &free, RngSeed(4), DEFAULT_RETRIES).is_ok());
    }

    #[test]
    fn mixed_degree_transform_preserves_ideal() {
        let m = CyclicModule::free(&ring3());
        let xs = seq(&m, "X; Y^2; Z^3 + X^2Y");
        let mut rng = RngSeed(11).rng();
        let ys = random_graded_transform(&xs, &mut rng);
        assert!(ys.elems().iter().all(|y| y.is_homogeneous()));
        assert!(ys.ideal(m.ring()).ideal_equal(&xs.ideal(m.ring())).unwrap());
    }

    #[test]
    fn random_sop_examples() {
        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let free = CyclicModule::free(&r);
        let xs = random_sop(&free, RngSeed(1), DEFAULT_RETRIES).unwrap();
        assert_eq!(xs.len(), 2);
        assert!(is_part_of_sop(&xs, &free).unwrap());
        assert_eq!(random_sop(&free, RngSeed(1), DEFAULT_RETRIES).unwrap(), xs);

        let n = CyclicModule::parse(&r, &["XY"]).unwrap();
        let xs = random_sop(&n, RngSeed(2), DEFAULT_RETRIES).unwrap();
        assert_eq!(xs.len(), 1);
        let l = &xs.elems()[0];
        assert_eq!(l.len(), 2, "a generic linear form avoids (X) and (Y)");

        let zero_dim = CyclicModule::parse(&r, &["X", "Y^2"]).unwrap();
        assert!(random_sop(&zero_dim, RngSeed(3), DEFAULT_RETRIES).unwrap().is_empty());
    }

    #[test]
    fn regular_sequence_examples() {
        let m = ex16();
        assert!(!is_regular_sequence(&seq(&m, "X+Y+Z; Y"), &m).unwrap());
        assert!(is_regular_sequence(&seq(&m, "X+Y+Z"), &m).unwrap());
        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let free = CyclicModule::free(&r);
        assert!(is_regular_sequence(&seq(&free, "X; Y"), &free).unwrap());
    }

    #[test]
    fn depth_examples() {
        assert_eq!(depth_oracle(&ex16(), RngSeed(1), DEFAULT_RETRIES).unwrap().depth, 1);
        assert_eq!(depth_oracle(&CyclicModule::free(&ring3()), RngSeed(1), DEFAULT_RETRIES).unwrap().depth, 3);
        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let n = CyclicModule::parse(&r, &["X^2", "XY"]).unwrap();
        assert_eq!(depth_oracle(&n, RngSeed(1), DEFAULT_RETRIES).unwrap().depth, 0);
    }

    #[test]
    fn cm_examples() {
        let s = RngSeed(7);
        let r = PolyRing::default_field(&["X", "Y"]).unwrap();
        let hyper = CyclicModule::parse(&r, &["XY"]).unwrap();
        let free = CyclicModule::free(&ring3());
        let artinian = CyclicModule::parse(&r, &["X^2", "Y^3", "XY"]).unwrap();
        assert!(!is_cm_theorem11(&ex16(), s, DEFAULT_RETRIES).unwrap().is_cm);
        assert!(is_cm_theorem11(&hyper, s, DEFAULT_RETRIES).unwrap().is_cm);
        assert!(is_cm_theorem11(&free, s, DEFAULT_RETRIES).unwrap().is_cm);
        assert!(is_cm_theorem11(&artinian, s, DEFAULT_RETRIES).unwrap().is_cm);
        assert!(!is_cm_depth(&ex16(), s, DEFAULT_RETRIES).unwrap());
        assert!(is_cm_depth(&hyper, s, DEFAULT_RETRIES).unwrap());
        assert!(is_cm_depth(&artinian, s, DEFAULT_RETRIES).unwrap());
    }

    #[test]
    fn one_shot_test_on_the_reversed_pair() {
        let m = ex16();
        let cert = is_cm_with_reducing_sop(&m, &seq(&m, "X+Y+Z; Y")).unwrap();
        assert!(!cert.is_cm);
        assert!(is_cm_with_reducing_sop(&m, &seq(&m, "Y; X+Y+Z")).is_err());
    }

    #[test]
    fn seed_derivation_is_stable() {
        assert_eq!(RngSeed(1).derive(2), RngSeed(1).derive(2));
        assert_ne!(RngSeed(1).derive(2), RngSeed(1).derive(3));
        assert_ne!(RngSeed(1).derive(2), RngSeed(2).derive(2));
    }
}
