//! Property suites over seeded corpora. Every suite compares the engine
//! against an independent computation (explicit associated primes from the
//! monomial oracle, the depth oracle, exact localization) and reports the
//! first counterexample it meets.
//!
//! Fixtures run in parallel; results are assembled in fixture order, so a
//! report depends only on the corpus spec and seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use redsop_core::locus::{cm_locus_monomial_r, cm_membership_general, cm_membership_monomial};
use redsop_core::monomial_oracle::{all_monomial_primes, member_of_monomial_prime, MonomialIdeal};
use redsop_core::sop::{
    is_cm_depth, is_cm_theorem11, is_part_of_reducing_sop, is_part_of_sop, is_reducing_prefix, is_reducing_sop,
    is_regular_sequence, make_reducing_part, max_assoc_dim_containing, random_form, random_graded_transform,
    random_linear_form, random_sop,
};
use redsop_core::{
    buchberger, CyclicModule, Error, Ideal, LocusStatus, Monomial, MonomialOrder, MonomialPrime, ParamSequence,
    PolyRing, Polynomial, RngSeed, DEFAULT_RETRIES,
};
use serde::{Deserialize, Serialize};

use crate::corpus::{generate_corpus, CorpusError, CorpusSpec};
use crate::session::SessionInput;

pub const ALL_SUITES: &[&str] =
    &["kernel", "dimfilter", "def1", "t11", "rem6", "cor15", "t14", "lem7", "lem8", "rem13", "rem18", "prop19"];

pub fn describe_suite(id: &str) -> &'static str {
    match id {
        "kernel" => "Groebner determinism, quotient and saturation laws, intersection and dimension against the monomial oracle",
        "dimfilter" => "torsion-annihilator dimension equals the maximum over explicit associated primes containing the element",
        "def1" => "reducing test agrees with the literal associated-prime quantifier using dim R/P = d - i",
        "t11" => "one-shot reducing-sop test agrees with the depth oracle",
        "rem6" => "sops are regular sequences exactly on CM modules; on CM modules regular, reducing part and sop part coincide",
        "cor15" => "parts of reducing sops with r < d are permutation invariant; full sops are not",
        "t14" => "reducing part iff every top prime of Supp M ∩ V(xs) is an r-dimensional CM point; equivalently a reducing transform exists",
        "lem7" => "parts of (reducing) sops localize to parts of (reducing) sops at primes with dim R/P + dim M_P = d",
        "lem8" => "minimal associated primes containing a zero-divisor x stay associated modulo x",
        "rem13" => "if every y_j lies in the radical of I + (xs) and ys is part of a sop, so is xs",
        "rem18" => "CM_0 = Assh, the CM_1 formula, and maximal-ideal membership iff CM",
        "prop19" => "exact locus members get constructive certificates and every certificate is confirmed exactly",
        _ => "unknown suite",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (known: {known})", known = ALL_SUITES.join(", "))]
    Unknown(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("fixture {index}: {msg}")]
    Fixture { index: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Corpus index, or `None` for a pinned fixture.
    pub fixture_index: Option<usize>,
    pub fixture: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub description: String,
    pub fixtures: usize,
    /// Fixtures that contributed at least one check.
    pub fixtures_checked: usize,
    pub checked: usize,
    pub passed: usize,
    pub violations: usize,
    pub skipped: usize,
    /// Suite-specific tallies such as the number of positive instances.
    pub metrics: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }

    pub fn metric(&self, key: &str) -> usize {
        self.metrics.get(key).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremsReport {
    pub seed: u64,
    pub corpus: CorpusSpec,
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

impl TheoremsReport {
    pub fn suite(&self, id: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == id)
    }

    pub fn render_human(&self) -> String {
        let mut s = String::new();
        for r in &self.suites {
            let _ = writeln!(
                s,
                "{:<10} {:<4} {}/{} checks passed over {} fixtures ({} skipped){}",
                r.suite,
                if r.ok() { "ok" } else { "FAIL" },
                r.passed,
                r.checked,
                r.fixtures,
                r.skipped,
                if r.metrics.is_empty() {
                    String::new()
                } else {
                    let m: Vec<String> = r.metrics.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    format!(" [{}]", m.join(", "))
                }
            );
            if let Some(c) = &r.first_counterexample {
                let _ = writeln!(s, "  first counterexample: {}\n{}", c.detail, indent(&c.fixture));
            }
        }
        let _ = write!(s, "overall: {}", if self.all_passed { "pass" } else { "FAIL" });
        s
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("    {l}")).collect::<Vec<_>>().join("\n")
}

/// A corpus entry, parsed and ready for the engine.
pub struct Fixture {
    pub index: Option<usize>,
    pub input: SessionInput,
    pub module: CyclicModule,
    pub mono: MonomialIdeal,
}

impl Fixture {
    pub fn from_input(index: Option<usize>, input: SessionInput) -> Result<Fixture, String> {
        let ring = input.ring().map_err(|e| e.to_string())?;
        let ideal = input.build_ideal(&ring).map_err(|e| e.to_string())?;
        let mono = MonomialIdeal::from_ideal(&ideal).map_err(|e| e.to_string())?;
        let module = CyclicModule::new(ideal).map_err(|e| e.to_string())?;
        Ok(Fixture { index, input, module, mono })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.module.ring()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn d(&self) -> i64 {
        self.module.dim()
    }
}

/// `k[X,Y,Z]/(XY, XZ)`: a sop that is reducing in one order only.
pub fn worked_example() -> Fixture {
    let mut input = SessionInput::new(
        vec!["X".into(), "Y".into(), "Z".into()],
        redsop_core::DEFAULT_PRIME,
        vec!["XY".into(), "XZ".into()],
    );
    input.sequences.insert("S".into(), "Y; X+Y+Z".into());
    Fixture::from_input(None, input).expect("valid pinned fixture")
}

/// Per-fixture tallies.
#[derive(Default)]
struct Outcome {
    checked: usize,
    passed: usize,
    skipped: usize,
    metrics: BTreeMap<String, usize>,
    violation: Option<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.violation.is_none() {
            self.violation = Some(detail());
        }
    }

    fn bump(&mut self, key: &str) {
        *self.metrics.entry(key.to_string()).or_default() += 1;
    }

    fn engine_error(&mut self, e: Error) {
        self.checked += 1;
        if self.violation.is_none() {
            self.violation = Some(format!("engine error: {e}"));
        }
    }
}

type SuiteFn = fn(&Fixture, RngSeed, &mut Outcome) -> Result<(), Error>;

fn suite_fn(id: &str) -> Option<SuiteFn> {
    Some(match id {
        "kernel" => kernel,
        "dimfilter" => dimfilter,
        "def1" => def1,
        "t11" => t11,
        "rem6" => rem6,
        "cor15" => cor15,
        "t14" => t14,
        "lem7" => lem7,
        "lem8" => lem8,
        "rem13" => rem13,
        "rem18" => rem18,
        "prop19" => prop19,
        _ => return None,
    })
}

/// Suites that also run on the pinned worked example.
fn pinned(id: &str) -> bool {
    matches!(id, "cor15" | "prop19")
}

fn run_one(f: SuiteFn, fx: &Fixture, seed: RngSeed) -> Outcome {
    let mut out = Outcome::default();
    if let Err(e) = f(fx, seed, &mut out) {
        out.engine_error(e);
    }
    out
}

/// Runs one suite over prepared fixtures.
pub fn run_suite(id: &str, fixtures: &[Fixture], seed: u64) -> Result<SuiteReport, SuiteError> {
    let f = suite_fn(id).ok_or_else(|| SuiteError::Unknown(id.to_string()))?;
    let sid = ALL_SUITES.iter().position(|s| *s == id).expect("known suite") as u64;
    let base = RngSeed(seed).derive(sid);
    let pinned_fx = pinned(id).then(worked_example);
    let mut jobs: Vec<&Fixture> = pinned_fx.iter().collect();
    jobs.extend(fixtures.iter());
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .enumerate()
        .map(|(k, fx)| run_one(f, fx, base.derive(k as u64)))
        .collect();
    let mut report = SuiteReport {
        suite: id.to_string(),
        description: describe_suite(id).to_string(),
        fixtures: jobs.len(),
        fixtures_checked: 0,
        checked: 0,
        passed: 0,
        violations: 0,
        skipped: 0,
        metrics: BTreeMap::new(),
        first_counterexample: None,
    };
    for (fx, o) in jobs.iter().zip(outcomes) {
        report.checked += o.checked;
        report.fixtures_checked += usize::from(o.checked > 0);
        report.passed += o.passed;
        report.violations += o.checked - o.passed;
        report.skipped += o.skipped;
        for (k, v) in o.metrics {
            *report.metrics.entry(k).or_default() += v;
        }
        if report.first_counterexample.is_none() {
            if let Some(detail) = o.violation {
                report.first_counterexample =
                    Some(Counterexample { fixture_index: fx.index, fixture: fx.input.render(), detail });
            }
        }
    }
    Ok(report)
}

pub fn build_fixtures(spec: &CorpusSpec) -> Result<Vec<Fixture>, SuiteError> {
    generate_corpus(spec)?
        .into_iter()
        .enumerate()
        .map(|(i, s)| Fixture::from_input(Some(i), s).map_err(|msg| SuiteError::Fixture { index: i, msg }))
        .collect()
}

/// Runs the named suites (all when `ids` is empty) on one shared corpus.
pub fn check_theorems(ids: &[String], spec: &CorpusSpec) -> Result<TheoremsReport, SuiteError> {
    let ids: Vec<String> = if ids.is_empty() { ALL_SUITES.iter().map(|s| s.to_string()).collect() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|i| suite_fn(i).is_none()) {
        return Err(SuiteError::Unknown(bad.clone()));
    }
    let fixtures = build_fixtures(spec)?;
    let suites = ids.iter().map(|id| run_suite(id, &fixtures, spec.seed)).collect::<Result<Vec<_>, _>>()?;
    let all_passed = suites.iter().all(|s| s.ok());
    Ok(TheoremsReport { seed: spec.seed, corpus: spec.clone(), suites, all_passed })
}

// ---------------------------------------------------------------------------
// Sampling helpers.

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Monomial {
    let deg = rng.gen_range(1..=max_deg);
    let mut e = vec![0u16; n];
    let support: Vec<usize> = {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        idx.truncate(rng.gen_range(1..=n.min(2)));
        idx
    };
    for _ in 0..deg {
        e[*support.choose(rng).expect("nonempty")] += 1;
    }
    Monomial::new(&e)
}

/// Random form of degree `deg` in a random nonempty subset of the variables.
fn sparse_form(ring: &Arc<PolyRing>, deg: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = ring.nvars();
    loop {
        let mask: u32 = rng.gen_range(1..(1u32 << n));
        let f = random_form(ring, deg, rng);
        let terms = f.terms().iter().filter(|(m, _)| m.support().all(|i| mask & (1 << i) != 0)).cloned().collect();
        let g = Polynomial::from_terms(ring, terms);
        if !g.is_zero() {
            return g;
        }
    }
}

/// A homogeneous element of positive degree: a monomial a third of the
/// time, otherwise a sparse random form of degree 1 or 2.
fn random_element(ring: &Arc<PolyRing>, rng: &mut ChaCha8Rng) -> Polynomial {
    if rng.gen_ratio(1, 3) {
        Polynomial::monomial(ring, random_monomial(rng, ring.nvars(), 2))
    } else {
        let deg = rng.gen_range(1..=2);
        sparse_form(ring, deg, rng)
    }
}

fn monomial_sequence(fx: &Fixture, r: usize, rng: &mut ChaCha8Rng) -> ParamSequence {
    let elems = (0..r).map(|_| Polynomial::monomial(fx.ring(), random_monomial(rng, fx.nvars(), 2))).collect();
    ParamSequence::new(elems).expect("monomials of positive degree")
}

/// A monomial sequence of length `r` that is part of a sop, if one turns up.
fn monomial_sop_part(fx: &Fixture, r: usize, rng: &mut ChaCha8Rng, attempts: usize) -> Result<Option<ParamSequence>, Error> {
    for _ in 0..attempts {
        let xs = monomial_sequence(fx, r, rng);
        if is_part_of_sop(&xs, &fx.module)? {
            return Ok(Some(xs));
        }
    }
    Ok(None)
}

fn monomials_of(xs: &ParamSequence) -> Vec<Monomial> {
    xs.elems().iter().map(|x| x.terms()[0].0.clone()).collect()
}

fn ass_of(mi: &MonomialIdeal) -> Result<Vec<MonomialPrime>, Error> {
    if mi.is_unit() {
        Ok(Vec::new())
    } else {
        mi.ass()
    }
}

fn list(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn show(ring: &PolyRing, ps: &[MonomialPrime]) -> String {
    ps.iter().map(|p| p.render(ring)).collect::<Vec<_>>().join(", ")
}

// ---------------------------------------------------------------------------
// Suites.

fn kernel(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let ring = fx.ring();
    let mut rng = seed.rng();
    let i = fx.module.ideal();

    // Reduced basis is a function of the ideal alone.
    let mut gens: Vec<Polynomial> = i.gens().to_vec();
    gens.push(sparse_form(ring, rng.gen_range(1..=2), &mut rng));
    let gb = buchberger(ring, &gens, MonomialOrder::GrevLex);
    let mut shuffled = gens.clone();
    shuffled.shuffle(&mut rng);
    let c = ring.field().random_nonzero(&mut rng);
    shuffled[0] = shuffled[0].scale(&c);
    let gb2 = buchberger(ring, &shuffled, MonomialOrder::GrevLex);
    out.check(gb == gb2, || format!("basis changed under permutation of ({})", list(&gens)));
    out.bump("gb_trials");

    // Quotient and saturation laws on a non-monomial ideal.
    let j = Ideal::new(ring, gens)?;
    let f = random_element(ring, &mut rng);
    let q = j.quotient_by_poly(&f)?;
    let fq = Ideal::new(ring, q.gens().iter().map(|g| g * &f).collect())?;
    let sat = j.saturation(&f)?;
    let laws = q.contains_ideal(&j)?
        && j.contains_ideal(&fq)?
        && sat.contains_ideal(&q)?
        && sat.quotient_by_poly(&f)?.ideal_equal(&sat)?;
    out.check(laws, || format!("quotient or saturation law fails for J = {j}, f = {f}"));

    // Intersection and dimension against the combinatorial oracle.
    let other = MonomialIdeal::new(ring, (0..rng.gen_range(1..=3)).map(|_| random_monomial(&mut rng, fx.nvars(), 3)).collect());
    let engine = i.intersect(&other.to_ideal())?;
    let oracle = fx.mono.intersect(&other).to_ideal();
    out.check(engine.ideal_equal(&oracle)?, || format!("intersection with {} disagrees with lcm rule", other.render()));
    out.check(i.dim() == fx.mono.dim(), || format!("dim {} vs oracle {}", i.dim(), fx.mono.dim()));
    Ok(())
}

fn dimfilter(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let mut rng = seed.rng();
    let ass = fx.mono.ass()?;
    let n = fx.nvars();
    for _ in 0..2 {
        let x = random_element(fx.ring(), &mut rng);
        let engine = max_assoc_dim_containing(&x, &fx.module)?;
        let oracle = ass.iter().filter(|p| member_of_monomial_prime(&x, p)).map(|p| p.dim(n)).max().unwrap_or(-1);
        out.check(engine == oracle, || format!("x = {x}: filter gives {engine}, associated primes give {oracle}"));
        out.bump("pairs");
    }
    Ok(())
}

/// Literal reducing condition from explicit associated primes, with the
/// equality threshold `dim R/P = d - i`, for steps `i ≤ min(r, d - 1)`.
fn literal_reducing(fx: &Fixture, xs: &ParamSequence) -> Result<bool, Error> {
    let d = fx.d();
    let n = fx.nvars();
    let ms = monomials_of(xs);
    let steps = xs.len().min((d - 1).max(0) as usize);
    for i in 1..=steps {
        let j = fx.mono.with_monomials(&ms[..i - 1]);
        let x = &xs.elems()[i - 1];
        if ass_of(&j)?.iter().any(|p| p.dim(n) == d - i as i64 && member_of_monomial_prime(x, p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn def1(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let d = fx.d();
    if d < 1 {
        out.skipped += 1;
        return Ok(());
    }
    let mut rng = seed.rng();
    for _ in 0..2 {
        let r = rng.gen_range(1..=d as usize);
        let Some(xs) = monomial_sop_part(fx, r, &mut rng, 40)? else {
            out.skipped += 1;
            continue;
        };
        let v = is_reducing_prefix(&xs, &fx.module)?;
        let literal = literal_reducing(fx, &xs)?;
        out.bump(if literal { "reducing" } else { "not_reducing" });
        out.check(v.holds == literal, || format!("({xs}): engine says {}, literal check says {literal}", v.holds));
        if let Some(redsop_core::Violation::Reducing(w)) = &v.violation {
            if let Some(p) = &w.prime {
                let j = fx.mono.with_monomials(&monomials_of(&xs)[..w.index - 1]);
                let ok = ass_of(&j)?.contains(p)
                    && member_of_monomial_prime(&xs.elems()[w.index - 1], p)
                    && p.dim(fx.nvars()) >= w.threshold;
                out.check(ok, || format!("({xs}): reported prime {} is not an offending associated prime", p.render(fx.ring())));
            }
        }
    }
    Ok(())
}

fn t11(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let one_shot = is_cm_theorem11(&fx.module, seed.derive(1), DEFAULT_RETRIES)?.is_cm;
    let depth = is_cm_depth(&fx.module, seed.derive(2), DEFAULT_RETRIES)?;
    out.bump(if depth { "cm" } else { "not_cm" });
    out.check(one_shot == depth, || format!("one-shot test says {one_shot}, depth oracle says {depth}"));
    Ok(())
}

fn rem6(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let d = fx.d();
    let cm = is_cm_depth(&fx.module, seed.derive(1), DEFAULT_RETRIES)?;
    out.bump(if cm { "cm" } else { "not_cm" });
    if d >= 1 {
        let xs = random_sop(&fx.module, seed.derive(2), DEFAULT_RETRIES)?;
        let reg = is_regular_sequence(&xs, &fx.module)?;
        out.check(reg == cm, || format!("sop ({xs}) regular = {reg} but CM = {cm}"));
    }
    if cm && d >= 2 {
        let mut rng = seed.derive(3).rng();
        for _ in 0..2 {
            let r = rng.gen_range(1..d as usize);
            let xs = monomial_sequence(fx, r, &mut rng);
            let part = is_part_of_sop(&xs, &fx.module)?;
            let reg = is_regular_sequence(&xs, &fx.module)?;
            let red = is_part_of_reducing_sop(&xs, &fx.module)?.holds;
            out.bump(if part { "parts" } else { "non_parts" });
            out.check(part == reg && reg == red, || format!("({xs}): part = {part}, regular = {reg}, reducing part = {red}"));
        }
    }
    Ok(())
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

fn cor15(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let m = &fx.module;
    if fx.index.is_none() {
        // The worked example: order matters when r = d.
        let fwd = ParamSequence::parse(fx.ring(), "Y; X+Y+Z")?;
        let rev = ParamSequence::parse(fx.ring(), "X+Y+Z; Y")?;
        let (a, b) = (is_reducing_sop(&fwd, m)?.holds, is_reducing_sop(&rev, m)?.holds);
        out.check(!a && b, || format!("expected (Y; X+Y+Z) not reducing and its reverse reducing, got {a} and {b}"));
        out.bump("pinned_order_dependence");
        return Ok(());
    }
    // Permutations only matter for r ≥ 2, which needs d ≥ 3.
    let d = fx.d();
    if d < 3 {
        out.skipped += 1;
        return Ok(());
    }
    let mut rng = seed.rng();
    for k in 0..12 {
        let r = rng.gen_range(2..d as usize);
        let xs = match k % 3 {
            0 => ParamSequence::new((0..r).map(|_| random_linear_form(fx.ring(), &mut rng)).collect())?,
            1 => {
                let elems = (0..r)
                    .map(|_| if rng.gen_bool(0.5) { random_linear_form(fx.ring(), &mut rng) } else { random_element(fx.ring(), &mut rng) })
                    .collect();
                ParamSequence::new(elems)?
            }
            _ => monomial_sequence(fx, r, &mut rng),
        };
        let base = is_part_of_reducing_sop(&xs, m)?.holds;
        out.bump(if base { "reducing_parts" } else { "non_reducing_parts" });
        for p in permutations(r).into_iter().skip(1) {
            let ys = xs.permuted(&p);
            let v = is_part_of_reducing_sop(&ys, m)?.holds;
            out.check(v == base, || format!("({xs}) reducing part = {base} but permutation ({ys}) gives {v}"));
        }
    }
    Ok(())
}

fn monomial_primes_over(fx: &Fixture, j: &MonomialIdeal, dim: i64) -> Vec<MonomialPrime> {
    let n = fx.nvars();
    all_monomial_primes(n).filter(|p| p.dim(n) == dim && j.contained_in_prime(p)).collect()
}

fn t14(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let d = fx.d();
    if d < 2 {
        out.skipped += 1;
        return Ok(());
    }
    let mut rng = seed.rng();
    for k in 0..2 {
        let r = rng.gen_range(1..d as usize);
        match monomial_sop_part(fx, r, &mut rng, 40)? {
            Some(xs) => t14_instance(fx, &xs, seed.derive(k), &mut rng, out)?,
            None => out.skipped += 1,
        }
    }
    Ok(())
}

fn t14_instance(fx: &Fixture, xs: &ParamSequence, seed: RngSeed, rng: &mut ChaCha8Rng, out: &mut Outcome) -> Result<(), Error> {
    let m = &fx.module;
    let d = fx.d();
    let r = xs.len();
    let verdict = is_part_of_reducing_sop(xs, m)?.holds;
    let j = fx.mono.with_monomials(&monomials_of(xs));
    let mut locus = true;
    let mut bad = None;
    for (k, p) in monomial_primes_over(fx, &j, d - r as i64).into_iter().enumerate() {
        let e = cm_membership_monomial(&p, m, seed.derive(100 + k as u64), DEFAULT_RETRIES)?;
        if !(e.is_member() && e.r == r as i64) {
            locus = false;
            bad = Some(p.render(fx.ring()));
            break;
        }
    }
    out.bump(if verdict { "positive" } else { "negative" });
    out.check(verdict == locus, || {
        format!("({xs}): reducing part = {verdict}, locus condition = {locus}{}", bad.map(|p| format!(" (fails at {p})")).unwrap_or_default())
    });
    // The equivalence probe: a random generator change of (xs) can be made
    // reducing exactly when the locus condition holds.
    let ys = random_graded_transform(xs, rng);
    let made = match make_reducing_part(&ys, m, seed.derive(7), DEFAULT_RETRIES) {
        Ok(zs) => {
            out.check(zs.ideal(fx.ring()).ideal_equal(&xs.ideal(fx.ring()))?, || format!("({zs}) changed the ideal of ({xs})"));
            true
        }
        Err(Error::RetriesExhausted { .. }) => false,
        Err(e) => return Err(e),
    };
    out.check(made == locus, || format!("transform of ({xs}): construction succeeded = {made}, locus condition = {locus}"));
    Ok(())
}

/// The image of a monomial sequence in `M_P`, presented over `P`'s variables.
fn localize_sequence(xs: &ParamSequence, p: &MonomialPrime, local: &MonomialIdeal) -> Result<ParamSequence, Error> {
    let elems = monomials_of(xs).iter().map(|m| Polynomial::monomial(local.ring(), m.select(p.vars()))).collect();
    ParamSequence::new(elems)
}

fn lem7(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let d = fx.d();
    if d < 1 {
        out.skipped += 1;
        return Ok(());
    }
    let mut rng = seed.rng();
    for _ in 0..2 {
        let r = rng.gen_range(1..=d as usize);
        match monomial_sop_part(fx, r, &mut rng, 40)? {
            Some(xs) => lem7_instance(fx, &xs, out)?,
            None => out.skipped += 1,
        }
    }
    Ok(())
}

fn lem7_instance(fx: &Fixture, xs: &ParamSequence, out: &mut Outcome) -> Result<(), Error> {
    let d = fx.d();
    let reducing = is_reducing_prefix(xs, &fx.module)?.holds;
    out.bump(if reducing { "reducing" } else { "not_reducing" });
    let n = fx.nvars();
    let j = fx.mono.with_monomials(&monomials_of(xs));
    for p in all_monomial_primes(n).filter(|p| p.height() > 0 && j.contained_in_prime(p)) {
        let local = fx.mono.localize(&p)?;
        let lm = CyclicModule::new(local.to_ideal())?;
        if p.dim(n) + lm.dim() != d {
            continue;
        }
        let ls = localize_sequence(xs, &p, &local)?;
        let at = p.render(fx.ring());
        if ls.len() as i64 > lm.dim() {
            out.check(false, || format!("({xs}) at {at}: {} elements exceed dim M_P = {}", ls.len(), lm.dim()));
            continue;
        }
        let part = is_part_of_sop(&ls, &lm)?;
        out.check(part, || format!("({xs}) at {at}: ({ls}) is not part of a sop of M_P"));
        if reducing && part {
            let red = is_reducing_prefix(&ls, &lm)?.holds;
            out.check(red, || format!("({xs}) is reducing but ({ls}) is not reducing on M_P at {at}"));
        }
    }
    Ok(())
}

fn lem8(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let mut rng = seed.rng();
    let ass = fx.mono.ass()?;
    let mut found = 0;
    for _ in 0..20 {
        if found == 2 {
            break;
        }
        let xm = random_monomial(&mut rng, fx.nvars(), 2);
        let x = Polynomial::monomial(fx.ring(), xm.clone());
        if max_assoc_dim_containing(&x, &fx.module)? < 0 {
            continue;
        }
        found += 1;
        let containing: Vec<&MonomialPrime> = ass.iter().filter(|p| p.contains_monomial(&xm)).collect();
        let minimal: Vec<MonomialPrime> = containing
            .iter()
            .filter(|p| !containing.iter().any(|q| q != *p && q.is_subset_of(p)))
            .map(|p| (*p).clone())
            .collect();
        let after = ass_of(&fx.mono.with_monomials(std::slice::from_ref(&xm)))?;
        out.check(minimal.iter().all(|p| after.contains(p)), || {
            format!("x = {x}: minimal primes {{{}}} not all in Ass of I + (x) = {{{}}}", show(fx.ring(), &minimal), show(fx.ring(), &after))
        });
    }
    if found == 0 {
        out.skipped += 1;
    }
    Ok(())
}

/// A homogeneous element of `√J` for monomial `J`: combinations of the
/// squarefree parts of `J`'s generators, padded to a common degree.
fn radical_element(j: &MonomialIdeal, rng: &mut ChaCha8Rng) -> Polynomial {
    let ring = j.ring();
    let n = ring.nvars();
    let rad: Vec<Monomial> =
        j.gens().iter().map(|m| Monomial::new(&m.exps().iter().map(|&e| e.min(1)).collect::<Vec<_>>())).collect();
    let k = rng.gen_range(1..=rad.len().min(2));
    let picks: Vec<&Monomial> = rad.choose_multiple(rng, k).collect();
    let deg = picks.iter().map(|m| m.degree()).max().expect("nonempty") + rng.gen_range(0..=1);
    let mut y = Polynomial::zero(ring);
    for m in picks {
        let mut pad = vec![0u16; n];
        for _ in 0..deg - m.degree() {
            pad[rng.gen_range(0..n)] += 1;
        }
        let term = Polynomial::monomial(ring, m.mul(&Monomial::new(&pad)));
        y = &y + &term.scale(&ring.field().random_nonzero(rng));
    }
    y
}

fn rem13(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let d = fx.d();
    if d < 1 {
        out.skipped += 1;
        return Ok(());
    }
    let mut rng = seed.rng();
    for _ in 0..2 {
        let r = rng.gen_range(1..=d as usize);
        let xs = monomial_sequence(fx, r, &mut rng);
        let j = fx.mono.with_monomials(&monomials_of(&xs));
        let rad_of = fx.module.ideal().with_gens(xs.elems())?;
        let mut ys = Vec::with_capacity(r);
        while ys.len() < r {
            let y = radical_element(&j, &mut rng);
            if !y.is_zero() {
                ys.push(y);
            }
        }
        let ys = ParamSequence::new(ys)?;
        let in_radical = ys.elems().iter().map(|y| rad_of.radical_contains(y)).collect::<Result<Vec<_>, _>>()?;
        out.check(in_radical.iter().all(|&b| b), || format!("sampled ({ys}) not in the radical of I + ({xs})"));
        let ys_part = is_part_of_sop(&ys, &fx.module)?;
        let xs_part = is_part_of_sop(&xs, &fx.module)?;
        out.bump(if ys_part { "premise_holds" } else { "premise_fails" });
        out.check(!ys_part || xs_part, || format!("({ys}) is part of a sop but ({xs}) is not"));
    }
    Ok(())
}

fn rem18(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let m = &fx.module;
    let d = fx.d();
    let n = fx.nvars();
    let primes_of = |entries: Vec<redsop_core::CmLocusEntry>| -> Vec<MonomialPrime> {
        entries.into_iter().filter_map(|e| e.monomial_prime().cloned()).collect()
    };
    let mut cm0 = primes_of(cm_locus_monomial_r(m, 0, seed.derive(1), DEFAULT_RETRIES)?);
    let mut assh = fx.mono.assh()?;
    cm0.sort();
    assh.sort();
    out.check(cm0 == assh, || format!("CM_0 = {{{}}} but Assh = {{{}}}", show(fx.ring(), &cm0), show(fx.ring(), &assh)));
    if d >= 1 {
        let mut cm1 = primes_of(cm_locus_monomial_r(m, 1, seed.derive(2), DEFAULT_RETRIES)?);
        let ass = fx.mono.ass()?;
        let mut formula: Vec<MonomialPrime> = all_monomial_primes(n)
            .filter(|p| p.dim(n) == d - 1 && fx.mono.contained_in_prime(p) && !ass.contains(p))
            .collect();
        cm1.sort();
        formula.sort();
        out.check(cm1 == formula, || format!("CM_1 = {{{}}} but formula gives {{{}}}", show(fx.ring(), &cm1), show(fx.ring(), &formula)));
    }
    let cm = is_cm_depth(m, seed.derive(3), DEFAULT_RETRIES)?;
    let maximal = cm_membership_monomial(&MonomialPrime::maximal(n), m, seed.derive(4), DEFAULT_RETRIES)?.is_member();
    out.bump(if cm { "cm" } else { "not_cm" });
    out.check(cm == maximal, || format!("CM = {cm} but maximal ideal membership = {maximal}"));
    Ok(())
}

fn prop19(fx: &Fixture, seed: RngSeed, out: &mut Outcome) -> Result<(), Error> {
    let m = &fx.module;
    let d = fx.d();
    let n = fx.nvars();
    let candidates: Vec<MonomialPrime> =
        all_monomial_primes(n).filter(|p| p.height() > 0 && fx.mono.contained_in_prime(p) && p.dim(n) > 0).collect();
    for (k, p) in candidates.into_iter().enumerate() {
        let r = d - p.dim(n);
        let exact = cm_membership_monomial(&p, m, seed.derive(2 * k as u64), DEFAULT_RETRIES)?;
        let general = cm_membership_general(&p.to_ideal(fx.ring()), m, seed.derive(2 * k as u64 + 1), DEFAULT_RETRIES)?;
        let at = p.render(fx.ring());
        let exact_member = exact.is_member() && exact.r == r;
        if exact_member {
            out.bump("exact_members");
            out.check(general.status == LocusStatus::Member, || format!("{at} is in CM_{r} but construction gave {}", general.status));
        }
        if general.status == LocusStatus::Member {
            out.bump("certificates");
            out.check(exact_member, || format!("{at} has a constructive certificate but the exact test says {}", exact.status));
        }
        out.check(general.status != LocusStatus::NonMember, || format!("{at} contains I but was declared a non-member"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CorpusSpec {
        CorpusSpec { nvars: 3, count: 12, seed: 5, ..Default::default() }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(check_theorems(&["nope".into()], &small()), Err(SuiteError::Unknown(_))));
    }

    #[test]
    fn every_suite_passes_on_a_small_corpus() {
        let r = check_theorems(&[], &small()).unwrap();
        for s in &r.suites {
            assert!(s.ok(), "{}", r.render_human());
        }
        assert!(r.all_passed);
    }

    #[test]
    fn pinned_worked_example_in_cor15() {
        let fx = worked_example();
        let r = run_suite("cor15", &[], 1).unwrap();
        assert_eq!(r.fixtures, 1);
        assert_eq!(r.metric("pinned_order_dependence"), 1);
        assert!(r.ok());
        assert_eq!(fx.d(), 2);
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(1), vec![vec![0]]);
    }
}
