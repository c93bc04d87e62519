//! Command dispatch: one session document in, one report out.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use redsop_core::locus::{cm_locus_monomial_r, cm_membership_general, cm_membership_monomial};
use redsop_core::monomial_oracle::MonomialIdeal;
use redsop_core::sop::{
    depth_oracle, is_cm_theorem11, is_part_of_reducing_sop, is_part_of_sop, is_reducing_prefix, is_reducing_sop,
    is_regular_sequence, make_reducing, make_reducing_part,
};
use redsop_core::{CyclicModule, Error, Ideal, LocusStatus, MonomialPrime, ParamSequence, PolyRing, RngSeed, DEFAULT_RETRIES};

use crate::corpus::CorpusSpec;
use crate::report::{strings, CertificateReport, LocusEntryReport, Payload, Status, ViolationReport, SCHEMA_VERSION};
use crate::session::{CmMethod, CommandSpec, SessionError, SessionInput};
use crate::suites::{check_theorems, SuiteError};

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Used when the session has no `seed` line.
    pub default_seed: u64,
    pub timings: bool,
    pub max_retries: u32,
    /// Corpus bounds for `check-theorems`; count and seed may be overridden.
    pub corpus: CorpusSpec,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { default_seed: DEFAULT_SEED, timings: false, max_retries: DEFAULT_RETRIES, corpus: CorpusSpec::default() }
    }
}

struct Failure {
    status: Status,
    message: String,
}

impl From<SessionError> for Failure {
    fn from(e: SessionError) -> Failure {
        let status = match &e {
            SessionError::Algebra { source: Error::RetriesExhausted { .. }, .. } => Status::Inconclusive,
            _ => Status::InputError,
        };
        Failure { status, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::RetriesExhausted { .. } => Status::Inconclusive,
            _ => Status::InputError,
        };
        Failure { status, message: e.to_string() }
    }
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Failure {
        Failure { status: Status::InputError, message: e.to_string() }
    }
}

fn module(ideal: Ideal) -> Result<CyclicModule, Failure> {
    CyclicModule::new(ideal).map_err(|e| match e {
        Error::ZeroModule => Failure { status: Status::InputError, message: "the ideal is the unit ideal, so M = 0".into() },
        other => other.into(),
    })
}

fn monomial(ideal: &Ideal, what: &str) -> Result<MonomialIdeal, Failure> {
    MonomialIdeal::from_ideal(ideal)
        .map_err(|_| Failure { status: Status::InputError, message: format!("{what} requires a monomial ideal") })
}

/// The monomial prime generated by variables, when `p` is one.
fn as_monomial_prime(p: &Ideal) -> Option<MonomialPrime> {
    let gb = p.gb();
    let vars: Option<Vec<usize>> = gb
        .iter()
        .map(|g| {
            let (m, _) = g.terms().first()?;
            (g.len() == 1 && m.degree() == 1).then(|| m.support().next().expect("degree one"))
        })
        .collect();
    vars.filter(|v| !v.is_empty()).map(MonomialPrime::new)
}

fn sequence_check(property: &str, xs: &ParamSequence, m: &CyclicModule, v: redsop_core::Verdict) -> Payload {
    Payload::SequenceCheck {
        property: property.to_string(),
        holds: v.holds,
        r: xs.len(),
        d: m.dim(),
        violation: v.violation.as_ref().map(|w| ViolationReport::from_violation(w, m.ring())),
    }
}

fn dispatch(input: &SessionInput, cmd: &CommandSpec, seed: RngSeed, opts: &RunOptions) -> Result<(Status, Payload), Failure> {
    let retries = opts.max_retries;
    if let CommandSpec::CheckTheorems { suites, count } = cmd {
        let spec = CorpusSpec { count: count.unwrap_or(opts.corpus.count), seed: seed.0, ..opts.corpus.clone() };
        let report = check_theorems(suites, &spec)?;
        let status = if report.all_passed { Status::Determinate } else { Status::InvariantBreach };
        return Ok((status, Payload::Theorems(report)));
    }
    let ring: Arc<PolyRing> = input.ring()?;
    let ideal = input.build_ideal(&ring)?;
    let ok = |p: Payload| Ok((Status::Determinate, p));
    match cmd {
        CommandSpec::Dim => ok(Payload::Dim { dim: ideal.dim(), groebner_basis: ideal.basis_strings() }),
        CommandSpec::Ass => {
            let mi = monomial(&ideal, "ass")?;
            if mi.is_unit() {
                return ok(Payload::Ass { primes: vec![], assh: vec![], irreducible_components: vec![] });
            }
            let render = |ps: Vec<MonomialPrime>| ps.iter().map(|p| p.render(&ring)).collect();
            ok(Payload::Ass {
                primes: render(mi.ass()?),
                assh: render(mi.assh()?),
                irreducible_components: mi.irreducible_decomposition()?.iter().map(|c| c.to_ideal(&ring).to_string()).collect(),
            })
        }
        CommandSpec::IsSop { seq } => {
            let m = module(ideal)?;
            let xs = input.resolve_sequence(&ring, seq)?;
            let holds = is_part_of_sop(&xs, &m)?;
            let property = if xs.len() as i64 == m.dim() { "sop" } else { "part-of-sop" };
            ok(Payload::SequenceCheck { property: property.into(), holds, r: xs.len(), d: m.dim(), violation: None })
        }
        CommandSpec::IsReducingSop { seq } => {
            let m = module(ideal)?;
            let xs = input.resolve_sequence(&ring, seq)?;
            let v = is_reducing_sop(&xs, &m)?;
            ok(sequence_check("reducing-sop", &xs, &m, v))
        }
        CommandSpec::IsPartReducing { seq } => {
            let m = module(ideal)?;
            let xs = input.resolve_sequence(&ring, seq)?;
            let v = is_part_of_reducing_sop(&xs, &m)?;
            ok(sequence_check("part-of-reducing-sop", &xs, &m, v))
        }
        CommandSpec::MakeReducing { seq } => {
            let m = module(ideal)?;
            let xs = input.resolve_sequence(&ring, seq)?;
            let full = xs.len() as i64 == m.dim();
            let ys = if full { make_reducing(&xs, &m, seed, retries)? } else { make_reducing_part(&xs, &m, seed, retries)? };
            let verified = is_reducing_prefix(&ys, &m)?.holds && ys.ideal(&ring).ideal_equal(&xs.ideal(&ring))?;
            let status = if verified { Status::Determinate } else { Status::InvariantBreach };
            Ok((status, Payload::MadeReducing { input: strings(xs.elems()), output: strings(ys.elems()), full, verified }))
        }
        CommandSpec::IsRegularSequence { seq } => {
            let m = module(ideal)?;
            let xs = input.resolve_sequence(&ring, seq)?;
            let mut j = m.ideal().clone();
            let mut failing_index = None;
            for (i, x) in xs.elems().iter().enumerate() {
                if !j.contains_ideal(&j.quotient_by_poly(x)?)? {
                    failing_index = Some(i + 1);
                    break;
                }
                j = j.with_gens(std::slice::from_ref(x))?;
            }
            let final_quotient_zero = failing_index.is_none() && j.is_unit();
            let holds = failing_index.is_none() && !final_quotient_zero;
            let status = if holds == is_regular_sequence(&xs, &m)? { Status::Determinate } else { Status::InvariantBreach };
            Ok((status, Payload::RegularSequence { holds, failing_index, final_quotient_zero }))
        }
        CommandSpec::IsCm { method } => {
            let m = module(ideal)?;
            let (mut t11, mut depth, mut reducing_sop, mut regular_sequence) = (None, None, None, None);
            if matches!(method, CmMethod::T11 | CmMethod::Both) {
                let cert = is_cm_theorem11(&m, seed.derive(1), retries)?;
                t11 = Some(cert.is_cm);
                reducing_sop = Some(strings(cert.reducing_sop.elems()));
            }
            if matches!(method, CmMethod::Depth | CmMethod::Both) {
                let cert = depth_oracle(&m, seed.derive(2), retries)?;
                depth = Some(cert.depth as i64);
                regular_sequence = Some(strings(&cert.regular_sequence));
            }
            let agree = match (t11, depth) {
                (Some(t), Some(dp)) => Some(t == (dp == m.dim())),
                _ => None,
            };
            let status = if agree == Some(false) { Status::InvariantBreach } else { Status::Determinate };
            Ok((status, Payload::Cm { dim: m.dim(), t11, depth, agree, reducing_sop, regular_sequence }))
        }
        CommandSpec::Depth => {
            let m = module(ideal)?;
            let cert = depth_oracle(&m, seed, retries)?;
            ok(Payload::Depth { depth: cert.depth as i64, dim: m.dim(), regular_sequence: strings(&cert.regular_sequence) })
        }
        CommandSpec::CmMember { prime } => {
            let m = module(ideal)?;
            let p = input.resolve_prime(&ring, prime)?;
            let entry = match (as_monomial_prime(&p), MonomialIdeal::from_ideal(m.ideal())) {
                (Some(mp), Ok(_)) => cm_membership_monomial(&mp, &m, seed, retries)?,
                _ => cm_membership_general(&p, &m, seed, retries)?,
            };
            let status = if entry.status == LocusStatus::Inconclusive { Status::Inconclusive } else { Status::Determinate };
            Ok((status, Payload::CmMember { entry: LocusEntryReport::from_entry(&entry, &ring) }))
        }
        CommandSpec::CmLocus { r } => {
            let m = module(ideal)?;
            monomial(m.ideal(), "cm-locus")?;
            let entries = cm_locus_monomial_r(&m, *r, seed, retries)?;
            ok(Payload::CmLocus { r: *r, entries: entries.iter().map(|e| LocusEntryReport::from_entry(e, &ring)).collect() })
        }
        CommandSpec::CheckTheorems { .. } => unreachable!("handled above"),
    }
}

/// Runs the document's command. Never panics on bad input: failures become
/// reports with an error payload and the matching status.
pub fn run_command(input: &SessionInput, opts: &RunOptions) -> CertificateReport {
    let seed = input.seed.unwrap_or(opts.default_seed);
    let start = Instant::now();
    let (status, result) = match &input.command {
        None => (Status::Determinate, Payload::NoCommand),
        Some(cmd) => match dispatch(input, cmd, RngSeed(seed), opts) {
            Ok(r) => r,
            Err(f) => (f.status, Payload::Error { message: f.message }),
        },
    };
    let timings_ms = opts.timings.then(|| BTreeMap::from([("total".to_string(), start.elapsed().as_secs_f64() * 1e3)]));
    CertificateReport {
        schema: SCHEMA_VERSION.to_string(),
        command: input.command.as_ref().map(|c| c.render()).unwrap_or_default(),
        input: input.clone(),
        seed,
        status,
        result,
        timings_ms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_session;

    fn run(text: &str) -> CertificateReport {
        run_command(&parse_session(text).unwrap()[0], &RunOptions::default())
    }

    const EX: &str = "ring [X,Y,Z] p=32003\nideal XY, XZ\n";

    #[test]
    fn reducing_witness_for_the_worked_example() {
        let r = run(&format!("{EX}is-reducing-sop \"Y; X+Y+Z\""));
        assert_eq!(r.status, Status::Determinate);
        match r.result {
            Payload::SequenceCheck { holds: false, violation: Some(ViolationReport::Reducing { index, ideal, dim, .. }), .. } => {
                assert_eq!((index, ideal.as_str(), dim), (1, "(Y, Z)", 1));
            }
            other => panic!("{other:?}"),
        }
        let r = run(&format!("{EX}is-reducing-sop \"X+Y+Z; Y\""));
        assert!(matches!(r.result, Payload::SequenceCheck { holds: true, .. }));
    }

    #[test]
    fn both_cm_methods() {
        let r = run(&format!("{EX}is-cm both"));
        assert_eq!(r.status, Status::Determinate);
        match r.result {
            Payload::Cm { dim, t11, depth, agree, .. } => {
                assert_eq!((dim, t11, depth, agree), (2, Some(false), Some(1), Some(true)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_classes() {
        assert_eq!(run(&format!("{EX}is-sop \"X^2 + Y\"")).status, Status::InputError);
        assert_eq!(run("ring [X,Y]\nideal X+Y^2\ndepth").status, Status::InputError);
        assert_eq!(run("ring [X,Y]\nideal X+Y\nass").status, Status::InputError);
        assert_eq!(run("ring [X,Y]\nideal 1\ndepth").status, Status::InputError);
        assert_eq!(run(&format!("{EX}is-sop \"X; Q\"")).status, Status::InputError);
        assert_eq!(run(&format!("{EX}make-reducing \"Y\"")).status, Status::Inconclusive);
        assert_eq!(run(&format!("{EX}cm-member \"Y, Z\"")).status, Status::Determinate);
        assert_eq!(run(&format!("{EX}cm-member \"Y+X, Z\"")).status, Status::Determinate);
    }

    #[test]
    fn locus_and_membership() {
        let r = run(&format!("{EX}cm-locus 1"));
        match r.result {
            Payload::CmLocus { entries, .. } => {
                let ps: Vec<&str> = entries.iter().map(|e| e.prime.as_str()).collect();
                assert_eq!(ps, ["(X, Y)", "(X, Z)"]);
            }
            other => panic!("{other:?}"),
        }
        let r = run("ring [X,Y,Z]\nprime P = X+Y, Z\ncm-member P");
        match r.result {
            Payload::CmMember { entry } => assert_eq!((entry.status, entry.r, entry.monomial), (LocusStatus::Member, 2, false)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn regular_sequence_index() {
        let r = run(&format!("{EX}is-regular-sequence \"X+Y+Z; Y\""));
        assert_eq!(r.result, Payload::RegularSequence { holds: false, failing_index: Some(2), final_quotient_zero: false });
    }

    #[test]
    fn same_seed_same_bytes() {
        let text = format!("{EX}seed 9\nmake-reducing \"Y; X+Y+Z\"");
        assert_eq!(run(&text).to_json(), run(&text).to_json());
    }
}
