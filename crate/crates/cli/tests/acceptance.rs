//! Acceptance criteria A1-A11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use redsop_cli::report::Payload;
use redsop_cli::suites::{build_fixtures, run_suite, worked_example, Fixture};
use redsop_cli::{check_theorems, parse_session, run_command, CorpusSpec, RunOptions};
use redsop_core::locus::cm_membership_general;
use redsop_core::sop::{is_part_of_sop, is_reducing_sop, is_regular_sequence};
use redsop_core::{Ideal, LocusStatus, ParamSequence, Violation, DEFAULT_PRIME, DEFAULT_RETRIES};

const SEED: u64 = 20_240_601;

fn corpus(count: usize) -> CorpusSpec {
    CorpusSpec { nvars: 4, min_nvars: 2, max_generators: 6, max_degree: 4, squarefree: false, count, seed: SEED, allow_large: false }
}

struct Line {
    id: &'static str,
    ok: bool,
    detail: String,
}

fn a1() -> Line {
    let start = Instant::now();
    let fx = worked_example();
    let m = &fx.module;
    let seq = |s: &str| ParamSequence::parse(m.ring(), s).unwrap();
    let sop = is_part_of_sop(&seq("Y; X+Y+Z"), m).unwrap();
    let fwd = is_reducing_sop(&seq("Y; X+Y+Z"), m).unwrap();
    let witness_ok = match &fwd.violation {
        Some(Violation::Reducing(w)) => {
            w.index == 1 && w.dim == 1 && w.witness == Ideal::parse(m.ring(), &["Y", "Z"]).unwrap()
        }
        _ => false,
    };
    let rev = is_reducing_sop(&seq("X+Y+Z; Y"), m).unwrap().holds;
    let reg = is_regular_sequence(&seq("X+Y+Z; Y"), m).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = sop && !fwd.holds && witness_ok && rev && !reg && elapsed < 1.0;
    Line {
        id: "A1",
        ok,
        detail: format!(
            "sop={sop} reducing(Y; X+Y+Z)={} witness (Y, Z) dim 1: {witness_ok} reducing(X+Y+Z; Y)={rev} regular={reg} in {elapsed:.3}s",
            fwd.holds
        ),
    }
}

fn suite_line(id: &'static str, suite: &str, fixtures: &[Fixture], min: usize, count: impl Fn(&redsop_cli::SuiteReport) -> usize) -> Line {
    let start = Instant::now();
    let r = run_suite(suite, fixtures, SEED).unwrap();
    let n = count(&r);
    let ok = r.ok() && n >= min;
    let mut detail = format!(
        "{suite}: {n} instances (need ≥{min}), {}/{} checks passed, {} violations in {:.1}s",
        r.passed,
        r.checked,
        r.violations,
        start.elapsed().as_secs_f64()
    );
    if let Some(c) = &r.first_counterexample {
        detail.push_str(&format!("; first counterexample: {}", c.detail));
    }
    Line { id, ok, detail }
}

fn a2(fixtures: &[Fixture]) -> Line {
    let start = Instant::now();
    let mut l = suite_line("A2", "t11", fixtures, 200, |r| r.checked);
    let secs = start.elapsed().as_secs_f64();
    l.ok &= secs < 180.0;
    l.detail.push_str(&format!(" (limit 180s, characteristic {DEFAULT_PRIME})"));
    l
}

fn a5(fixtures: &[Fixture]) -> Line {
    let mut l = suite_line("A5", "cor15", fixtures, 100, |r| r.metric("reducing_parts"));
    let pinned = run_suite("cor15", &[], SEED).unwrap();
    let order_ok = pinned.ok() && pinned.metric("pinned_order_dependence") == 1;
    l.ok &= order_ok;
    l.detail.push_str(&format!("; worked example order dependence reproduced: {order_ok}"));
    l
}

fn a7(fixtures: &[Fixture]) -> Line {
    let l8 = suite_line("A7", "lem8", fixtures, 100, |r| r.checked);
    let l7 = suite_line("A7", "lem7", fixtures, 100, |r| r.metric("reducing") + r.metric("not_reducing"));
    Line { id: "A7", ok: l8.ok && l7.ok, detail: format!("{} | {}", l8.detail, l7.detail) }
}

fn a9(fixtures: &[Fixture]) -> Line {
    let mut l = suite_line("A9", "prop19", &fixtures[..100], 50, |r| r.fixtures_checked);
    let fx = worked_example();
    let p = Ideal::parse(fx.ring(), &["X", "Y"]).unwrap();
    let e = cm_membership_general(&p, &fx.module, redsop_core::RngSeed(SEED), DEFAULT_RETRIES).unwrap();
    let pinned = run_suite("prop19", &[], SEED).unwrap();
    let ok = e.status == LocusStatus::Member && e.r == 1 && pinned.ok() && pinned.metric("certificates") >= 2;
    l.ok &= ok;
    l.detail.push_str(&format!("; worked example (X, Y) certified in CM_1: {ok}"));
    l
}

fn a11() -> Line {
    let spec = CorpusSpec { count: 40, ..corpus(40) };
    let a = serde_json::to_string(&check_theorems(&[], &spec).unwrap()).unwrap();
    let b = serde_json::to_string(&check_theorems(&[], &spec).unwrap()).unwrap();
    let text = "ring [X,Y,Z] p=32003\nideal XY, XZ\nseed 3\nmake-reducing \"Y; X+Y+Z\"\n";
    let doc = &parse_session(text).unwrap()[0];
    let r1 = run_command(doc, &RunOptions::default());
    let r2 = run_command(doc, &RunOptions::default());
    let made = matches!(r1.result, Payload::MadeReducing { verified: true, .. });
    let ok = a == b && r1.to_json() == r2.to_json() && made;
    Line {
        id: "A11",
        ok,
        detail: format!("suite report {} bytes identical: {}; make-reducing report identical: {}", a.len(), a == b, r1.to_json() == r2.to_json()),
    }
}

fn main() -> ExitCode {
    let total = Instant::now();
    let fixtures = build_fixtures(&corpus(300)).expect("corpus builds");
    let lines = vec![
        a1(),
        a2(&fixtures[..200]),
        suite_line("A3", "dimfilter", &fixtures[..200], 200, |r| r.metric("pairs")),
        suite_line("A4", "def1", &fixtures, 100, |r| r.fixtures_checked),
        a5(&fixtures),
        suite_line("A6", "t14", &fixtures, 100, |r| r.metric("positive") + r.metric("negative")),
        a7(&fixtures),
        suite_line("A8", "rem18", &fixtures, 100, |r| r.fixtures_checked),
        a9(&fixtures),
        suite_line("A10", "kernel", &fixtures, 100, |r| r.metric("gb_trials")),
        a11(),
    ];
    let mut all = true;
    for l in &lines {
        all &= l.ok;
        println!("{:<4} {}  {}", l.id, if l.ok { "PASS" } else { "FAIL" }, l.detail);
    }
    println!("acceptance: {} ({:.1}s)", if all { "all criteria pass" } else { "FAILED" }, total.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
