//! Structured reports. Schema `redsop-report/1`; see `docs/report-schema.md`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use redsop_core::locus::{CmLocusEntry, LocusCertificate, LocusPrime};
use redsop_core::{Ideal, LocusStatus, PolyRing, Polynomial, Violation};
use serde::{Deserialize, Serialize};

use crate::session::SessionInput;
use crate::suites::TheoremsReport;

pub const SCHEMA_VERSION: &str = "redsop-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Determinate,
    Inconclusive,
    InputError,
    InvariantBreach,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Determinate => 0,
            Status::InputError => 2,
            Status::Inconclusive => 3,
            Status::InvariantBreach => 4,
        }
    }

    /// Severity for combining several reports into one exit code.
    pub fn severity(self) -> u8 {
        match self {
            Status::Determinate => 0,
            Status::Inconclusive => 1,
            Status::InputError => 2,
            Status::InvariantBreach => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ViolationReport {
    NotPartOfSop {
        index: usize,
        expected_dim: i64,
        actual_dim: i64,
    },
    Reducing {
        index: usize,
        threshold: i64,
        /// The torsion annihilator `(J : (J : x^∞))`, rendered.
        ideal: String,
        generators: Vec<String>,
        dim: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prime: Option<String>,
    },
}

impl ViolationReport {
    pub fn from_violation(v: &Violation, ring: &PolyRing) -> ViolationReport {
        match v {
            Violation::NotPartOfSop { index, expected_dim, actual_dim } => {
                ViolationReport::NotPartOfSop { index: *index, expected_dim: *expected_dim, actual_dim: *actual_dim }
            }
            Violation::Reducing(w) => ViolationReport::Reducing {
                index: w.index,
                threshold: w.threshold,
                ideal: w.witness.to_string(),
                generators: w.witness.basis_strings(),
                dim: w.dim,
                prime: w.prime.as_ref().map(|p| p.render(ring)),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LocusCertificateReport {
    Localized { prime_dim: i64, local_dim: i64, local_depth: i64 },
    Constructed { sequence: Vec<String>, quotient_dim: i64, primality_assumed: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusEntryReport {
    pub prime: String,
    pub prime_generators: Vec<String>,
    pub monomial: bool,
    pub r: i64,
    pub status: LocusStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<LocusCertificateReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

impl LocusEntryReport {
    pub fn from_entry(e: &CmLocusEntry, ring: &std::sync::Arc<PolyRing>) -> LocusEntryReport {
        let (prime, prime_generators, monomial) = match &e.prime {
            LocusPrime::Monomial(p) => {
                let ideal = p.to_ideal(ring);
                (p.render(ring), strings(ideal.gens()), true)
            }
            LocusPrime::General(i) => (i.to_string(), i.basis_strings(), false),
        };
        let certificate = e.certificate.as_ref().map(|c| match c {
            LocusCertificate::Localized { prime_dim, local_dim, local_depth } => LocusCertificateReport::Localized {
                prime_dim: *prime_dim,
                local_dim: *local_dim,
                local_depth: *local_depth,
            },
            LocusCertificate::Constructed { sequence, quotient_dim, primality_assumed } => {
                LocusCertificateReport::Constructed {
                    sequence: strings(sequence.elems()),
                    quotient_dim: *quotient_dim,
                    primality_assumed: *primality_assumed,
                }
            }
        });
        LocusEntryReport { prime, prime_generators, monomial, r: e.r, status: e.status, certificate, reason: e.reason.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Dim {
        dim: i64,
        groebner_basis: Vec<String>,
    },
    Ass {
        primes: Vec<String>,
        assh: Vec<String>,
        irreducible_components: Vec<String>,
    },
    SequenceCheck {
        property: String,
        holds: bool,
        r: usize,
        d: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        violation: Option<ViolationReport>,
    },
    MadeReducing {
        input: Vec<String>,
        output: Vec<String>,
        full: bool,
        verified: bool,
    },
    RegularSequence {
        holds: bool,
        /// 1-based position of the first zero-divisor, if any.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        failing_index: Option<usize>,
        final_quotient_zero: bool,
    },
    Cm {
        dim: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t11: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        depth: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        agree: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reducing_sop: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        regular_sequence: Option<Vec<String>>,
    },
    Depth {
        depth: i64,
        dim: i64,
        regular_sequence: Vec<String>,
    },
    CmMember {
        entry: LocusEntryReport,
    },
    CmLocus {
        r: i64,
        entries: Vec<LocusEntryReport>,
    },
    Theorems(TheoremsReport),
    Error {
        message: String,
    },
    NoCommand,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: String,
    pub command: String,
    pub input: SessionInput,
    pub seed: u64,
    pub status: Status,
    pub result: Payload,
    /// Wall-clock milliseconds per phase; only present when requested, so
    /// that reports stay byte-identical across runs by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl CertificateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<CertificateReport> {
        serde_json::from_str(text)
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn render_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "> {}", if self.command.is_empty() { "(no command)" } else { &self.command });
        let _ = match &self.result {
            Payload::Dim { dim, groebner_basis } => {
                writeln!(s, "dim R/I = {dim}\nreduced basis: {}", groebner_basis.join(", "))
            }
            Payload::Ass { primes, assh, irreducible_components } => writeln!(
                s,
                "Ass  = {{{}}}\nAssh = {{{}}}\nirreducible components: {}",
                primes.join(", "),
                assh.join(", "),
                irreducible_components.join(" ∩ ")
            ),
            Payload::SequenceCheck { property, holds, r, d, violation } => {
                let _ = writeln!(s, "{property}: {holds} (r = {r}, d = {d})");
                match violation {
                    Some(ViolationReport::NotPartOfSop { index, expected_dim, actual_dim }) => writeln!(
                        s,
                        "  prefix of length {index} leaves dimension {actual_dim}, expected {expected_dim}"
                    ),
                    Some(ViolationReport::Reducing { index, threshold, ideal, dim, prime, .. }) => {
                        let _ = writeln!(
                            s,
                            "  element {index} lies in an associated prime of dimension ≥ {threshold}\n  witness ideal {ideal} of dimension {dim}"
                        );
                        match prime {
                            Some(p) => writeln!(s, "  offending prime {p}"),
                            None => Ok(()),
                        }
                    }
                    None => Ok(()),
                }
            }
            Payload::MadeReducing { input, output, full, verified } => writeln!(
                s,
                "input:  ({})\noutput: ({})\n{} verified: {verified}",
                input.join("; "),
                output.join("; "),
                if *full { "reducing sop" } else { "part of a reducing sop" }
            ),
            Payload::RegularSequence { holds, failing_index, final_quotient_zero } => {
                let _ = writeln!(s, "regular sequence: {holds}");
                if let Some(i) = failing_index {
                    let _ = writeln!(s, "  element {i} is a zero-divisor modulo the previous ones");
                }
                if *final_quotient_zero {
                    let _ = writeln!(s, "  final quotient is zero");
                }
                Ok(())
            }
            Payload::Cm { dim, t11, depth, agree, reducing_sop, .. } => {
                let _ = writeln!(s, "dim = {dim}");
                if let Some(t) = t11 {
                    let _ = writeln!(s, "one-shot test: {}", if *t { "Cohen-Macaulay" } else { "not Cohen-Macaulay" });
                }
                if let Some(sop) = reducing_sop {
                    let _ = writeln!(s, "  reducing sop used: ({})", sop.join("; "));
                }
                if let Some(dp) = depth {
                    let _ = writeln!(s, "depth = {dp}");
                }
                match agree {
                    Some(a) => writeln!(s, "methods agree: {a}"),
                    None => Ok(()),
                }
            }
            Payload::Depth { depth, dim, regular_sequence } => writeln!(
                s,
                "depth = {depth}, dim = {dim}\nmaximal regular sequence: ({})",
                regular_sequence.join("; ")
            ),
            Payload::CmMember { entry } => writeln!(s, "{}", render_entry(entry)),
            Payload::CmLocus { r, entries } => {
                let _ = writeln!(s, "CM_{r}: {} monomial prime(s)", entries.len());
                for e in entries {
                    let _ = writeln!(s, "  {}", render_entry(e));
                }
                Ok(())
            }
            Payload::Theorems(t) => writeln!(s, "{}", t.render_human()),
            Payload::Error { message } => writeln!(s, "error: {message}"),
            Payload::NoCommand => writeln!(s, "nothing to do"),
        };
        let _ = write!(s, "status: {:?} (exit {})", self.status, self.exit_code());
        s
    }
}

fn render_entry(e: &LocusEntryReport) -> String {
    let mut s = format!("{}: {} (r = {})", e.prime, e.status, e.r);
    match &e.certificate {
        Some(LocusCertificateReport::Localized { prime_dim, local_dim, local_depth }) => {
            let _ = write!(s, " [dim R/P = {prime_dim}, dim M_P = {local_dim}, depth M_P = {local_depth}]");
        }
        Some(LocusCertificateReport::Constructed { sequence, quotient_dim, .. }) => {
            let _ = write!(s, " [reducing part ({}) with quotient dimension {quotient_dim}]", sequence.join("; "));
        }
        None => {}
    }
    if let Some(r) = &e.reason {
        let _ = write!(s, " ({r})");
    }
    s
}

/// Renders an ideal's reduced basis as `(g1, g2)`.
pub fn ideal_text(i: &Ideal) -> String {
    i.canonical().to_string()
}
