//! The session text format.
//!
//! ```text
//! # comment
//! ring [X,Y,Z] p=32003
//! ideal XY, XZ
//! seq S = Y; X+Y+Z
//! prime P = X, Y
//! seed 7
//! output json
//! is-reducing-sop S
//! ---
//! ring [X,Y] p=0
//! ideal X^2, XY
//! depth
//! ```
//!
//! Documents are separated by `---` lines. Command arguments naming a
//! sequence or prime may be a declared name or an inline quoted literal.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use redsop_core::{Field, Ideal, ParamSequence, PolyRing, DEFAULT_PRIME};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SessionError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{context}: {source}")]
    Algebra {
        context: String,
        #[source]
        source: redsop_core::Error,
    },
    #[error("{0}")]
    Missing(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CmMethod {
    T11,
    Depth,
    Both,
}

/// A sequence or prime: a declared name or an inline literal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArgRef {
    Named(String),
    Inline(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CommandSpec {
    Dim,
    Ass,
    Depth,
    IsSop { seq: ArgRef },
    IsReducingSop { seq: ArgRef },
    IsPartReducing { seq: ArgRef },
    MakeReducing { seq: ArgRef },
    IsRegularSequence { seq: ArgRef },
    IsCm { method: CmMethod },
    CmMember { prime: ArgRef },
    CmLocus { r: i64 },
    CheckTheorems { suites: Vec<String>, count: Option<usize> },
}

impl CommandSpec {
    pub fn keyword(&self) -> &'static str {
        match self {
            CommandSpec::Dim => "dim",
            CommandSpec::Ass => "ass",
            CommandSpec::Depth => "depth",
            CommandSpec::IsSop { .. } => "is-sop",
            CommandSpec::IsReducingSop { .. } => "is-reducing-sop",
            CommandSpec::IsPartReducing { .. } => "is-part-reducing",
            CommandSpec::MakeReducing { .. } => "make-reducing",
            CommandSpec::IsRegularSequence { .. } => "is-regular-sequence",
            CommandSpec::IsCm { .. } => "is-cm",
            CommandSpec::CmMember { .. } => "cm-member",
            CommandSpec::CmLocus { .. } => "cm-locus",
            CommandSpec::CheckTheorems { .. } => "check-theorems",
        }
    }

    /// The command line as written in a session.
    pub fn render(&self) -> String {
        let arg = |a: &ArgRef| match a {
            ArgRef::Named(n) => n.clone(),
            ArgRef::Inline(t) => format!("\"{t}\""),
        };
        let kw = self.keyword();
        match self {
            CommandSpec::Dim | CommandSpec::Ass | CommandSpec::Depth => kw.to_string(),
            CommandSpec::IsSop { seq }
            | CommandSpec::IsReducingSop { seq }
            | CommandSpec::IsPartReducing { seq }
            | CommandSpec::MakeReducing { seq }
            | CommandSpec::IsRegularSequence { seq } => format!("{kw} {}", arg(seq)),
            CommandSpec::IsCm { method } => {
                let m = match method {
                    CmMethod::T11 => "t11",
                    CmMethod::Depth => "depth",
                    CmMethod::Both => "both",
                };
                format!("{kw} {m}")
            }
            CommandSpec::CmMember { prime } => format!("{kw} {}", arg(prime)),
            CommandSpec::CmLocus { r } => format!("{kw} {r}"),
            CommandSpec::CheckTheorems { suites, count } => {
                let mut s = kw.to_string();
                if !suites.is_empty() {
                    s.push(' ');
                    s.push_str(&suites.join(","));
                }
                if let Some(c) = count {
                    let _ = write!(s, " count={c}");
                }
                s
            }
        }
    }
}

/// One parsed session document. Polynomials are kept as source text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionInput {
    pub vars: Vec<String>,
    pub characteristic: u32,
    pub ideal: Vec<String>,
    pub sequences: BTreeMap<String, String>,
    pub primes: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandSpec>,
}

impl SessionInput {
    pub fn new(vars: Vec<String>, characteristic: u32, ideal: Vec<String>) -> SessionInput {
        SessionInput {
            vars,
            characteristic,
            ideal,
            sequences: BTreeMap::new(),
            primes: BTreeMap::new(),
            seed: None,
            output: None,
            command: None,
        }
    }

    /// Text form accepted by [`parse_session`].
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring [{}] p={}", self.vars.join(","), self.characteristic);
        if !self.ideal.is_empty() {
            let _ = writeln!(s, "ideal {}", self.ideal.join(", "));
        }
        for (name, text) in &self.sequences {
            let _ = writeln!(s, "seq {name} = {text}");
        }
        for (name, gens) in &self.primes {
            let _ = writeln!(s, "prime {name} = {}", gens.join(", "));
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed {seed}");
        }
        if let Some(o) = self.output {
            let _ = writeln!(s, "output {}", if o == OutputMode::Json { "json" } else { "human" });
        }
        if let Some(c) = &self.command {
            let _ = writeln!(s, "{}", c.render());
        }
        s
    }

    pub fn ring(&self) -> Result<Arc<PolyRing>, SessionError> {
        let field = Field::from_characteristic(self.characteristic)
            .map_err(|e| SessionError::Algebra { context: "ring".into(), source: e })?;
        PolyRing::new(&self.vars, field).map_err(|e| SessionError::Algebra { context: "ring".into(), source: e })
    }

    pub fn build_ideal(&self, ring: &Arc<PolyRing>) -> Result<Ideal, SessionError> {
        let gens: Vec<&String> = self.ideal.iter().filter(|g| g.trim() != "0").collect();
        Ideal::parse(ring, &gens).map_err(|e| SessionError::Algebra { context: "ideal".into(), source: e })
    }

    pub fn resolve_sequence(&self, ring: &Arc<PolyRing>, arg: &ArgRef) -> Result<ParamSequence, SessionError> {
        let (label, text) = match arg {
            ArgRef::Named(n) => (
                format!("sequence {n}"),
                self.sequences.get(n).ok_or_else(|| SessionError::Missing(format!("undefined sequence `{n}`")))?,
            ),
            ArgRef::Inline(t) => ("sequence".to_string(), t),
        };
        ParamSequence::parse(ring, text).map_err(|e| SessionError::Algebra { context: label, source: e })
    }

    pub fn resolve_prime(&self, ring: &Arc<PolyRing>, arg: &ArgRef) -> Result<Ideal, SessionError> {
        let (label, gens): (String, Vec<String>) = match arg {
            ArgRef::Named(n) => (
                format!("prime {n}"),
                self.primes.get(n).cloned().ok_or_else(|| SessionError::Missing(format!("undefined prime `{n}`")))?,
            ),
            ArgRef::Inline(t) => ("prime".to_string(), split_list(t, ',')),
        };
        Ideal::parse(ring, &gens).map_err(|e| SessionError::Algebra { context: label, source: e })
    }
}

fn split_list(text: &str, sep: char) -> Vec<String> {
    text.split(sep).map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic()) && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Unresolved argument: quoted text is always inline; bare text is resolved
/// against declarations once the whole document is read.
enum RawArg {
    Quoted(String),
    Bare(String),
}

fn raw_arg(rest: &str, line: usize) -> Result<RawArg, SessionError> {
    let rest = rest.trim();
    if let Some(inner) = rest.strip_prefix('"') {
        let inner = inner
            .strip_suffix('"')
            .ok_or_else(|| SessionError::Syntax { line, msg: "unterminated quoted argument".into() })?;
        return Ok(RawArg::Quoted(inner.to_string()));
    }
    if rest.is_empty() {
        return Err(SessionError::Syntax { line, msg: "missing argument".into() });
    }
    Ok(RawArg::Bare(rest.to_string()))
}

enum RawCommand {
    Ready(CommandSpec),
    Seq(&'static str, RawArg),
    Prime(RawArg),
}

fn parse_command(word: &str, rest: &str, line: usize) -> Result<RawCommand, SessionError> {
    let syntax = |msg: String| SessionError::Syntax { line, msg };
    let no_args = |c: CommandSpec| {
        if rest.trim().is_empty() {
            Ok(RawCommand::Ready(c))
        } else {
            Err(syntax(format!("`{word}` takes no arguments")))
        }
    };
    match word {
        "dim" => no_args(CommandSpec::Dim),
        "ass" => no_args(CommandSpec::Ass),
        "depth" => no_args(CommandSpec::Depth),
        "is-sop" | "is-reducing-sop" | "is-part-reducing" | "make-reducing" | "is-regular-sequence" => {
            let kw = match word {
                "is-sop" => "is-sop",
                "is-reducing-sop" => "is-reducing-sop",
                "is-part-reducing" => "is-part-reducing",
                "make-reducing" => "make-reducing",
                _ => "is-regular-sequence",
            };
            Ok(RawCommand::Seq(kw, raw_arg(rest, line)?))
        }
        "is-cm" => {
            let method = match rest.trim() {
                "" | "both" => CmMethod::Both,
                "t11" => CmMethod::T11,
                "depth" => CmMethod::Depth,
                other => return Err(syntax(format!("unknown is-cm method `{other}` (t11, depth, both)"))),
            };
            Ok(RawCommand::Ready(CommandSpec::IsCm { method }))
        }
        "cm-member" => Ok(RawCommand::Prime(raw_arg(rest, line)?)),
        "cm-locus" => {
            let r = rest.trim().parse::<i64>().map_err(|_| syntax("cm-locus needs an integer level r".into()))?;
            Ok(RawCommand::Ready(CommandSpec::CmLocus { r }))
        }
        "check-theorems" => {
            let mut suites = Vec::new();
            let mut count = None;
            for tok in rest.split_whitespace() {
                if let Some(c) = tok.strip_prefix("count=") {
                    count = Some(c.parse::<usize>().map_err(|_| syntax(format!("bad count `{c}`")))?);
                } else {
                    suites.extend(split_list(tok, ','));
                }
            }
            Ok(RawCommand::Ready(CommandSpec::CheckTheorems { suites, count }))
        }
        other => Err(syntax(format!("unknown directive `{other}`"))),
    }
}

fn parse_ring_line(rest: &str, line: usize) -> Result<(Vec<String>, u32), SessionError> {
    let syntax = |msg: &str| SessionError::Syntax { line, msg: msg.to_string() };
    let rest = rest.trim();
    let open = rest.strip_prefix('[').ok_or_else(|| syntax("expected `ring [A,B,...] p=<char>`"))?;
    let close = open.find(']').ok_or_else(|| syntax("missing `]` in ring declaration"))?;
    let vars = split_list(&open[..close], ',');
    let tail = open[close + 1..].trim();
    let characteristic = if tail.is_empty() {
        DEFAULT_PRIME
    } else {
        let p = tail.strip_prefix("p=").ok_or_else(|| syntax("expected `p=<char|0>` after the variables"))?;
        p.trim().parse::<u32>().map_err(|_| syntax("characteristic must be a non-negative integer"))?
    };
    Ok((vars, characteristic))
}

fn parse_named(rest: &str, line: usize, what: &str) -> Result<(String, String), SessionError> {
    let (name, body) = rest
        .split_once('=')
        .ok_or_else(|| SessionError::Syntax { line, msg: format!("expected `{what} NAME = ...`") })?;
    let name = name.trim();
    if !is_identifier(name) {
        return Err(SessionError::Syntax { line, msg: format!("`{name}` is not a valid {what} name") });
    }
    Ok((name.to_string(), body.trim().to_string()))
}

fn parse_document(lines: &[(usize, &str)]) -> Result<SessionInput, SessionError> {
    let mut ring: Option<(Vec<String>, u32)> = None;
    let mut input = SessionInput::new(Vec::new(), DEFAULT_PRIME, Vec::new());
    let mut raw_cmd: Option<(usize, RawCommand)> = None;
    for &(ln, text) in lines {
        let text = strip_comment(text).trim();
        if text.is_empty() {
            continue;
        }
        let (word, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        match word {
            "ring" => {
                if ring.is_some() {
                    return Err(SessionError::Syntax { line: ln, msg: "ring declared twice".into() });
                }
                ring = Some(parse_ring_line(rest, ln)?);
            }
            "ideal" => input.ideal.extend(split_list(rest, ',')),
            "seq" => {
                let (name, body) = parse_named(rest, ln, "seq")?;
                if input.sequences.insert(name.clone(), body).is_some() {
                    return Err(SessionError::Syntax { line: ln, msg: format!("sequence `{name}` declared twice") });
                }
            }
            "prime" => {
                let (name, body) = parse_named(rest, ln, "prime")?;
                if input.primes.insert(name.clone(), split_list(&body, ',')).is_some() {
                    return Err(SessionError::Syntax { line: ln, msg: format!("prime `{name}` declared twice") });
                }
            }
            "seed" => {
                let s = rest.trim().parse::<u64>().map_err(|_| SessionError::Syntax { line: ln, msg: "seed must be a u64".into() })?;
                input.seed = Some(s);
            }
            "output" => {
                input.output = Some(match rest.trim() {
                    "json" => OutputMode::Json,
                    "human" => OutputMode::Human,
                    o => return Err(SessionError::Syntax { line: ln, msg: format!("unknown output mode `{o}`") }),
                })
            }
            _ => {
                if raw_cmd.is_some() {
                    return Err(SessionError::Syntax { line: ln, msg: "only one command per document".into() });
                }
                raw_cmd = Some((ln, parse_command(word, rest, ln)?));
            }
        }
    }
    let (vars, p) = ring.ok_or_else(|| SessionError::Missing("document has no `ring` line".into()))?;
    input.vars = vars;
    input.characteristic = p;
    input.command = match raw_cmd {
        None => None,
        Some((_, RawCommand::Ready(c))) => Some(c),
        Some((_, RawCommand::Seq(kw, arg))) => {
            let seq = resolve(arg, |n| input.sequences.contains_key(n));
            Some(match kw {
                "is-sop" => CommandSpec::IsSop { seq },
                "is-reducing-sop" => CommandSpec::IsReducingSop { seq },
                "is-part-reducing" => CommandSpec::IsPartReducing { seq },
                "make-reducing" => CommandSpec::MakeReducing { seq },
                _ => CommandSpec::IsRegularSequence { seq },
            })
        }
        Some((_, RawCommand::Prime(arg))) => Some(CommandSpec::CmMember { prime: resolve(arg, |n| input.primes.contains_key(n)) }),
    };
    Ok(input)
}

fn resolve(arg: RawArg, declared: impl Fn(&str) -> bool) -> ArgRef {
    match arg {
        RawArg::Quoted(t) => ArgRef::Inline(t),
        RawArg::Bare(t) if is_identifier(&t) && declared(&t) => ArgRef::Named(t),
        RawArg::Bare(t) => ArgRef::Inline(t),
    }
}

/// Parses one or more `---`-separated documents. Line numbers in errors
/// count from the start of `text`.
pub fn parse_session(text: &str) -> Result<Vec<SessionInput>, SessionError> {
    let mut docs = Vec::new();
    let mut cur: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            docs.push(std::mem::take(&mut cur));
        } else {
            cur.push((i + 1, line));
        }
    }
    docs.push(cur);
    let blank = |d: &Vec<(usize, &str)>| d.iter().all(|(_, l)| strip_comment(l).trim().is_empty());
    docs.into_iter().filter(|d| !blank(d)).map(|d| parse_document(&d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "# worked example\nring [X,Y,Z] p=32003\nideal XY, XZ\nseq S = Y; X+Y+Z\nis-reducing-sop S\n";

    #[test]
    fn parses_the_worked_example() {
        let docs = parse_session(EX).unwrap();
        assert_eq!(docs.len(), 1);
        let d = &docs[0];
        assert_eq!(d.vars, ["X", "Y", "Z"]);
        assert_eq!(d.ideal, ["XY", "XZ"]);
        assert_eq!(d.command, Some(CommandSpec::IsReducingSop { seq: ArgRef::Named("S".into()) }));
        assert_eq!(parse_session(&d.render()).unwrap(), docs);
    }

    #[test]
    fn inline_and_bare_arguments() {
        let d = &parse_session("ring [X,Y]\nis-sop \"X; Y\"").unwrap()[0];
        assert_eq!(d.command, Some(CommandSpec::IsSop { seq: ArgRef::Inline("X; Y".into()) }));
        assert_eq!(d.characteristic, DEFAULT_PRIME);
        let d = &parse_session("ring [X,Y] p=0\ncm-member X, Y").unwrap()[0];
        assert_eq!(d.command, Some(CommandSpec::CmMember { prime: ArgRef::Inline("X, Y".into()) }));
    }

    #[test]
    fn multiple_documents() {
        let docs = parse_session(&format!("{EX}---\nring [A]\nideal A^2\ndepth\n---\n# trailing\n")).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[1].command, Some(CommandSpec::Depth));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_session("ring [X]\n\nfrobnicate").unwrap_err();
        assert_eq!(err, SessionError::Syntax { line: 3, msg: "unknown directive `frobnicate`".into() });
        assert!(matches!(parse_session("ideal X"), Err(SessionError::Missing(_))));
        assert!(matches!(parse_session("ring [X]\nis-cm fast"), Err(SessionError::Syntax { line: 2, .. })));
    }

    #[test]
    fn check_theorems_arguments() {
        let d = &parse_session("ring [X]\ncheck-theorems t11,cor15 count=20").unwrap()[0];
        assert_eq!(
            d.command,
            Some(CommandSpec::CheckTheorems { suites: vec!["t11".into(), "cor15".into()], count: Some(20) })
        );
        assert_eq!(parse_session(&d.render()).unwrap()[0], *d);
    }
}
