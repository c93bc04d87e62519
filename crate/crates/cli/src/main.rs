use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use redsop_cli::report::Status;
use redsop_cli::session::OutputMode;
use redsop_cli::{
    check_theorems, generate_corpus, parse_session, render_corpus, run_command, CorpusSpec, RunOptions, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(name = "redsop", version, about = "Reducing systems of parameters and Cohen-Macaulay tests for R/I")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run session documents from a file, or from standard input.
    Run {
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Seed for documents without a `seed` line.
        #[arg(long, env = "REDSOP_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Include wall-clock timings (reports are then no longer byte-stable).
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = redsop_core::DEFAULT_RETRIES)]
        max_retries: u32,
    },
    /// Print a seeded corpus of random monomial ideals as session documents.
    Corpus {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run property suites over a seeded corpus.
    CheckTheorems {
        /// Comma-separated suite ids; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 4)]
    nvars: usize,
    #[arg(long, default_value_t = 2)]
    min_nvars: usize,
    #[arg(long, default_value_t = 6)]
    max_gens: usize,
    #[arg(long, default_value_t = 4)]
    max_deg: u32,
    #[arg(long)]
    squarefree: bool,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, env = "REDSOP_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Lift the default caps on variables, degree and generators.
    #[arg(long)]
    allow_large: bool,
}

impl CorpusArgs {
    fn spec(&self) -> CorpusSpec {
        CorpusSpec {
            nvars: self.nvars,
            min_nvars: self.min_nvars.min(self.nvars),
            max_generators: self.max_gens,
            max_degree: self.max_deg,
            squarefree: self.squarefree,
            count: self.count,
            seed: self.seed,
            allow_large: self.allow_large,
        }
    }
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn read_input(file: Option<PathBuf>) -> std::io::Result<String> {
    match file {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run { file, json, seed, timings, max_retries } => {
            let text = match read_input(file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit(Status::InputError.exit_code());
                }
            };
            let docs = match parse_session(&text) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit(Status::InputError.exit_code());
                }
            };
            let opts = RunOptions { default_seed: seed, timings, max_retries, ..RunOptions::default() };
            let reports: Vec<_> = docs.iter().map(|d| run_command(d, &opts)).collect();
            let json = json || (!docs.is_empty() && docs.iter().all(|d| d.output == Some(OutputMode::Json)));
            if json {
                let out = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                };
                println!("{}", out.expect("reports serialize"));
            } else {
                let texts: Vec<String> = reports.iter().map(|r| r.render_human()).collect();
                println!("{}", texts.join("\n\n"));
            }
            let worst = reports.iter().map(|r| r.status).max_by_key(|s| s.severity()).unwrap_or(Status::Determinate);
            exit(worst.exit_code())
        }
        Cmd::Corpus { corpus, json } => match generate_corpus(&corpus.spec()) {
            Ok(c) => {
                if json {
                    println!("{}", serde_json::to_string_pretty(&c).expect("corpus serializes"));
                } else {
                    print!("{}", render_corpus(&c));
                }
                exit(0)
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(Status::InputError.exit_code())
            }
        },
        Cmd::CheckTheorems { suite, corpus, json } => match check_theorems(&suite, &corpus.spec()) {
            Ok(r) => {
                if json {
                    println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
                } else {
                    println!("{}", r.render_human());
                }
                exit(if r.all_passed { 0 } else { Status::InvariantBreach.exit_code() })
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit(Status::InputError.exit_code())
            }
        },
    }
}
