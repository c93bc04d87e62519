//! Command-line layer for `redsop`: the session grammar, structured
//! reports, seeded corpora and the property suites.

pub mod corpus;
pub mod report;
pub mod run;
pub mod session;
pub mod suites;

pub use corpus::{generate_corpus, render_corpus, CorpusError, CorpusSpec};
pub use report::{CertificateReport, Payload, Status, SCHEMA_VERSION};
pub use run::{run_command, RunOptions, DEFAULT_SEED};
pub use session::{parse_session, CommandSpec, SessionError, SessionInput};
pub use suites::{check_theorems, SuiteReport, TheoremsReport, ALL_SUITES};
