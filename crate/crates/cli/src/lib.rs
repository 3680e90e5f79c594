//! Verification front end: runs checks on top of `joubert_core` and emits
//! versioned reports.

pub mod checks;
pub mod config;
pub mod report;
pub mod run;

pub use config::{Cli, Command, Format, ReportConfig, RunConfig, UsageError};
pub use report::{emit_report, parse_report, Check, Outcome, Verdict, VerificationManifest};
pub use run::{execute, run, RunError};
