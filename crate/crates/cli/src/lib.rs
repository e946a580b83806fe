//! Command-line front end: algebra files, named claims, experiments and reports.

pub mod algebra_file;
pub mod claims;
pub mod groups;
pub mod norm_theorem;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cayley_core::Error),
}

impl CliError {
    /// Usage, parse and precondition errors all exit with 2.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// 0 if every report passed (or was skipped without `strict`), 1 otherwise.
pub fn exit_code(reports: &[report::Report], strict: bool) -> i32 {
    use report::Status;
    let bad = reports.iter().any(|r| match r.verdict.status {
        Status::Pass => false,
        Status::Fail => true,
        Status::Skipped => strict,
    });
    i32::from(bad)
}
