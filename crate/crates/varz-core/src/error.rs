//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped so that a front end can map them onto a small set of
/// process exit codes via [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value (CFO parameter, bounds, design) is out of range.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A function argument violates its precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A benchmark name did not resolve.
    #[error("unknown benchmark `{0}`")]
    Catalog(String),

    /// A numeric argument lies outside the supported domain.
    #[error("out of range: {0}")]
    Range(String),

    /// A frequency window selected no rows.
    #[error("no rows between {lo} and {hi} MHz")]
    EmptyWindow { lo: f64, hi: f64 },

    /// A fitness denominator factor is zero.
    #[error("degenerate summary: {0}")]
    DegenerateSummary(String),

    /// The objective returned NaN or an infinity.
    #[error("objective returned {value} for probe {probe} at step {step}")]
    NonFiniteFitness { probe: usize, step: usize, value: f64 },

    /// Malformed text input.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The engine output was produced from a different deck.
    #[error("stale engine output: expected file ID {expected}, found {found}")]
    StaleOutput { expected: String, found: String },

    /// The engine ran but its listing lacks the completion marker.
    #[error("engine run failed: {0}")]
    EngineFailure(String),

    /// The engine executable could not be started.
    #[error("failed to spawn engine {}: {source}", path.display())]
    Spawn {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The engine exited unsuccessfully.
    #[error("engine exited with status {code:?}")]
    EngineExit { code: Option<i32> },

    /// The engine did not finish in time.
    #[error("engine timed out after {secs} s")]
    Timeout { secs: u64 },

    /// Filesystem failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for this error: 2 validation, 3 engine, 4 parse, 5 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_)
            | Error::InvalidInput(_)
            | Error::Catalog(_)
            | Error::Range(_)
            | Error::EmptyWindow { .. }
            | Error::DegenerateSummary(_) => 2,
            Error::NonFiniteFitness { .. }
            | Error::StaleOutput { .. }
            | Error::EngineFailure(_)
            | Error::Spawn { .. }
            | Error::EngineExit { .. }
            | Error::Timeout { .. } => 3,
            Error::Parse { .. } => 4,
            Error::Io(_) => 5,
        }
    }
}
