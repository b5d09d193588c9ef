use std::fmt;
use std::path::PathBuf;

use crate::sigma::Phase;

/// A single problem found while parsing a configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    /// 1-based line number, or 0 when the issue concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

fn join_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    Configuration(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error(
        "smallness condition violated at node {node}: sup g' * |alpha| * delta = {value} >= 1; refine N"
    )]
    Smallness { node: usize, value: f64 },

    #[error("root solver did not converge; last bracket [{lo}, {hi}]")]
    SolverFailure { lo: f64, hi: f64 },

    #[error("step sequencing error: expected phase {expected:?}, found {found:?}")]
    Sequencing { expected: Phase, found: Phase },

    #[error("dense realization is limited to N <= {limit}, got N = {n}")]
    DenseGuard { n: usize, limit: usize },

    #[error("d = {d} lies outside the contraction range (0, {d_star})")]
    OutOfTheory { d: f64, d_star: f64 },

    #[error("bisection bracket [{lo}, {hi}] does not straddle a root")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("insufficient signal for rate fit: {usable} usable samples, need at least 4")]
    InsufficientSignal { usable: usize },

    #[error("configuration errors: {}", join_issues(.0))]
    Config(Vec<ConfigIssue>),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}
