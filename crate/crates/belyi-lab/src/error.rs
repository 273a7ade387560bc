//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation images: {0}")]
    InvalidImages(String),
    #[error("invalid cycle notation `{input}`: {reason}")]
    ParseCycles { input: String, reason: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parameter violation: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("quadrature did not converge (achieved accuracy {achieved:e})")]
    QuadratureNonConvergence { achieved: f64 },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code class for the CLI: 2 validation, 3 i/o, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 3,
            Error::InvariantViolation(_) | Error::QuadratureNonConvergence { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
