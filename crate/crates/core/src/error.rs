use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a mathematical operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid value for `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("index {index} out of range for {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("network generation failed: {0}")]
    GenerationFailed(String),

    #[error("time step {dt} violates the explicit Euler stability bound {bound}")]
    Stability { dt: f64, bound: f64 },

    #[error("no convergence after {steps} steps (last change {residual:e})")]
    NonConvergence { steps: u64, residual: f64 },

    #[error("lattice-Boltzmann instability at step {step}: {detail}")]
    Instability { step: u64, detail: String },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for command-line front ends: 1 for bad input,
    /// 2 for runtime failures of the numerics or the filesystem.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::InvalidConfig { .. }
            | Error::Parse { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Stability { .. }
            | Error::InsufficientData(_) => 1,
            Error::GenerationFailed(_)
            | Error::NonConvergence { .. }
            | Error::Instability { .. }
            | Error::Resource(_)
            | Error::File { .. }
            | Error::Io(_)
            | Error::Csv(_) => 2,
        }
    }
}
