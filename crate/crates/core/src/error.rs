use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid chimera spec: {0}")]
    InvalidSpec(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{path}:{line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },

    #[error("instance has {active} active spins, brute force is limited to {limit}")]
    TooLarge { active: usize, limit: usize },

    #[error("instance does not match chimera spec: {0}")]
    SpecMismatch(String),

    #[error("ground truth does not match instance `{0}`")]
    GroundMismatch(String),

    #[error("exact solvers disagree on `{id}`: dp {dp}, brute force {brute}")]
    OracleFailure { id: String, dp: i64, brute: i64 },

    #[error("statistics: {0}")]
    Stats(String),

    #[error("unknown instance id `{0}`")]
    UnknownInstance(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }

    /// Process exit code grouping errors by category.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_) | Error::InvalidParam { .. } | Error::Config(_) => 2,
            Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => 3,
            Error::Io { .. } => 4,
            Error::OracleFailure { .. } => 5,
            Error::LengthMismatch { .. }
            | Error::TooLarge { .. }
            | Error::SpecMismatch(_)
            | Error::GroundMismatch(_)
            | Error::UnknownInstance(_)
            | Error::Stats(_) => 6,
        }
    }
}
