use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("cache entry {path} is corrupt: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },
    #[error(transparent)]
    Core(#[from] aql_core::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 0 success, 1 validation or parse error, 2 budget exceeded, 3 internal failure.
    pub fn exit_code(&self) -> u8 {
        use aql_core::Error as E;
        match self {
            CliError::Core(E::BudgetExceeded { .. }) => 2,
            CliError::Core(E::Assertion(_) | E::Interpolation(_)) => 3,
            CliError::Internal(_) | CliError::CacheCorrupt { .. } => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
