use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] purity_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("reference data: {0}")]
    Reference(String),
}

impl RunError {
    /// Process exit status: 2 for configuration problems, 3 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) | RunError::Core(_) | RunError::Reference(_) => 2,
            RunError::Io { .. } | RunError::Csv { .. } | RunError::Json { .. } => 3,
        }
    }
}

pub type Result<T, E = RunError> = std::result::Result<T, E>;
