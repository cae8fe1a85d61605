use std::io;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("write failed: {0}")]
    Write(#[from] io::Error),

    #[error(transparent)]
    Core(#[from] qgraph::Error),

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// 2 for configuration problems, 3 when no point could be evaluated, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Core(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io { .. } | CliError::Write(_) => 1,
        }
    }
}
