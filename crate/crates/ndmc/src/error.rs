use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    InFile {
        path: String,
        #[source]
        source: ndmc_core::Error,
    },
    #[error("{0}")]
    Core(#[from] ndmc_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches a path to a format error raised while parsing text.
    pub fn at_path(self, path: &str) -> Self {
        match self {
            CliError::Format { line, message, .. } => CliError::Format {
                path: path.to_string(),
                line,
                message,
            },
            CliError::Core(source) => CliError::InFile {
                path: path.to_string(),
                source,
            },
            other => other,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
