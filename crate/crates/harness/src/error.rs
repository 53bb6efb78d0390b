use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes shared by every subcommand.
pub mod exit {
    /// Every defined relation holds.
    pub const OK: u8 = 0;
    /// A numerical violation was detected.
    pub const VIOLATION: u8 = 1;
    /// Bad input file, flag, or configuration.
    pub const INPUT: u8 = 2;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: parse error: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("invalid instance: {field}: {source}")]
    Invalid {
        field: &'static str,
        #[source]
        source: revunc::Error,
    },

    #[error("invalid instance: {0}")]
    Shape(String),

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] revunc::Error),

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),

    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Every error is an input or configuration problem.
    pub fn exit_code(&self) -> u8 {
        exit::INPUT
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
