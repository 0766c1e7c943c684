use std::path::PathBuf;

use thiserror::Error;

use crate::domain::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid profile for subject '{subject}': {reason}")]
    InvalidProfile { subject: String, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid prediction table: {0}")]
    Table(String),

    #[error("protocol violation by model '{model}' on subject '{subject}' at trial {seq} ({task}): {reason}")]
    ProtocolViolation {
        model: String,
        subject: String,
        seq: u32,
        task: String,
        reason: String,
    },

    #[error("task {0} has no responses in the dataset")]
    MissingTask(String),

    #[error("{}: row {row}: {reason}", path.display())]
    Row {
        path: PathBuf,
        row: usize,
        reason: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
}

/// Failure reported by a model while producing a prediction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct ModelError(pub String);
