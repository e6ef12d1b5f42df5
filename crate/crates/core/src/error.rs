use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not valid UTF-8 at byte offset {offset}")]
    Decode { offset: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid training set: {0}")]
    InvalidTrainingSet(String),

    #[error("malformed model payload at byte offset {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("unsupported model format version {found} (expected {expected})")]
    UnsupportedVersion { found: u32, expected: u32 },

    #[error("invalid fusion policy: {0}")]
    InvalidPolicy(String),

    #[error("invalid corpus: {0}")]
    InvalidCorpus(String),

    #[error("corpus record rejected at line {line}: {message}")]
    CorpusRecord { line: usize, message: String },

    #[error("class `{label}` has {available} examples but {needed} are required")]
    Shortage {
        label: String,
        needed: usize,
        available: usize,
    },

    #[error("{path}:{line}: {message}")]
    Resource {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
