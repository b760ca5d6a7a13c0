use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing required file {}", path.display())]
    MissingFile { path: PathBuf },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },

    #[error("{file}:{line}: {message}")]
    Validation { file: String, line: usize, message: String },

    #[error("{file}:{line}: invalid pattern: {source}")]
    Pattern {
        file: String,
        line: usize,
        #[source]
        source: Box<regex::Error>,
    },

    #[error("record {id}: unknown label {label:?}")]
    Label { id: String, label: String },

    #[error("no items to evaluate")]
    EmptyInput,

    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        Error::Io { path: path.as_ref().to_path_buf(), source }
    }

    pub(crate) fn parse(file: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse { file: file.to_string(), line, message: message.into() }
    }

    pub(crate) fn validation(file: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Validation { file: file.to_string(), line, message: message.into() }
    }

    /// True for failures to reach or read the filesystem, as opposed to bad
    /// content.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::MissingFile { .. } | Error::Io { .. })
    }
}
