use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a documented domain constraint.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quantity is singular at the requested point (e.g. a response factor
    /// evaluated where its denominator vanishes).
    #[error("singularity: {0}")]
    Singularity(String),
    /// File or stream output failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// A configuration file could not be parsed.
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
