//! Error taxonomy shared by every module.

use thiserror::Error;

/// Library error.
///
/// The three variants map onto process exit codes at the CLI boundary:
/// `Domain` (mathematically invalid input) exits 1, `Usage` and `Config`
/// (caller mistakes: empty grids, too few trials, bad cipher setup) exit 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
