//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// The variants are coarse on purpose: callers mostly need to distinguish
/// "you handed me nonsense" ([`Error::InvalidParameter`]) from "this input is
/// structurally fine but too large for the requested computation"
/// ([`Error::ResourceLimit`]). The CLI maps the former to a usage exit code
/// and the latter to a resource-limit exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated (non-odd quotient order,
    /// block sequence pointing below a leaf, a non-acyclic anchor set, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The computation would exceed a configured or hard limit.
    /// `limit` is the bound that was in effect; `actual` the offending size.
    #[error("resource limit exceeded: {what} is {actual}, limit {limit}")]
    ResourceLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// A textual input (edge-list file or spec expression) could not be
    /// parsed.
    #[error("malformed input at line {line}: {msg}")]
    MalformedInput { line: usize, msg: String },

    /// A consistency check that the caller asked for failed. Carried as an
    /// error so pipelines can stop at the first broken invariant.
    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
