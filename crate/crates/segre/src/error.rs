//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the public API.
///
/// Invalid *inputs* (bad shapes, out-of-range subsets, malformed partitions,
/// mismatched domains) are reported as `InvalidInput`; violations of internal
/// exactness contracts (a division that should have been exact, a checksum
/// mismatch on embedded data) are `Internal` and indicate a bug rather than a
/// caller error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("scalar domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
