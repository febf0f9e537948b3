use alloc::string::String;

/// Errors raised by constructors and queries. Verification failures are
/// reported as data, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("word is outside the domain")]
    Domain,
}

pub type Result<T> = core::result::Result<T, Error>;
