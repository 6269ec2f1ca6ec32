use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The caller violated a precondition (bad arity, bad symbol, wrong domain...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A size limit would be exceeded.
    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    /// An enumeration visitor asked to stop.
    #[error("enumeration aborted by visitor after {visited} objects")]
    Aborted { visited: u64 },

    /// A structural fact the algorithms rely on did not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
