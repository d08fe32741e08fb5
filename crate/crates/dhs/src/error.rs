use thiserror::Error;

/// Errors surfaced by the solvers and the oracle.
#[derive(Debug, Error)]
pub enum Error {
    /// An internal invariant failed. This always indicates a bug (or a
    /// violated precondition), never a property of the input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// A brute-force oracle was called on an instance above its size guard.
    #[error("{op}: instance too large ({actual} > {limit})")]
    SizeLimit {
        op: &'static str,
        limit: usize,
        actual: usize,
    },

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An instance specification cannot be generated.
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
}

impl Error {
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Internal-invariant check that survives release builds.
macro_rules! invariant {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(crate::error::Error::Internal(format!($($arg)*)));
        }
    };
}
pub(crate) use invariant;
