use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scenario or parameter set violates one of its structural constraints.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exact integer arithmetic would have overflowed.
    #[error("integer overflow while computing {0}")]
    Overflow(String),

    /// A size guard (qubit count, enumeration size) was exceeded.
    #[error("resource limit exceeded: {what} = {requested} > {limit}")]
    Resource {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A numerical postcondition failed; indicates a bug rather than bad input.
    #[error("numeric postcondition violated: {0}")]
    Numeric(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidScenario(_) | Error::InvalidArgument(_) => 1,
            Error::DimensionMismatch { .. } | Error::Numeric(_) | Error::Overflow(_) => 2,
            Error::Resource { .. } => 3,
        }
    }
}
