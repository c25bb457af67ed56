use thiserror::Error;

/// Errors raised by the algebra, Gröbner and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Mismatched rings, lengths or missing data; always a caller bug.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("weighted degree of the zero polynomial is undefined")]
    DegreeUndefined,

    /// Input that is well formed but violates a mathematical precondition
    /// (non-homogeneous generator, non-prime modulus, ...).
    #[error("validation error: {0}")]
    Validation(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A documented precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}
