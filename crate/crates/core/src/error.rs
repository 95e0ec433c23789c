use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("variable index {index} out of range for {dim} variables")]
    VariableOutOfRange { index: usize, dim: usize },

    #[error("empty variable subset for a power of positive degree")]
    EmptySubset,

    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,

    #[error("invalid modulus: {0}")]
    InvalidModulus(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("ideal is not integrally closed: {0}")]
    NotIntegrallyClosed(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
