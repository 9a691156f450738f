use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Argument outside the domain of a function (log of a non-positive value, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Series parameters violating their invariants.
    #[error("invalid series parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Truncation point that does not fall on a block boundary.
    #[error("truncation {terms} is not aligned: must be a multiple of {alignment}")]
    Misaligned { terms: u64, alignment: u64 },

    /// Quadrature stopped at its level cap before meeting the target.
    #[error("quadrature did not converge after {levels} levels (estimate {estimate:e}, error estimate {error:e})")]
    NotConverged {
        levels: u32,
        estimate: f64,
        error: f64,
    },

    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
