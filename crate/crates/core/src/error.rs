//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The requested modulus is not a prime in the supported word-size range.
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    /// Two values or objects over different fields met in one operation.
    #[error("mixed field contexts: {0} vs {1}")]
    MixedField(String, String),

    /// A matrix, tensor, or module had incompatible dimensions.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Text input could not be parsed; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An input violated a documented precondition.
    #[error("{0}")]
    Invalid(String),

    /// An enumeration would exceed the configured budget.
    #[error("enumeration needs {needed} steps, budget is {budget}")]
    Budget { needed: u128, budget: u64 },

    /// Reduction mod p hit a denominator divisible by p.
    #[error("denominator vanishes mod {0}")]
    BadReduction(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
