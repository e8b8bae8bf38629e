use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: negative input rejected")]
    Negative { op: &'static str },

    #[error("{op}: zero input rejected")]
    Zero { op: &'static str },

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A size budget was exceeded. `reached` is the last level (or size)
    /// that was computed successfully.
    #[error("capacity exceeded: {what} (limit {limit}, reached {reached})")]
    Capacity {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    #[error("non-integral Möbius product at index {index}")]
    NonIntegral { index: usize },

    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("inconsistency detected: {0}")]
    Inconsistent(String),
}
