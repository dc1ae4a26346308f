use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller passed arguments outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} {requested} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    /// A division that must be exact left a remainder. Always a bug.
    #[error("inexact division in {context}: {numerator} / {denominator}")]
    InexactDivision {
        context: &'static str,
        numerator: String,
        denominator: String,
    },

    /// Two formulas for the same sequence entry disagree. Always a bug.
    #[error("cross-check mismatch for {sequence} at n = {index}: {left} != {right}")]
    CrossCheck {
        sequence: &'static str,
        index: u64,
        left: String,
        right: String,
    },

    #[error("series error: {0}")]
    Series(String),

    /// An invariant that mathematics guarantees was violated. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
