//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the exact-arithmetic and group-computation layers.
///
/// Input-validation failures map to CLI exit code 2; violations of
/// internal invariants map to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} has an even denominator in lowest terms")]
    EvenDenominator(String),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("nonzero coefficient at degree {0}: value is not rational")]
    NotRational(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not an odd prime divisor of the group order for p = {1}")]
    NotADivisor(u64, u64),
    #[error("{0} is not coprime to {1}")]
    NotCoprime(i64, u64),
    #[error("p = {0} exceeds the exhaustive-search bound {1}")]
    TooLarge(u64, u64),
    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),
    #[error("trace triple is not admissible")]
    NotAdmissible,
    #[error("no homomorphism pair found for an admissible triple")]
    NoSolution,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code for the CLI: 2 for rejected input, 1 for an
    /// internal invariant failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DivisionByZero | Error::NotRational(_) | Error::NoSolution => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
