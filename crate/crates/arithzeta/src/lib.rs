//! Exact arithmetic functions over graded free commutative monoids.
//!
//! The same convolution machinery is instantiated three times: on the
//! multiplicative monoid of natural numbers, on the ideal monoid of a
//! quadratic number field, and on the monoid of effective 0-cycles of a
//! variety over a finite field. Each instantiation carries its own totient,
//! divisor-sum, psi and lambda functions, and every displayed identity
//! between them is checked coefficientwise against independent brute-force
//! oracles. All arithmetic is exact (arbitrary-precision integers and
//! rationals); nothing is floating point.

pub mod classical;
pub mod ffield;
pub mod globalzeta;
pub mod monoid;
pub mod mpoly;
pub mod primes;
pub mod quadfield;
pub mod report;
pub mod series;
pub mod suites;
pub mod varzeta;
pub mod witt;

use num::BigInt;
use num::BigRational;

/// Exact integer used for all arithmetic-function values.
pub type Int = BigInt;
/// Exact rational used for series coefficients.
pub type Rat = BigRational;

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input: unknown names, bad parameters, grammar violations.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Mathematical precondition violated (e.g. inverting a non-unit).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured enumeration budget or cap would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// Structured parse failure for spec files and polynomial expressions.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    /// An internal consistency check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn int(v: i64) -> Int {
    Int::from(v)
}

pub(crate) fn rat_int(v: Int) -> Rat {
    Rat::from_integer(v)
}
