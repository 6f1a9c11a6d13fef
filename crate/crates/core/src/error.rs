//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Error`]; the CLI maps
//! any of these onto exit code 1 (domain error), keeping exit code 2 for
//! argument-parsing failures.

use std::fmt;

use num_bigint::BigUint;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All domain errors the library can report.
#[derive(Debug)]
pub enum Error {
    /// `factorize(0)` — zero has no factorization into primes.
    ZeroFactorization,
    /// An operation's precondition on its arguments was violated.
    InvalidInput(String),
    /// A factoring or scanning budget was exhausted before completion.
    CapExceeded { context: String },
    /// `abc_quality` requires coprime summands.
    NotCoprime { a: BigUint, b: BigUint },
    /// Rank of apparition is undefined when the prime divides the base.
    PDividesBase { p: u64, g: u64 },
    /// Polynomial scans reject polynomials with repeated roots.
    RepeatedRoots,
    /// A sieve request exceeded the configured memory budget.
    SegmentTooLarge { len: u64, max: u64 },
    /// Text did not match the record grammar. `line` is 1-based when known.
    Parse {
        line: Option<usize>,
        col: usize,
        msg: String,
    },
    /// A record parsed but failed arithmetic validation (σ(m) ≠ k·m, …).
    Validation { line: Option<usize>, msg: String },
    /// Aggregate of every bad line found while loading a database file.
    Database(Vec<Error>),
    /// Underlying I/O failure, surfaced verbatim.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroFactorization => write!(f, "0 cannot be factorized"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::CapExceeded { context } => {
                write!(f, "effort cap exceeded: {context}")
            }
            Error::NotCoprime { a, b } => {
                write!(f, "inputs must be coprime: gcd({a}, {b}) > 1")
            }
            Error::PDividesBase { p, g } => {
                write!(f, "rank of apparition undefined: {p} divides base {g}")
            }
            Error::RepeatedRoots => {
                write!(f, "polynomial has repeated roots (gcd(f, f') is not constant)")
            }
            Error::SegmentTooLarge { len, max } => {
                write!(f, "segment of {len} entries exceeds the budget of {max}")
            }
            Error::Parse { line, col, msg } => match line {
                Some(l) => write!(f, "line {l}, column {col}: {msg}"),
                None => write!(f, "column {col}: {msg}"),
            },
            Error::Validation { line, msg } => match line {
                Some(l) => write!(f, "line {l}: validation failed: {msg}"),
                None => write!(f, "validation failed: {msg}"),
            },
            Error::Database(errors) => {
                writeln!(f, "{} invalid line(s) in database:", errors.len())?;
                for e in errors {
                    writeln!(f, "  {e}")?;
                }
                Ok(())
            }
            Error::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
