//! mplab-core: exact divisor-sum arithmetic and multiperfect-number
//! verification.
//!
//! A positive integer m is k-perfect (multiperfect) when σ(m) = k·m, where
//! σ sums every positive divisor; k = 2 is the classical perfect case. This
//! crate provides the machinery to find such numbers, verify claimed ones,
//! and measure the sharp structural facts that hold around them:
//!
//! - [`arith`] — factorization, σ/rad/ω, p-adic valuations, exact rationals;
//! - [`search`] — a segmented, parallel sum-of-divisors sieve;
//! - [`ingest`] — the factored-record database format and its validation;
//! - [`bounds`] — radical bounds rad(m) < m^β and supporting product/
//!   divisibility predicates, all checked in exact integer arithmetic;
//! - [`repdigit`] — Lucas repunits U_n = (gⁿ−1)/(g−1), σ-ratio chains,
//!   rank of apparition, multirepdigit scans;
//! - [`factorial`] — σ(n!)/n! through Legendre exponents, primorial ratios,
//!   and n!+1 scans;
//! - [`abc`] — ABC-triple quality and polynomial radical scans.

pub mod abc;
pub mod arith;
pub mod bounds;
pub mod error;
pub mod factorial;
pub mod ingest;
pub mod repdigit;
pub mod search;

pub use arith::{factorize, factorize_with, EffortCap, ExactRatio, FactorOutcome, Factorization};
pub use error::{Error, Result};
