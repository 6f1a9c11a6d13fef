//! Exact arithmetic over arbitrary-precision integers: factorization,
//! multiplicative functions (σ, rad, ω), p-adic valuations, and exact
//! rationals.
//!
//! All classification decisions downstream (is-multiperfect, bound
//! comparisons) are made in exact integer or rational arithmetic; floating
//! point appears only in reporting, via [`log_big`].

pub(crate) mod primality;
mod rho;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

pub use primality::{is_prime, is_prime_u64, small_primes, SMALL_PRIME_LIMIT};
pub use rho::EffortCap;
use rho::{brent_big, brent_u64, EffortMeter};

use crate::error::{Error, Result};

/// Canonical factored form of a positive integer: an ordered list of
/// (prime, exponent) pairs with strictly increasing primes. The empty list
/// represents 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    entries: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// The factorization of 1 (empty product).
    pub fn one() -> Self {
        Factorization {
            entries: Vec::new(),
        }
    }

    /// Builds a factorization from entries, enforcing every invariant:
    /// primes strictly increasing, each entry prime, exponents ≥ 1.
    pub fn from_entries(entries: Vec<(BigUint, u32)>) -> Result<Self> {
        for window in entries.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::InvalidInput(format!(
                    "primes must be strictly increasing: {} then {}",
                    window[0].0, window[1].0
                )));
            }
        }
        for (p, e) in &entries {
            if *e == 0 {
                return Err(Error::InvalidInput(format!("exponent 0 on prime {p}")));
            }
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
        }
        Ok(Factorization { entries })
    }

    /// Internal constructor for entries already known to be sorted primes.
    fn from_map(map: BTreeMap<BigUint, u32>) -> Self {
        Factorization {
            entries: map.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[(BigUint, u32)] {
        &self.entries
    }

    /// Reconstructs the factored integer exactly.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::one();
        for (p, e) in &self.entries {
            v *= p.pow(*e);
        }
        v
    }

    /// Sum of all divisors: Π (p^{e+1} − 1)/(p − 1).
    pub fn sigma(&self) -> BigUint {
        let one = BigUint::one();
        let mut s = BigUint::one();
        for (p, e) in &self.entries {
            s *= (p.pow(e + 1) - &one) / (p - &one);
        }
        s
    }

    /// Squarefree kernel: the product of the distinct primes.
    pub fn radical(&self) -> BigUint {
        let mut r = BigUint::one();
        for (p, _) in &self.entries {
            r *= p;
        }
        r
    }

    /// σ(value)/value in lowest terms.
    pub fn abundancy(&self) -> ExactRatio {
        ExactRatio::new(self.sigma(), self.value()).expect("value is positive")
    }

    /// Number of distinct prime divisors (ω).
    pub fn omega(&self) -> usize {
        self.entries.len()
    }

    /// Exponent of `p` in the factored value; 0 when `p` does not divide it.
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.entries
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_even(&self) -> bool {
        self.entries
            .first()
            .is_some_and(|(p, _)| p == &BigUint::from(2u8))
    }

    /// Factored product of two factored values (exponents add).
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut map: BTreeMap<BigUint, u32> = self.entries.iter().cloned().collect();
        for (p, e) in &other.entries {
            *map.entry(p.clone()).or_insert(0) += e;
        }
        Factorization::from_map(map)
    }
}

impl fmt::Display for Factorization {
    /// Renders in the database grammar: `2^9 * 3 * 11 * 31`; `1` for the
    /// empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Reduced positive rational, the exact currency for abundancy σ(m)/m.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRatio {
    ratio: Ratio<BigUint>,
}

impl ExactRatio {
    /// Builds `numerator/denominator` in lowest terms.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(ExactRatio {
            ratio: Ratio::new(numerator, denominator),
        })
    }

    pub fn from_integer(n: impl Into<BigUint>) -> Self {
        ExactRatio {
            ratio: Ratio::from_integer(n.into()),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        self.ratio.numer()
    }

    pub fn denominator(&self) -> &BigUint {
        self.ratio.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.ratio.is_integer()
    }

    /// The integer value when the ratio is integral.
    pub fn to_integer(&self) -> Option<BigUint> {
        self.is_integer().then(|| self.ratio.to_integer())
    }

    pub fn mul(&self, other: &ExactRatio) -> ExactRatio {
        ExactRatio {
            ratio: &self.ratio * &other.ratio,
        }
    }

    pub fn add(&self, other: &ExactRatio) -> ExactRatio {
        ExactRatio {
            ratio: &self.ratio + &other.ratio,
        }
    }

    /// `self − other`, or `None` when the difference would be negative.
    pub fn checked_sub(&self, other: &ExactRatio) -> Option<ExactRatio> {
        (*self >= *other).then(|| ExactRatio {
            ratio: &self.ratio - &other.ratio,
        })
    }

    /// Natural log of the ratio, for reporting only.
    pub fn ln(&self) -> f64 {
        log_big(self.numerator()) - log_big(self.denominator())
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }
}

impl From<u64> for ExactRatio {
    fn from(n: u64) -> Self {
        ExactRatio::from_integer(BigUint::from(n))
    }
}

impl fmt::Display for ExactRatio {
    /// Always `num/den`, e.g. `3/1` for the 3-perfect abundancy.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

/// Outcome of a capped factorization attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorOutcome {
    Complete(Factorization),
    /// Budget ran out: `partial` holds the primes found so far and
    /// `cofactor` the remaining composite (> 1) part, so
    /// value(partial) · cofactor reconstructs the input.
    Incomplete {
        partial: Factorization,
        cofactor: BigUint,
    },
}

impl FactorOutcome {
    /// Unwraps a complete factorization; incompleteness becomes an error.
    pub fn complete(self) -> Result<Factorization> {
        match self {
            FactorOutcome::Complete(f) => Ok(f),
            FactorOutcome::Incomplete { cofactor, .. } => Err(Error::CapExceeded {
                context: format!("composite cofactor {cofactor} left unfactored"),
            }),
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, FactorOutcome::Complete(_))
    }
}

/// Fully factorizes `n ≥ 1` with no effort limit.
pub fn factorize(n: impl Into<BigUint>) -> Result<Factorization> {
    factorize_with(n, &EffortCap::unlimited())?.complete()
}

/// Factorizes `n ≥ 1` under a budget; degrades to an explicit incomplete
/// outcome instead of failing when the budget runs out.
pub fn factorize_with(n: impl Into<BigUint>, cap: &EffortCap) -> Result<FactorOutcome> {
    let n: BigUint = n.into();
    if n.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let mut map: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut meter = EffortMeter::new(cap);

    // Stage 1: trial division by every prime below 10^6 (early exit at √n).
    let mut remaining = n;
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if &p_big * &p_big > remaining {
            break;
        }
        if remaining.is_one() {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = remaining.div_rem(&p_big);
            if r.is_zero() {
                remaining = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            map.insert(p_big, e);
        }
    }

    // Stage 2: split what is left with perfect-power reduction + Brent rho.
    // Each stack item is (composite-or-prime piece, multiplicity).
    let mut stack: Vec<(BigUint, u32)> = Vec::new();
    if !remaining.is_one() {
        stack.push((remaining, 1));
    }
    while let Some((piece, mult)) = stack.pop() {
        if is_prime(&piece) {
            *map.entry(piece).or_insert(0) += mult;
            continue;
        }
        // Perfect-power reduction: rho degenerates on p^k with large p, and
        // roots are cheap to test.
        if let Some((root, k)) = perfect_power(&piece) {
            stack.push((root, mult * k));
            continue;
        }
        let factor = if let Some(small) = piece.to_u64() {
            brent_u64(small, &mut meter).map(BigUint::from)
        } else {
            brent_big(&piece, &mut meter)
        };
        match factor {
            Some(f) => {
                let quotient = &piece / &f;
                stack.push((f, mult));
                stack.push((quotient, mult));
            }
            None => {
                // Budget exhausted. Everything still on the stack is part of
                // the composite cofactor.
                let mut cofactor = piece.pow(mult);
                for (rest, m) in stack {
                    cofactor *= rest.pow(m);
                }
                return Ok(FactorOutcome::Incomplete {
                    partial: Factorization::from_map(map),
                    cofactor,
                });
            }
        }
    }
    Ok(FactorOutcome::Complete(Factorization::from_map(map)))
}

/// Writes `n` as root^k with k ≥ 2 maximal-exponent-first, if possible.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits();
    for k in (2..=bits.max(2)).rev() {
        let k = k as u32;
        let root = n.nth_root(k);
        if root.pow(k) == *n && root > BigUint::one() {
            return Some((root, k));
        }
    }
    None
}

/// Largest e with p^e | n, for n ≥ 1 and prime p.
pub fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    debug_assert!(!n.is_zero(), "valuation of 0 is undefined");
    let mut e = 0u32;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if r.is_zero() {
            m = q;
            e += 1;
        } else {
            return e;
        }
    }
}

/// Word-sized 2-adic valuation.
pub fn valuation2_u64(n: u64) -> u32 {
    debug_assert!(n > 0);
    n.trailing_zeros()
}

/// Natural logarithm of a positive big integer, accurate to ~1 ulp of the
/// 53-bit mantissa. Safe for integers whose magnitude overflows f64.
pub fn log_big(n: &BigUint) -> f64 {
    debug_assert!(!n.is_zero());
    let bits = n.bits();
    if bits <= 53 {
        return n.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let top = (n >> shift).to_f64().expect("53 bits fit f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
