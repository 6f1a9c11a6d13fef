//! Divisor-sum behaviour of factorials: exact abundancy σ(n!)/n! from
//! Legendre's prime-exponent formula, the perfect-factorial scan, strict
//! monotonicity of factorial abundancy, the radical-vs-size ratio
//! log rad(n!)/log n!, and the status of n! + 1 as a multiperfect
//! candidate.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{
    factorize_with, is_prime, is_prime_u64, log_big, EffortCap, ExactRatio, FactorOutcome,
    Factorization,
};
use crate::error::{Error, Result};

/// Largest n accepted by the factorial operations unless a caller opts
/// into a bigger budget. σ(200!) is a ~700-digit exact integer; past
/// that, sizes grow faster than any use here warrants.
pub const DEFAULT_FACTORIAL_CAP: u64 = 200;

/// Exponent of the prime p in n!, by Legendre's formula
/// ν_p(n!) = Σ_{j ≥ 1} ⌊n/pʲ⌋.
pub fn legendre_exponent(n: u64, p: u64) -> u32 {
    debug_assert!(p >= 2);
    let mut total = 0u64;
    let mut power = p;
    loop {
        total += n / power;
        match power.checked_mul(p) {
            Some(next) if next <= n => power = next,
            _ => break,
        }
    }
    u32::try_from(total).expect("ν_p(n!) < n")
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime_u64(p)).collect()
}

/// The full factorization of n!, assembled prime-by-prime from Legendre
/// exponents — no multiplication of n! itself ever happens.
pub fn factorial_factorization(n: u64) -> Factorization {
    let entries = primes_up_to(n)
        .into_iter()
        .map(|p| (BigUint::from(p), legendre_exponent(n, p)))
        .collect();
    Factorization::from_entries(entries).expect("distinct ascending primes")
}

/// Product of all primes ≤ n — this is exactly rad(n!) for n ≥ 2.
pub fn primorial(n: u64) -> BigUint {
    primes_up_to(n)
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * BigUint::from(p))
}

/// σ(n!)/n! in lowest terms, under the default size cap.
pub fn factorial_abundancy(n: u64) -> Result<ExactRatio> {
    factorial_abundancy_capped(n, DEFAULT_FACTORIAL_CAP)
}

/// σ(n!)/n! in lowest terms for n up to an explicit cap.
pub fn factorial_abundancy_capped(n: u64, cap: u64) -> Result<ExactRatio> {
    if n < 1 {
        return Err(Error::InvalidInput("factorial abundancy needs n ≥ 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            context: format!("factorial abundancy at n={n} exceeds the cap {cap}"),
        });
    }
    Ok(factorial_factorization(n).abundancy())
}

/// All n in 2..=N whose factorial is perfect, i.e. σ(n!) = 2·n!.
/// Strict monotonicity of the abundancy makes {3} the complete answer
/// for every N ≥ 3.
pub fn prop16_scan(n_max: u64) -> Result<Vec<u64>> {
    if n_max < 2 {
        return Err(Error::InvalidInput("scan needs N ≥ 2".into()));
    }
    let two = ExactRatio::from(2u64);
    let mut hits = Vec::new();
    for n in 2..=n_max {
        if factorial_abundancy(n)? == two {
            hits.push(n);
        }
    }
    Ok(hits)
}

/// True iff σ(n!)/n! strictly increases across 2..=N. Each prime
/// exponent of n! is monotone in n and a new prime enters at every prime
/// n, so this should hold at any scale; the check is exact.
pub fn prop18_monotonicity(n_max: u64) -> Result<bool> {
    if n_max < 2 {
        return Err(Error::InvalidInput("monotonicity needs N ≥ 2".into()));
    }
    let mut previous = factorial_abundancy(2)?;
    for n in 3..=n_max {
        let current = factorial_abundancy(n)?;
        if current <= previous {
            return Ok(false);
        }
        previous = current;
    }
    Ok(true)
}

/// log rad(n!) / log n! — how small the radical of a factorial is
/// relative to the factorial itself. Tends to 0, since
/// rad(n!) = primorial(n) = e^{θ(n)} ≈ eⁿ while log n! ≈ n log n.
pub fn lemma17_ratio(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput("ratio needs n ≥ 2".into()));
    }
    if n > DEFAULT_FACTORIAL_CAP {
        return Err(Error::CapExceeded {
            context: format!("radical ratio at n={n} exceeds the cap {DEFAULT_FACTORIAL_CAP}"),
        });
    }
    Ok(log_big(&primorial(n)) / log_big(&factorial_factorization(n).value()))
}

/// What became of n! + 1 in the multiperfect scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftStatus {
    /// n! + 1 is prime, hence σ = n! + 2 < 2(n! + 1): never multiperfect.
    Prime,
    /// Fully factored; σ(n!+1) is not an integer multiple ≥ 2 of n!+1.
    NotMultiperfect,
    /// Fully factored and k-perfect — no n ≤ 25 produces this.
    Multiperfect { k: u64 },
    /// Composite, but no complete factorization within the effort cap.
    Undetermined,
}

/// Classifies n! + 1 for every n in 1..=N. Primality is decided first —
/// a prime value can never be multiperfect — so only composite shifts
/// pay for factoring, under the caller's effort cap.
pub fn prop19_scan(n_max: u64, cap: &EffortCap) -> Result<Vec<(u64, ShiftStatus)>> {
    if !(1..=25).contains(&n_max) {
        return Err(Error::InvalidInput(format!(
            "the shifted-factorial scan covers 1 ≤ N ≤ 25, got {n_max}"
        )));
    }
    let mut out = Vec::new();
    let mut factorial = BigUint::one();
    for n in 1..=n_max {
        factorial *= BigUint::from(n);
        let shifted = &factorial + BigUint::one();
        let status = if is_prime(&shifted) {
            ShiftStatus::Prime
        } else {
            match factorize_with(shifted.clone(), cap)? {
                FactorOutcome::Complete(f) => {
                    let sigma = f.sigma();
                    if (&sigma % &shifted).is_zero() {
                        let k = u64::try_from(&sigma / &shifted).expect("σ(m)/m is tiny");
                        ShiftStatus::Multiperfect { k }
                    } else {
                        ShiftStatus::NotMultiperfect
                    }
                }
                FactorOutcome::Incomplete { .. } => ShiftStatus::Undetermined,
            }
        };
        out.push((n, status));
    }
    Ok(out)
}
