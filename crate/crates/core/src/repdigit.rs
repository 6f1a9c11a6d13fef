//! Repunits U_n = (gⁿ − 1)/(g − 1), their divisor-sum growth along the
//! doubling chain U_1 | U_2 | U_4 | …, rank of apparition, a scan for
//! multiperfect multirepdigits D·U_{2^s}, and an exact finite check of the
//! Euler-product identity that powers the growth bound.
//!
//! Factoring repunits head-on is wasteful: U_n splits algebraically into
//! the cyclotomic values Φ_d(g) over the divisors d | n, and each piece is
//! exponentially smaller than U_n. Everything here that needs a repunit
//! factored goes through that split.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{
    factorize, factorize_with, is_prime_u64, EffortCap, ExactRatio, FactorOutcome, Factorization,
};
use crate::arith::primality::powmod;
use crate::error::{Error, Result};

/// The base-g repunit U_n = 1 + g + … + g^{n−1} = (gⁿ − 1)/(g − 1).
///
/// Panics if g < 2 or n = 0 — both are domain errors in the caller.
pub fn lucas_u(g: u64, n: u64) -> BigUint {
    assert!(g >= 2, "repunit base must be ≥ 2");
    assert!(n >= 1, "repunit length must be ≥ 1");
    let n = u32::try_from(n).expect("repunit length fits in 32 bits");
    let g = BigUint::from(g);
    (g.pow(n) - 1u32) / (g - 1u32)
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}

fn moebius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The d-th cyclotomic polynomial evaluated at g, exactly:
/// Φ_d(g) = Π_{e | d} (g^e − 1)^{μ(d/e)}. For d ≥ 2 this is an integer
/// > 1, and Π_{d | n, d ≥ 2} Φ_d(g) = U_n.
pub fn cyclotomic_value(d: u64, g: u64) -> BigUint {
    assert!(d >= 1 && g >= 2);
    let g = BigUint::from(g);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for e in divisors_of(d) {
        let term = g.pow(u32::try_from(e).expect("divisor fits u32")) - 1u32;
        match moebius(d / e) {
            1 => num *= &term,
            -1 => den *= &term,
            _ => {}
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Factorization of U_n, assembled piecewise from the cyclotomic values
/// Φ_d(g) for d | n, d ≥ 2. If some piece cannot be split within the cap,
/// the outcome is incomplete with the unfinished remainder as cofactor.
pub fn repunit_factorization(g: u64, n: u64, cap: &EffortCap) -> Result<FactorOutcome> {
    if g < 2 || n < 1 {
        return Err(Error::InvalidInput(format!(
            "repunit needs g ≥ 2 and n ≥ 1, got g={g}, n={n}"
        )));
    }
    let mut done = Factorization::one();
    let pieces: Vec<BigUint> = divisors_of(n)
        .into_iter()
        .filter(|&d| d >= 2)
        .map(|d| cyclotomic_value(d, g))
        .collect();
    for (i, piece) in pieces.iter().enumerate() {
        match factorize_with(piece.clone(), cap)? {
            FactorOutcome::Complete(f) => done = done.merge(&f),
            FactorOutcome::Incomplete { partial, cofactor } => {
                let mut rest = cofactor;
                for later in &pieces[i + 1..] {
                    rest *= later;
                }
                return Ok(FactorOutcome::Incomplete {
                    partial: done.merge(&partial),
                    cofactor: rest,
                });
            }
        }
    }
    Ok(FactorOutcome::Complete(done))
}

/// One rung of the doubling chain: s, the repunit U_{2^s}, and its exact
/// abundancy σ(U)/U.
#[derive(Debug, Clone)]
pub struct ChainEntry {
    pub s: u32,
    pub repunit: BigUint,
    pub ratio: ExactRatio,
}

/// Abundancies along U_1 | U_2 | U_4 | … | U_{2^s_max}, strictly
/// increasing from s = 0 on. `truncated_at` marks the first rung whose
/// factoring exceeded the effort cap; entries stop just before it.
#[derive(Debug, Clone)]
pub struct SigmaRatioChain {
    pub g: u64,
    pub entries: Vec<ChainEntry>,
    pub truncated_at: Option<u32>,
}

impl SigmaRatioChain {
    pub fn ratios(&self) -> Vec<ExactRatio> {
        self.entries.iter().map(|e| e.ratio.clone()).collect()
    }
}

/// Walks the doubling chain up to s_max, reusing at every step the split
/// U_{2^{s+1}} = U_{2^s} · (g^{2^s} + 1): only the new factor g^{2^s} + 1
/// is factored per rung, never the whole repunit.
pub fn sigma_ratio_chain(g: u64, s_max: u32, cap: &EffortCap) -> Result<SigmaRatioChain> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("base must be ≥ 2, got {g}")));
    }
    let mut chain = SigmaRatioChain { g, entries: Vec::new(), truncated_at: None };
    let mut fact = Factorization::one();
    chain.entries.push(ChainEntry {
        s: 0,
        repunit: BigUint::one(),
        ratio: ExactRatio::from(1u64),
    });
    for s in 1..=s_max {
        let step = BigUint::from(g).pow(1 << (s - 1)) + 1u32;
        match factorize_with(step, cap)? {
            FactorOutcome::Complete(f) => {
                fact = fact.merge(&f);
                chain.entries.push(ChainEntry {
                    s,
                    repunit: fact.value(),
                    ratio: fact.abundancy(),
                });
            }
            FactorOutcome::Incomplete { .. } => {
                chain.truncated_at = Some(s);
                break;
            }
        }
    }
    Ok(chain)
}

/// Rank of apparition z(p): the smallest n ≥ 1 with p | U_n, for an odd
/// prime p not dividing g. Two regimes:
///
/// * p | g − 1: then U_n ≡ n (mod p), so the first hit is z = p itself;
/// * p ∤ g − 1: then p | U_n ⟺ p | gⁿ − 1, so z is the multiplicative
///   order of g modulo p, and z | p − 1.
pub fn rank_of_apparition(p: u64, g: u64) -> Result<u64> {
    if g < 2 {
        return Err(Error::InvalidInput(format!("base must be ≥ 2, got {g}")));
    }
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if g % p == 0 {
        return Err(Error::PDividesBase { p, g });
    }
    if (g - 1) % p == 0 {
        return Ok(p);
    }
    let minus_one = factorize(p - 1).expect("p ≥ 3");
    let mut order = p - 1;
    for (q, _) in minus_one.entries() {
        let q: u64 = q.try_into().expect("divisor of a u64");
        while order % q == 0 && powmod(g % p, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// The measured side of the repunit growth bound
/// log(σ(U_m)/U_m) ≪_g (log(e·ω(m)))² for one (g, m).
#[derive(Debug, Clone, Copy)]
pub struct InstrumentReport {
    pub g: u64,
    pub m: u64,
    /// log(σ(U_m)/U_m).
    pub log_ratio: f64,
    /// (log(e·ω(m)))².
    pub bound_term: f64,
    /// log_ratio / bound_term — the implied constant at this point.
    pub quotient: f64,
}

/// Computes the growth-bound quotient for U_m; the only floating point in
/// this module, used for constant-fitting reports.
pub fn lemma16_instrument(g: u64, m: u64, cap: &EffortCap) -> Result<InstrumentReport> {
    if g < 2 || m < 2 {
        return Err(Error::InvalidInput(format!(
            "instrument needs g ≥ 2 and m ≥ 2, got g={g}, m={m}"
        )));
    }
    let u = repunit_factorization(g, m, cap)?.complete()?;
    let log_ratio = u.abundancy().ln();
    let omega = factorize(m).expect("m ≥ 2").omega();
    let bound_term = (1.0 + (omega as f64).ln()).powi(2);
    Ok(InstrumentReport {
        g,
        m,
        log_ratio,
        bound_term,
        quotient: log_ratio / bound_term,
    })
}

/// One scanned multirepdigit candidate that is worth reporting: either a
/// verified multiperfect hit or a candidate whose factoring exceeded the
/// effort cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanFinding {
    /// D·U_{2^s} is k-perfect, re-verified through an independent
    /// factorization of the full value.
    Hit { d: u64, s: u32, k: u64, value: BigUint },
    /// The candidate could not be settled within the effort cap.
    Undetermined { d: u64, s: u32 },
}

/// Scans D ≤ d_max, 1 ≤ s ≤ s_max for multiperfect D·U_{2^s}, reporting
/// hits (with their abundancy k) and undetermined candidates in
/// lexicographic (s, D) order. s = 0 is excluded by construction: every
/// integer is D·U_1, which would make the question vacuous.
pub fn scan_multirepdigit_multiperfect(
    g: u64,
    d_max: u64,
    s_max: u32,
    cap: &EffortCap,
) -> Result<Vec<ScanFinding>> {
    if g < 2 || d_max < 1 || s_max < 1 {
        return Err(Error::InvalidInput(format!(
            "scan needs g ≥ 2, d_max ≥ 1, s_max ≥ 1, got g={g}, d_max={d_max}, s_max={s_max}"
        )));
    }
    let mut findings = Vec::new();
    let mut repunit_fact = Factorization::one();
    let mut chain_broken = false;
    for s in 1..=s_max {
        if !chain_broken {
            let step = BigUint::from(g).pow(1 << (s - 1)) + 1u32;
            match factorize_with(step, cap)? {
                FactorOutcome::Complete(f) => repunit_fact = repunit_fact.merge(&f),
                FactorOutcome::Incomplete { .. } => chain_broken = true,
            }
        }
        if chain_broken {
            for d in 1..=d_max {
                findings.push(ScanFinding::Undetermined { d, s });
            }
            continue;
        }
        for d in 1..=d_max {
            let candidate = factorize(d).expect("d ≥ 1").merge(&repunit_fact);
            let value = candidate.value();
            let sigma = candidate.sigma();
            if !(&sigma % &value).is_zero() {
                continue;
            }
            let k: u64 = (&sigma / &value)
                .try_into()
                .expect("abundancy of a finite value is tiny");
            if k < 2 {
                continue;
            }
            // Independent re-check: factor the assembled value from
            // scratch and recompute σ.
            match factorize_with(value.clone(), cap)? {
                FactorOutcome::Complete(fresh) => {
                    assert_eq!(fresh.sigma(), sigma, "σ mismatch re-factoring {value}");
                    findings.push(ScanFinding::Hit { d, s, k, value });
                }
                FactorOutcome::Incomplete { .. } => {
                    findings.push(ScanFinding::Undetermined { d, s });
                }
            }
        }
    }
    Ok(findings)
}

/// Exact two-sided evaluation of the Euler-product identity
///
/// ```text
/// Σ_{n ∈ 𝒫*} ν_p(n)/n  =  p/(p−1)² · Π_{q ∈ P, q≠p} q/(q−1)
/// ```
///
/// for one prime p of the finite set P, where 𝒫* is all products of
/// primes in P. The left side is summed over n ≤ height; `tail_bound` is
/// a certified rational upper bound on what the truncation discarded, so
/// `within` ⟺ 0 ≤ rhs − lhs ≤ tail_bound proves the identity to that
/// accuracy.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub prime: u64,
    pub lhs: ExactRatio,
    pub rhs: ExactRatio,
    pub tail_bound: ExactRatio,
    pub within: bool,
}

/// Integer square root as a rational-bound helper: for q ≥ 2,
/// r = isqrt(q·10⁶) has r ≤ 1000·√q, hence 1000/r ≥ q^{−1/2} and the
/// increasing functions below evaluated at 1000/r dominate their values
/// at q^{−1/2}.
fn scaled_isqrt(q: u64) -> u64 {
    (q * 1_000_000).isqrt()
}

/// (1 − q^{−1/2})^{−1} ≤ r/(r − 1000), exactly representable.
fn geometric_cap(q: u64) -> ExactRatio {
    let r = scaled_isqrt(q);
    ExactRatio::new(BigUint::from(r), BigUint::from(r - 1000)).expect("q ≥ 2")
}

/// Σ_{a≥1} a·x^a = x/(1−x)² at x = q^{−1/2} is ≤ 1000r/(r−1000)².
fn weighted_geometric_cap(q: u64) -> ExactRatio {
    let r = scaled_isqrt(q);
    ExactRatio::new(
        BigUint::from(1000u64) * BigUint::from(r),
        BigUint::from(r - 1000).pow(2),
    )
    .expect("q ≥ 2")
}

/// Checks the identity coefficient-wise for the first k primes (k ≤ 6),
/// truncating the left side at `height`. The discarded tail is bounded by
/// Rankin's trick at exponent 1/2:
///
/// ```text
/// Σ_{n > H} ν_p(n)/n ≤ H^{−1/2} Σ_{n ∈ 𝒫*} ν_p(n)·n^{−1/2}
///                    = H^{−1/2} · [x/(1−x)²]_{x=p^{−1/2}} · Π_{q≠p} (1−q^{−1/2})^{−1}
/// ```
///
/// with every irrational factor replaced by the certified rational caps
/// above, so the verdict is exact.
pub fn euler_product_identity_check(k: usize, height: u64) -> Result<Vec<IdentityCheck>> {
    const FIRST_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidInput(format!(
            "identity is checked for the first k ≤ 6 primes, got k={k}"
        )));
    }
    if !(100..=1_000_000_000_000u64).contains(&height) {
        return Err(Error::InvalidInput(format!(
            "height must be in [100, 10^12], got {height}"
        )));
    }
    let primes = &FIRST_PRIMES[..k];

    // All P-smooth n ≤ height, by depth-first extension.
    let mut smooth: Vec<u64> = Vec::new();
    let mut stack = vec![(1u64, 0usize)];
    while let Some((n, i)) = stack.pop() {
        smooth.push(n);
        for (j, &p) in primes.iter().enumerate().skip(i) {
            if n <= height / p {
                stack.push((n * p, j));
            }
        }
    }
    smooth.sort_unstable();

    // Common denominator: D = Π p^{⌊log_p height⌋} is divisible by every
    // smooth n ≤ height, so each term ν·(D/n) is an integer.
    let mut common = BigUint::one();
    for &p in primes {
        let mut pk = p;
        let mut e = 1u32;
        while pk <= height / p {
            pk *= p;
            e += 1;
        }
        common *= BigUint::from(p).pow(e);
    }

    let mut checks = Vec::new();
    for &p in primes {
        let mut numerator = BigUint::zero();
        for &n in &smooth {
            let mut nu = 0u32;
            let mut rest = n;
            while rest % p == 0 {
                nu += 1;
                rest /= p;
            }
            if nu > 0 {
                numerator += &common / BigUint::from(n) * BigUint::from(nu);
            }
        }
        let lhs = ExactRatio::new(numerator, common.clone())?;

        let mut rhs_num = BigUint::from(p);
        let mut rhs_den = BigUint::from(p - 1).pow(2);
        for &q in primes.iter().filter(|&&q| q != p) {
            rhs_num *= BigUint::from(q);
            rhs_den *= BigUint::from(q - 1);
        }
        let rhs = ExactRatio::new(rhs_num, rhs_den)?;

        let mut tail = weighted_geometric_cap(p);
        for &q in primes.iter().filter(|&&q| q != p) {
            tail = tail.mul(&geometric_cap(q));
        }
        tail = tail.mul(&ExactRatio::new(BigUint::one(), BigUint::from(height.isqrt()))?);

        let within = match rhs.checked_sub(&lhs) {
            Some(gap) => gap <= tail,
            None => false,
        };
        checks.push(IdentityCheck { prime: p, lhs, rhs, tail_bound: tail, within });
    }
    Ok(checks)
}
