//! Brent's variant of Pollard's rho method, with an optional effort cap.
//!
//! The iteration is fully deterministic: attempts use the polynomial
//! x² + c with c = 1, 2, 3, … in order, so identical inputs always yield
//! identical factor splits (and therefore identical program output).

use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Budget for factoring work. `None` fields mean unlimited.
///
/// The wall-clock budget applies to one `factorize` call as a whole; the
/// iteration budget counts rho polynomial evaluations.
#[derive(Debug, Clone, Default)]
pub struct EffortCap {
    pub max_seconds: Option<f64>,
    pub max_rho_iterations: Option<u64>,
}

impl EffortCap {
    /// No limits; factoring runs until it finishes.
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn seconds(s: f64) -> Self {
        EffortCap {
            max_seconds: Some(s),
            max_rho_iterations: None,
        }
    }

    pub fn iterations(n: u64) -> Self {
        EffortCap {
            max_seconds: None,
            max_rho_iterations: Some(n),
        }
    }

    /// Reads `MPLAB_EFFORT_CAP_SECONDS`; unlimited when unset or unparsable.
    pub fn from_env() -> Self {
        match std::env::var("MPLAB_EFFORT_CAP_SECONDS") {
            Ok(v) => match v.trim().parse::<f64>() {
                Ok(s) if s > 0.0 => EffortCap::seconds(s),
                _ => EffortCap::unlimited(),
            },
            Err(_) => EffortCap::unlimited(),
        }
    }
}

/// Tracks consumption against an [`EffortCap`] across one factoring call.
pub(crate) struct EffortMeter<'a> {
    cap: &'a EffortCap,
    started: Instant,
    iterations: u64,
    exhausted: bool,
}

impl<'a> EffortMeter<'a> {
    pub(crate) fn new(cap: &'a EffortCap) -> Self {
        EffortMeter {
            cap,
            started: Instant::now(),
            iterations: 0,
            exhausted: false,
        }
    }

    /// Records `n` rho iterations; returns false once the budget is spent.
    pub(crate) fn spend(&mut self, n: u64) -> bool {
        if self.exhausted {
            return false;
        }
        self.iterations += n;
        if let Some(max) = self.cap.max_rho_iterations {
            if self.iterations > max {
                self.exhausted = true;
                return false;
            }
        }
        if let Some(max) = self.cap.max_seconds {
            // Checking the clock is cheap relative to a 256-iteration batch.
            if self.started.elapsed().as_secs_f64() > max {
                self.exhausted = true;
                return false;
            }
        }
        true
    }
}

const BATCH: u64 = 128;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// One Brent cycle with polynomial x² + c. Returns a nontrivial factor of
/// `n`, or None if this c fails or the budget runs out.
fn brent_attempt_u64(n: u64, c: u64, meter: &mut EffortMeter) -> Option<u64> {
    let step = |x: u64| ((mulmod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        if !meter.spend(r) {
            return None;
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let chunk = BATCH.min(r - k);
            for _ in 0..chunk {
                y = step(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += chunk;
            if !meter.spend(chunk) {
                return None;
            }
        }
        r <<= 1;
    }
    if g == n {
        // The batched gcd collapsed; redo the last stretch one step at a time.
        loop {
            ys = step(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
            if !meter.spend(1) {
                return None;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// Finds a nontrivial factor of an odd composite `n` (not a prime power of
/// a huge prime — callers strip perfect powers first). None = budget spent.
pub(crate) fn brent_u64(n: u64, meter: &mut EffortMeter) -> Option<u64> {
    debug_assert!(n > 3 && n % 2 != 0);
    for c in 1..u64::MAX {
        if meter.exhausted {
            return None;
        }
        if let Some(f) = brent_attempt_u64(n, c, meter) {
            return Some(f);
        }
        if meter.exhausted {
            return None;
        }
    }
    None
}

fn abs_diff_big(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

fn brent_attempt_big(n: &BigUint, c: u64, meter: &mut EffortMeter) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |x: &BigUint| (x * x + &c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u8);
    let mut r = 1u64;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        if !meter.spend(r) {
            return None;
        }
        let mut k = 0u64;
        while k < r && g == one {
            ys = y.clone();
            let chunk = BATCH.min(r - k);
            for _ in 0..chunk {
                y = step(&y);
                q = (&q * abs_diff_big(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += chunk;
            if !meter.spend(chunk) {
                return None;
            }
        }
        r <<= 1;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = abs_diff_big(&x, &ys).gcd(n);
            if g > one {
                break;
            }
            if !meter.spend(1) {
                return None;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// BigUint twin of [`brent_u64`].
pub(crate) fn brent_big(n: &BigUint, meter: &mut EffortMeter) -> Option<BigUint> {
    debug_assert!(!n.is_zero() && n.is_odd());
    for c in 1..u64::MAX {
        if meter.exhausted {
            return None;
        }
        if let Some(f) = brent_attempt_big(n, c, meter) {
            return Some(f);
        }
        if meter.exhausted {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primality::is_prime_u64;

    #[test]
    fn splits_word_sized_semiprimes() {
        let cap = EffortCap::unlimited();
        for n in [
            8051u64,                     // 83 · 97
            10_403,                      // 101 · 103
            329_891 * 11,                // 10! + 1
            1_000_003u64 * 1_000_033,    // twelve-digit semiprime
            2_147_483_647u64 * 65_537,   // large prime times Fermat prime
        ] {
            let mut meter = EffortMeter::new(&cap);
            let f = brent_u64(n, &mut meter).expect("factor found");
            assert!(f > 1 && f < n && n % f == 0, "bad factor {f} of {n}");
        }
    }

    #[test]
    fn splits_big_semiprimes() {
        let p = BigUint::from(10_000_000_019u64);
        let q = BigUint::from(100_000_000_003u64);
        let n = &p * &q;
        let cap = EffortCap::unlimited();
        let mut meter = EffortMeter::new(&cap);
        let f = brent_big(&n, &mut meter).expect("factor found");
        assert!(f == p || f == q, "unexpected factor {f}");
        assert!(is_prime_u64(10_000_000_019) && is_prime_u64(100_000_000_003));
    }

    #[test]
    fn iteration_cap_halts_early() {
        // The same semiprime with a budget far too small to split it.
        let n = BigUint::from(10_000_000_019u64) * BigUint::from(100_000_000_003u64);
        let cap = EffortCap::iterations(16);
        let mut meter = EffortMeter::new(&cap);
        assert_eq!(brent_big(&n, &mut meter), None);
    }
}
