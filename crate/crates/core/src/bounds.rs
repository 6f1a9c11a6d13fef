//! Radical bounds for multiperfect numbers, product bounds on the divisor
//! sum, and a scanner for the cyclic divisibility pattern that would let a
//! prime's square feed back into its own factor chain.
//!
//! For σ(m) = k·m the squarefree kernel rad(m) is forced well below m:
//! rad(m) ≤ m^β with β < 1 depending only on the 2-adic structure of k and
//! m. The verdicts here compare rad(m)^q against m^p in exact integer
//! arithmetic — no rounding is involved in any HOLDS/VIOLATES call.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::arith::{is_prime_u64, ExactRatio, Factorization};
use crate::error::{Error, Result};
use crate::ingest::MultiperfectRecord;

/// Parity of the multiperfect number itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The 2-adic shape that selects a radical-bound exponent: m's parity,
/// n = ν₂(k), α = ν₂(m) (zero when m is odd), and the odd part t of k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundClass {
    pub parity: Parity,
    pub n: u32,
    pub alpha: u32,
    pub t: u64,
}

/// Classifies an (m, k) shape. Exposed separately from [`classify`] so the
/// exponent table can be probed with shapes (odd m in particular) for which
/// no validated record exists.
pub fn classify_parts(m: &Factorization, k: u64) -> BoundClass {
    let n = k.trailing_zeros();
    BoundClass {
        parity: if m.is_even() { Parity::Even } else { Parity::Odd },
        n,
        alpha: m.exponent_of(&BigUint::from(2u32)),
        t: k >> n,
    }
}

/// Classifies a validated record.
pub fn classify(record: &MultiperfectRecord) -> BoundClass {
    classify_parts(record.m(), record.k())
}

/// The β selection rules as raw (numerator, denominator, strict) parts,
/// with num/den left exactly as the formulas produce them:
///
/// * odd m, odd k:          β = 1/2,              rad(m) ≤ m^β;
/// * odd m, ν₂(k) = 1:      β = 9/14,             strict;
/// * odd m, ν₂(k) = n ≥ 2:  β = (4n+1)/(4n+4),    strict;
/// * even m:                β = (2n+2α+1)/(2n+2α+2), strict,
///
/// with n = ν₂(k) and α = ν₂(m). Only the odd-m odd-k case is non-strict.
fn beta_parts(class: &BoundClass) -> (u64, u64, bool) {
    let n = u64::from(class.n);
    match class.parity {
        Parity::Odd => match n {
            0 => (1, 2, false),
            1 => (9, 14, true),
            _ => (4 * n + 1, 4 * n + 4, true),
        },
        Parity::Even => {
            let a = u64::from(class.alpha);
            (2 * n + 2 * a + 1, 2 * n + 2 * a + 2, true)
        }
    }
}

/// The radical-bound exponent β for a class, as an exact rational.
pub fn bound_exponent(class: &BoundClass) -> ExactRatio {
    let (num, den, _) = beta_parts(class);
    ExactRatio::new(BigUint::from(num), BigUint::from(den)).expect("den > 0")
}

/// Whether the class's bound claims rad(m) < m^β (true) or only ≤.
pub fn bound_is_strict(class: &BoundClass) -> bool {
    beta_parts(class).2
}

/// One record's radical bound, decided exactly. β = beta_num/beta_den is
/// kept in the unreduced form the selection formulas produce.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub record: MultiperfectRecord,
    pub beta_num: u64,
    pub beta_den: u64,
    pub rad_m: BigUint,
    /// rad(m)^beta_den < m^beta_num (or ≤ for the non-strict case),
    /// compared as integers.
    pub holds: bool,
    pub strict: bool,
}

/// Evaluates the radical bound for one record.
pub fn check_bound(record: &MultiperfectRecord) -> BoundReport {
    let (beta_num, beta_den, strict) = beta_parts(&classify(record));
    let rad_m = record.m().radical();
    let lhs = rad_m.pow(beta_den as u32);
    let rhs = record.value().pow(beta_num as u32);
    let holds = if strict { lhs < rhs } else { lhs <= rhs };
    BoundReport { record: record.clone(), beta_num, beta_den, rad_m, holds, strict }
}

/// Classification of a failed or passed bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVerdict {
    Holds,
    /// The bound fails but m is below the smallness threshold: the record
    /// sits in the finite fringe (squarefree even perfect numbers, i.e.
    /// m = 6) that every β < 1 necessarily misses.
    Boundary,
    Violates,
}

/// Every m strictly below this is treated as fringe when its bound fails.
/// The only multiperfect number that can fail is the squarefree even
/// perfect number 6, so the default clears it and nothing else.
pub const DEFAULT_BOUNDARY_THRESHOLD: u64 = 7;

/// Checks the radical bound across a catalog. A failing record with
/// m < min_m is reported as [`BoundVerdict::Boundary`] instead of
/// [`BoundVerdict::Violates`].
pub fn verify_database(
    records: &[MultiperfectRecord],
    min_m: u64,
) -> Vec<(BoundReport, BoundVerdict)> {
    records
        .iter()
        .map(|rec| {
            let report = check_bound(rec);
            let verdict = if report.holds {
                BoundVerdict::Holds
            } else if rec.value() < BigUint::from(min_m) {
                BoundVerdict::Boundary
            } else {
                BoundVerdict::Violates
            };
            (report, verdict)
        })
        .collect()
}

/// Abundancy of p₁·p₂·p₃²·p₄²(·p₅²) for distinct odd primes, exponents
/// assigned by position. The result is provably < 4 (each factor
/// σ(pᵉ)/pᵉ is below p/(p−1), and the five smallest odd primes already
/// cap the product at 2.45); the assertion documents the invariant.
pub fn lemma12_product_bound(primes: &[u64]) -> Result<ExactRatio> {
    if primes.len() != 4 && primes.len() != 5 {
        return Err(Error::InvalidInput(format!(
            "shape takes 4 or 5 primes, got {}",
            primes.len()
        )));
    }
    for &p in primes {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
        }
    }
    let mut entries: Vec<(BigUint, u32)> = primes
        .iter()
        .enumerate()
        .map(|(i, &p)| (BigUint::from(p), if i < 2 { 1 } else { 2 }))
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    // from_entries rejects repeated bases, which is exactly the
    // distinctness requirement.
    let f = Factorization::from_entries(entries)
        .map_err(|_| Error::InvalidInput("primes must be distinct".into()))?;
    let ratio = f.abundancy();
    assert!(ratio < ExactRatio::from(4u64), "product bound failed at {f}");
    Ok(ratio)
}

/// For odd f with r = ω(f) ≥ 4 distinct primes, decides
///
/// ```text
/// σ(f)/f < (5/4)^(r−3) · (3/2)(7/6)(11/10)
/// ```
///
/// exactly. True for every valid input: the i-th smallest odd prime is at
/// least 3, 5, 7, 11, 13, … so each abundancy factor is below the matching
/// term on the right.
pub fn lemma4_product_bound(f: &Factorization) -> Result<bool> {
    if f.is_even() {
        return Err(Error::InvalidInput("f must be odd".into()));
    }
    let r = f.omega();
    if r < 4 {
        return Err(Error::InvalidInput(format!("need ω(f) ≥ 4, got {r}")));
    }
    let pow = (r - 3) as u32;
    let rhs = ExactRatio::new(
        BigUint::from(3u32 * 7 * 11) * BigUint::from(5u32).pow(pow),
        BigUint::from(2u32 * 6 * 10) * BigUint::from(4u32).pow(pow),
    )
    .expect("den > 0");
    Ok(f.abundancy() < rhs)
}

/// Which sum enters the divisibility test of a cyclic chain: `Proof` keeps
/// the trailing empty product (B = Σ_{i=1..e} Π_{j>i} kⱼ, last term 1);
/// `Statement` drops it (one less).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BVariant {
    Proof,
    Statement,
}

/// A candidate cyclic chain: per-step abundancy targets k₁…k_e and the
/// prime p_y whose square would close the cycle. The chain is impossible
/// unless (A·p_y − B) divides p_y² + p_y + 1 with A = Πkᵢ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopyInstance {
    ks: Vec<u64>,
    p_y: u64,
    a: u128,
    b_proof: u128,
}

impl LoopyInstance {
    pub fn new(ks: Vec<u64>, p_y: u64) -> Result<Self> {
        if ks.is_empty() || ks.iter().any(|&k| k < 2) {
            return Err(Error::InvalidInput(
                "chain needs at least one k, all ≥ 2".into(),
            ));
        }
        if p_y == 0 {
            return Err(Error::InvalidInput("p_y must be positive".into()));
        }
        let mut a: u128 = 1;
        let mut b: u128 = 0;
        for &k in ks.iter().rev() {
            b = b.checked_add(a).ok_or_else(overflow)?;
            a = a.checked_mul(u128::from(k)).ok_or_else(overflow)?;
        }
        Ok(LoopyInstance { ks, p_y, a, b_proof: b })
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    pub fn p_y(&self) -> u64 {
        self.p_y
    }

    pub fn e(&self) -> usize {
        self.ks.len()
    }

    /// A = k₁·k₂·…·k_e.
    pub fn a(&self) -> u128 {
        self.a
    }

    /// The chain sum for the chosen variant; `Proof` exceeds `Statement`
    /// by exactly 1 (the empty trailing product).
    pub fn b(&self, variant: BVariant) -> u128 {
        match variant {
            BVariant::Proof => self.b_proof,
            BVariant::Statement => self.b_proof - 1,
        }
    }
}

fn overflow() -> Error {
    Error::InvalidInput("chain product overflows 128 bits".into())
}

/// True when (A·p_y − B) divides p_y² + p_y + 1 — the arithmetic window a
/// cyclic chain would have to thread. Uses the `Proof` sum, whose B/A is
/// exactly the partial reciprocal series; see [`loopy_check_with`].
pub fn loopy_check(instance: &LoopyInstance) -> Result<bool> {
    loopy_check_with(instance, BVariant::Proof)
}

/// [`loopy_check`] with the chain sum chosen explicitly.
pub fn loopy_check_with(instance: &LoopyInstance, variant: BVariant) -> Result<bool> {
    let p = u128::from(instance.p_y());
    let ap = instance.a().checked_mul(p).ok_or_else(overflow)?;
    let b = instance.b(variant);
    if ap <= b {
        return Err(Error::InvalidInput(format!(
            "A·p_y − B must be positive (A·p_y = {ap}, B = {b})"
        )));
    }
    let d = ap - b;
    Ok((p * p + p + 1) % d == 0)
}

fn check_scan_budget(e_max: usize, k_max: u64) -> Result<()> {
    if !(1..=5).contains(&e_max) || !(2..=6).contains(&k_max) {
        return Err(Error::InvalidInput(format!(
            "scan budget is 1 ≤ e ≤ 5 chain steps with 2 ≤ k ≤ 6, got e_max={e_max}, k_max={k_max}"
        )));
    }
    Ok(())
}

fn chain_tuples(e_max: usize, k_max: u64) -> Vec<Vec<u64>> {
    let mut tuples = Vec::new();
    for e in 1..=e_max {
        let mut ks = vec![2u64; e];
        loop {
            tuples.push(ks.clone());
            // Odometer increment, lexicographic order.
            let mut i = e;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if ks[i] < k_max {
                    ks[i] += 1;
                    for slot in &mut ks[i + 1..] {
                        *slot = 2;
                    }
                    break;
                }
                if i == 0 {
                    ks.clear();
                    break;
                }
            }
            if ks.is_empty() {
                break;
            }
        }
    }
    tuples
}

fn scan_tuples_over(
    tuples: &[Vec<u64>],
    ps: impl Fn(usize) -> Vec<u64> + Sync,
    variant: BVariant,
) -> Result<Vec<LoopyInstance>> {
    let per_tuple: Vec<Vec<LoopyInstance>> = tuples
        .par_iter()
        .map(|ks| {
            let mut hits = Vec::new();
            for p in ps(ks.len()) {
                let inst = LoopyInstance::new(ks.clone(), p)?;
                if loopy_check_with(&inst, variant)? {
                    hits.push(inst);
                }
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;
    Ok(per_tuple.into_iter().flatten().collect())
}

/// Scans every chain shape with e ≤ e_max steps and 2 ≤ kᵢ ≤ k_max over
/// p_y ∈ [3·2^e, 3·2^e + p_margin], returning the instances that pass the
/// divisibility test (expected: none). Ordered by (e, chain, p_y)
/// regardless of thread count. The lower end 3·2^e is where a genuine
/// chain's prime would have to live; see [`loopy_gap_report`] for the two
/// integers just below it.
pub fn loopy_scan(e_max: usize, k_max: u64, p_margin: u64) -> Result<Vec<LoopyInstance>> {
    loopy_scan_with(e_max, k_max, p_margin, BVariant::Proof)
}

/// [`loopy_scan`] with the chain sum chosen explicitly.
pub fn loopy_scan_with(
    e_max: usize,
    k_max: u64,
    p_margin: u64,
    variant: BVariant,
) -> Result<Vec<LoopyInstance>> {
    check_scan_budget(e_max, k_max)?;
    let tuples = chain_tuples(e_max, k_max);
    scan_tuples_over(
        &tuples,
        |e| {
            let base = 3u64 << e;
            (base..=base + p_margin).collect()
        },
        variant,
    )
}

/// Probes the two integers 3·2^e − 2 and 3·2^e − 1 just below each scan
/// window. The divisibility test alone has solutions there (all-2 chains
/// at p = 3·2^e − 2 under the `Proof` sum), but none of those p are prime,
/// so no chain arises — the report documents how thin the gap is.
pub fn loopy_gap_report(
    e_max: usize,
    k_max: u64,
    variant: BVariant,
) -> Result<Vec<LoopyInstance>> {
    check_scan_budget(e_max, k_max)?;
    let tuples = chain_tuples(e_max, k_max);
    scan_tuples_over(
        &tuples,
        |e| {
            let base = 3u64 << e;
            vec![base - 2, base - 1]
        },
        variant,
    )
}
