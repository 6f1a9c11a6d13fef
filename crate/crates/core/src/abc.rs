//! Radical-versus-size instrumentation: quality of ABC triples
//! (a + b = c, coprime) and the growth of rad(f(x)) along integer
//! polynomial values, including the two-variable homogeneous sweep.
//!
//! Polynomials live in ℤ[x] with exact BigInt arithmetic throughout; the
//! repeated-root test runs a primitive pseudo-remainder sequence, so no
//! rational coefficients ever appear.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorize, log_big};
use crate::error::{Error, Result};

/// A verified ABC triple a + b = c with its radical and quality.
#[derive(Debug, Clone)]
pub struct AbcTriple {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    /// rad(a·b·c), exactly.
    pub radical: BigUint,
    /// log c / log rad(abc); values above 1 are the interesting ones.
    pub quality: f64,
}

/// Builds the triple (a, b, a + b), computing rad(abc) exactly from the
/// three factorizations. The summands must be positive and coprime —
/// coprimality of the pair already makes a, b, c pairwise coprime, so
/// the radical is the product of the three radicals.
pub fn abc_quality(a: &BigUint, b: &BigUint) -> Result<AbcTriple> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("summands must be positive".into()));
    }
    if !a.gcd(b).is_one() {
        return Err(Error::NotCoprime { a: a.clone(), b: b.clone() });
    }
    let c = a + b;
    let radical = factorize(a.clone())?.radical()
        * factorize(b.clone())?.radical()
        * factorize(c.clone())?.radical();
    let quality = log_big(&c) / log_big(&radical);
    Ok(AbcTriple { a: a.clone(), b: b.clone(), c, radical, quality })
}

// --- integer polynomial helpers -------------------------------------------
//
// Polynomials are coefficient vectors, highest degree first, normalized so
// the leading coefficient is nonzero (the zero polynomial is the empty
// vector).

fn poly_trim(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.first().is_some_and(Zero::is_zero) {
        coeffs.remove(0);
    }
    coeffs
}

fn poly_eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn poly_derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    let d = coeffs.len().saturating_sub(1);
    poly_trim(
        coeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(d - i))
            .collect(),
    )
}

fn poly_content(coeffs: &[BigInt]) -> BigInt {
    coeffs
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn poly_primitive(coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let content = poly_content(&coeffs);
    if content.is_zero() || content.is_one() {
        return coeffs;
    }
    coeffs.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of u by v: the remainder of lc(v)^{deg u − deg v + 1}·u
/// divided by v, which stays in ℤ[x]. Requires deg u ≥ deg v ≥ 0.
fn poly_pseudo_rem(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(!v.is_empty() && u.len() >= v.len());
    let lead = v[0].clone();
    let mut rem: Vec<BigInt> = u.to_vec();
    while rem.len() >= v.len() {
        let top = rem[0].clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        for (i, vc) in v.iter().enumerate() {
            rem[i] -= &top * vc;
        }
        debug_assert!(rem[0].is_zero());
        rem.remove(0);
        rem = poly_trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

/// True iff gcd(f, f′) is a (nonzero) constant, i.e. f has no repeated
/// complex roots. Computed over ℤ via a primitive pseudo-remainder
/// sequence — contents are stripped each round to keep coefficients sane.
pub fn poly_is_squarefree(coeffs: &[BigInt]) -> Result<bool> {
    let f = poly_trim(coeffs.to_vec());
    if f.len() < 2 {
        return Err(Error::InvalidInput(
            "squarefreeness concerns nonconstant polynomials".into(),
        ));
    }
    let mut u = poly_primitive(f.clone());
    let mut v = poly_primitive(poly_derivative(&f));
    while !v.is_empty() {
        if u.len() < v.len() {
            std::mem::swap(&mut u, &mut v);
            continue;
        }
        let r = poly_primitive(poly_pseudo_rem(&u, &v));
        u = v;
        v = r;
    }
    Ok(u.len() == 1)
}

/// One row of a polynomial radical scan: the argument, the value f(x),
/// its radical, and the growth exponent log rad(|f(x)|) / log |x|.
/// `radical`/`exponent` are `None` on skipped rows (|f(x)| ≤ 1) and the
/// exponent is additionally `None` when |x| < 2 leaves it undefined.
#[derive(Debug, Clone)]
pub struct RadicalRow {
    pub x: i64,
    pub value: BigInt,
    pub radical: Option<BigUint>,
    pub exponent: Option<f64>,
}

/// Largest number of arguments one scan may visit.
pub const MAX_SCAN_SPAN: u64 = 1_000_000;

fn validated_poly(coeffs: &[i64]) -> Result<Vec<BigInt>> {
    let f = poly_trim(coeffs.iter().map(|&c| BigInt::from(c)).collect());
    if f.len() < 2 {
        return Err(Error::InvalidInput(
            "the scan needs a nonconstant polynomial".into(),
        ));
    }
    if !poly_is_squarefree(&f)? {
        return Err(Error::RepeatedRoots);
    }
    Ok(f)
}

/// Evaluates rad(f(x)) for every integer x in [lo, hi], reporting per-x
/// growth exponents. Coefficients are highest-degree-first. Polynomials
/// with repeated roots are rejected up front — their radical growth is
/// degenerate and the comparison meaningless.
pub fn poly_radical_scan(coeffs: &[i64], lo: i64, hi: i64) -> Result<Vec<RadicalRow>> {
    let f = validated_poly(coeffs)?;
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty range [{lo}, {hi}]")));
    }
    let span = hi.abs_diff(lo) + 1;
    if span > MAX_SCAN_SPAN {
        return Err(Error::SegmentTooLarge { len: span, max: MAX_SCAN_SPAN });
    }
    let mut rows = Vec::with_capacity(span as usize);
    for x in lo..=hi {
        let value = poly_eval(&f, &BigInt::from(x));
        if value.magnitude().is_one() || value.is_zero() {
            rows.push(RadicalRow { x, value, radical: None, exponent: None });
            continue;
        }
        let radical = factorize(value.magnitude().clone())?.radical();
        let exponent = (x.unsigned_abs() >= 2)
            .then(|| log_big(&radical) / (x.unsigned_abs() as f64).ln());
        rows.push(RadicalRow { x, value, radical: Some(radical), exponent });
    }
    Ok(rows)
}

/// One coprime point of the homogeneous sweep: F(m, n) with its radical
/// and the exponent of rad(F) relative to max(m, n).
#[derive(Debug, Clone)]
pub struct HomogeneousRow {
    pub m: u64,
    pub n: u64,
    pub value: BigInt,
    pub radical: Option<BigUint>,
    pub exponent: Option<f64>,
}

/// Sweeps the homogenization F(m, n) = Σ c_i mⁱ n^{d−i} of f over all
/// coprime pairs 1 ≤ m, n ≤ max, in lexicographic order. Rows with
/// |F| ≤ 1 are kept but carry no radical; the exponent is measured
/// against max(m, n) and needs max(m, n) ≥ 2.
pub fn homogeneous_radical_sweep(coeffs: &[i64], max: u64) -> Result<Vec<HomogeneousRow>> {
    let f = validated_poly(coeffs)?;
    if !(1..=1000).contains(&max) {
        return Err(Error::InvalidInput(format!(
            "the sweep covers 1 ≤ max ≤ 1000, got {max}"
        )));
    }
    let degree = f.len() - 1;
    let mut rows = Vec::new();
    for m in 1..=max {
        for n in (1..=max).filter(|&n| m.gcd(&n) == 1) {
            // F(m, n) = n^d · f(m/n), expanded exactly.
            let mut value = BigInt::zero();
            for (i, c) in f.iter().enumerate() {
                let pow_m = BigInt::from(m).pow((degree - i) as u32);
                let pow_n = BigInt::from(n).pow(i as u32);
                value += c * pow_m * pow_n;
            }
            let scale = m.max(n);
            if value.magnitude().is_one() || value.is_zero() {
                rows.push(HomogeneousRow { m, n, value, radical: None, exponent: None });
                continue;
            }
            let radical = factorize(value.magnitude().clone())?.radical();
            let exponent =
                (scale >= 2).then(|| log_big(&radical) / (scale as f64).ln());
            rows.push(HomogeneousRow { m, n, value, radical: Some(radical), exponent });
        }
    }
    Ok(rows)
}
