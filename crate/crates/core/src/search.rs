//! Exhaustive, parallel discovery of all multiperfect numbers up to a bound
//! via a segmented sum-of-divisors sieve.
//!
//! The sieve is divisor accumulation: every divisor d of an n inside the
//! segment contributes d to σ(n). Divisors are visited in complementary
//! pairs (d, n/d) with d ≤ √n, so a segment [lo, hi) costs
//! O((hi−lo)·log √hi + √hi) instead of a full pass over all d < hi — the
//! same arithmetic, visited from the small side. No factorization is
//! involved anywhere.
//!
//! Work is distributed as disjoint contiguous segments handed to a worker
//! pool; per-segment hit lists are merged in segment order, which makes the
//! output independent of the worker count.

use rayon::prelude::*;

use num_bigint::BigUint;

use crate::arith::factorize;
use crate::error::{Error, Result};

/// One multiperfect number found by the sieve: σ(m) = k·m with k ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub m: u64,
    pub k: u64,
    /// Index of the sieve segment that produced the hit.
    pub segment_id: usize,
}

/// Tuning knobs for [`search_multiperfect_with`].
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Entries per sieve segment. Cache residency dominates throughput, so
    /// the default keeps a segment's σ array at 32 MiB.
    pub segment_len: u64,
    /// Restrict hits to σ(m) = k·m for this k only.
    pub k_filter: Option<u64>,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            segment_len: 1 << 22,
            k_filter: None,
            workers: None,
        }
    }
}

/// Hard ceiling on a single σ-array allocation (entries, = 512 MiB of u64).
pub const MAX_SEGMENT_LEN: u64 = 1 << 26;

/// Sum of divisors for every integer in [lo, hi): position i holds σ(lo+i).
pub fn sieve_sigma(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo < 1 || hi <= lo {
        return Err(Error::InvalidInput(format!(
            "need 1 ≤ lo < hi, got [{lo}, {hi})"
        )));
    }
    let len = hi - lo;
    if len > MAX_SEGMENT_LEN {
        return Err(Error::SegmentTooLarge {
            len,
            max: MAX_SEGMENT_LEN,
        });
    }
    let mut sigma = vec![0u64; len as usize];
    let top = hi - 1;
    let root = top.isqrt();
    for d in 1..=root {
        // Smallest multiple q·d inside the segment with q ≥ d, so each
        // divisor pair (d, q) is credited exactly once from its small side.
        let mut q = lo.div_ceil(d).max(d);
        let mut multiple = q * d;
        while multiple <= top {
            let slot = &mut sigma[(multiple - lo) as usize];
            *slot += d;
            if q > d {
                *slot += q;
            }
            q += 1;
            multiple += d;
        }
    }
    Ok(sigma)
}

/// All m ≤ limit with m | σ(m) and σ(m)/m ≥ 2, ascending, independent of
/// worker count. Runs on the defaults; see [`search_multiperfect_with`].
pub fn search_multiperfect(limit: u64, k_filter: Option<u64>) -> Result<Vec<SearchHit>> {
    search_multiperfect_with(
        limit,
        &SearchConfig {
            k_filter,
            ..SearchConfig::default()
        },
    )
}

/// Segmented multiperfect search with explicit configuration.
pub fn search_multiperfect_with(limit: u64, config: &SearchConfig) -> Result<Vec<SearchHit>> {
    if limit < 2 {
        return Err(Error::InvalidInput(format!("limit must be ≥ 2, got {limit}")));
    }
    if config.segment_len == 0 || config.segment_len > MAX_SEGMENT_LEN {
        return Err(Error::SegmentTooLarge {
            len: config.segment_len,
            max: MAX_SEGMENT_LEN,
        });
    }
    let segments: Vec<(usize, u64, u64)> = (1..=limit)
        .step_by(config.segment_len as usize)
        .enumerate()
        .map(|(id, lo)| (id, lo, (lo + config.segment_len).min(limit + 1)))
        .collect();

    let scan = || -> Result<Vec<Vec<SearchHit>>> {
        segments
            .par_iter()
            .map(|&(id, lo, hi)| scan_segment(id, lo, hi, config.k_filter))
            .collect()
    };
    let per_segment = match config.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
            pool.install(scan)?
        }
        None => scan()?,
    };
    // Segment order == ascending m; concatenation is the ordered merge.
    Ok(per_segment.into_iter().flatten().collect())
}

fn scan_segment(id: usize, lo: u64, hi: u64, k_filter: Option<u64>) -> Result<Vec<SearchHit>> {
    let sigma = sieve_sigma(lo, hi)?;
    let mut hits = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        let m = lo + i as u64;
        if s % m != 0 {
            continue;
        }
        let k = s / m;
        if k < 2 {
            continue;
        }
        if k_filter.is_some_and(|want| want != k) {
            continue;
        }
        // The sieve's claim is re-verified through the factored route
        // before a hit is reported.
        let f = factorize(m).expect("m ≥ 1");
        assert_eq!(
            f.sigma(),
            BigUint::from(k) * BigUint::from(m),
            "sieve and factored σ disagree at m={m}"
        );
        hits.push(SearchHit {
            m,
            k,
            segment_id: id,
        });
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_segment_examples() {
        assert_eq!(sieve_sigma(1, 8).unwrap(), vec![1, 3, 4, 7, 6, 12, 8]);
        assert_eq!(sieve_sigma(28, 29).unwrap(), vec![56]);
        assert_eq!(sieve_sigma(496, 497).unwrap(), vec![992]);
    }

    #[test]
    fn sigma_rejects_bad_ranges() {
        assert!(sieve_sigma(0, 5).is_err());
        assert!(sieve_sigma(5, 5).is_err());
        assert!(matches!(
            sieve_sigma(1, 2 + MAX_SEGMENT_LEN),
            Err(Error::SegmentTooLarge { .. })
        ));
    }

    #[test]
    fn segment_partition_matches_single_pass() {
        let whole = sieve_sigma(1, 100_000).unwrap();
        let mut stitched = Vec::new();
        let mut lo = 1u64;
        // Deliberately ragged segment lengths to stress the boundaries.
        for len in [1u64, 996, 1000, 4096, 65_536].iter().cycle() {
            if lo >= 100_000 {
                break;
            }
            let hi = (lo + len).min(100_000);
            stitched.extend(sieve_sigma(lo, hi).unwrap());
            lo = hi;
        }
        assert_eq!(whole, stitched);
    }

    #[test]
    fn finds_perfect_numbers_to_ten_thousand() {
        let hits = search_multiperfect(10_000, Some(2)).unwrap();
        let ms: Vec<u64> = hits.iter().map(|h| h.m).collect();
        assert_eq!(ms, vec![6, 28, 496, 8128]);
        assert!(hits.iter().all(|h| h.k == 2));
    }

    #[test]
    fn unfiltered_search_reports_abundancy() {
        let hits = search_multiperfect(40_000, None).unwrap();
        let pairs: Vec<(u64, u64)> = hits.iter().map(|h| (h.m, h.k)).collect();
        assert_eq!(
            pairs,
            vec![(6, 2), (28, 2), (120, 3), (496, 2), (672, 3), (8128, 2), (30_240, 4), (32_760, 4)]
        );
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let run = |workers| {
            search_multiperfect_with(
                100_000,
                &SearchConfig {
                    segment_len: 1 << 10, // force many segments
                    k_filter: None,
                    workers: Some(workers),
                },
            )
            .unwrap()
        };
        let one = run(1);
        let two = run(2);
        let eight = run(8);
        assert_eq!(one, two);
        assert_eq!(one, eight);
        // Ascending m across segment boundaries.
        assert!(one.windows(2).all(|w| w[0].m < w[1].m));
    }

    #[test]
    fn search_rejects_degenerate_limits() {
        assert!(search_multiperfect(1, None).is_err());
    }
}
