//! Compensated summation and the fixed-boundary chunked reduction used by
//! every series in this crate.
//!
//! Chunk boundaries are pinned at multiples of [`CHUNK_WIDTH`] so a sum over
//! `1..=N` is always split the same way. Chunks may be evaluated in parallel
//! but are merged in ascending order, which makes every sum bit-identical
//! regardless of thread count.

use rayon::prelude::*;

/// Fixed chunk width for parallel summation.
pub const CHUNK_WIDTH: u64 = 1_000_000;

/// Kahan–Babuška compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
        self.abs_sum += value.abs();
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }

    /// Bound on the accumulated rounding error: a small multiple of machine
    /// epsilon times the total absolute mass, independent of term count.
    #[inline]
    pub fn error_bound(&self) -> f64 {
        4.0 * f64::EPSILON * self.abs_sum
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

/// Sum `term(n)` for `n` in `1..=n_limit`, chunked at [`CHUNK_WIDTH`]
/// boundaries and merged in ascending chunk order. Returns the value and an
/// error bound.
pub fn chunked_sum<F>(n_limit: u64, term: F) -> (f64, f64)
where
    F: Fn(u64) -> f64 + Sync,
{
    if n_limit == 0 {
        return (0.0, 0.0);
    }
    let chunks: Vec<(u64, u64)> = chunk_ranges(1, n_limit);
    let partials: Vec<KahanSum> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = KahanSum::new();
            for n in lo..=hi {
                acc.add(term(n));
            }
            acc
        })
        .collect();
    merge_partials(&partials)
}

/// Inclusive `[lo, hi]` subranges of `[start, end]` split at CHUNK_WIDTH
/// multiples.
pub fn chunk_ranges(start: u64, end: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = start;
    while lo <= end {
        let hi = ((lo / CHUNK_WIDTH) + 1) * CHUNK_WIDTH - 1;
        out.push((lo, hi.min(end)));
        lo = hi + 1;
    }
    out
}

/// Combine per-chunk accumulators in order.
pub fn merge_partials(partials: &[KahanSum]) -> (f64, f64) {
    let mut total = KahanSum::new();
    let mut err = 0.0;
    for p in partials {
        total.add(p.value());
        err += p.error_bound();
    }
    (total.value(), err + total.error_bound())
}
