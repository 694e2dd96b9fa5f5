//! Tuple weights and truncated Dirichlet-type sums over offset tuples.
//!
//! For an offset tuple H = {0, h_2, …, h_k} and n ≥ 1 write L(n) =
//! Σ_h log(n+h); the geometric mean of the components is exp(L/k). The two
//! sum families are
//!
//!   von Mangoldt form: Σ_{n ≤ N} λ(n) · (L/k)^m · exp(−sL/k),
//!   prime form:        Σ_{p ≤ N, all p+h prime} (L/k)^m · exp(−sL/k),
//!
//! where λ(n) is the normalized von Mangoldt product: Π_h 1/a_h when every
//! n+h = p_h^{a_h} is a prime power and 0 otherwise. The prime form is the
//! subsum of the von Mangoldt form over all-prime tuples (where λ = 1), so
//! their difference — the prime-power remainder — is nonnegative term by
//! term.
//!
//! Sums are compensated and chunked at fixed boundaries (see [`crate::kahan`]),
//! so values are reproducible bit for bit at any thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::OffsetTuple;
use crate::error::{Error, Result};
use crate::kahan::{chunk_ranges, merge_partials, KahanSum};
use crate::sieve::SieveTable;

/// Which sum family a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    VonMangoldtForm,
    PrimeForm,
}

impl std::fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesKind::VonMangoldtForm => write!(f, "von_mangoldt_form"),
            SeriesKind::PrimeForm => write!(f, "prime_form"),
        }
    }
}

/// One truncated evaluation of a log-zeta-type sum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesSample {
    pub s: f64,
    pub n_limit: u64,
    pub log_power: u32,
    pub kind: SeriesKind,
    pub value: f64,
    pub err_bound: f64,
}

impl SeriesSample {
    pub fn csv_header() -> &'static str {
        "s,N,m,kind,value,err_bound"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.11e},{:.3e}",
            self.s, self.n_limit, self.log_power, self.kind, self.value, self.err_bound
        )
    }
}

/// An offset tuple paired with the sieve that serves its component queries.
#[derive(Clone, Copy)]
pub struct WeightContext<'a> {
    offsets: &'a OffsetTuple,
    table: &'a SieveTable,
}

impl<'a> WeightContext<'a> {
    pub fn new(offsets: &'a OffsetTuple, table: &'a SieveTable) -> Self {
        WeightContext { offsets, table }
    }

    pub fn offsets(&self) -> &OffsetTuple {
        self.offsets
    }

    pub fn table(&self) -> &SieveTable {
        self.table
    }

    pub fn k(&self) -> u32 {
        self.offsets.k() as u32
    }

    fn check_range(&self, n: u64) -> Result<()> {
        let top = n
            .checked_add(self.offsets.max_offset())
            .ok_or_else(|| Error::domain("n + max offset overflows"))?;
        if n == 0 || top > self.table.limit() {
            return Err(Error::Range {
                n: top,
                limit: self.table.limit(),
            });
        }
        Ok(())
    }

    /// Σ_h log(n+h).
    #[inline]
    fn log_sum(&self, n: u64) -> f64 {
        let mut total = 0.0;
        for &h in self.offsets.offsets() {
            total += ((n + h) as f64).ln();
        }
        total
    }

    /// Geometric mean of the components, exp(mean of logs).
    pub fn geometric_mean(&self, n: u64) -> f64 {
        (self.log_sum(n) / self.k() as f64).exp()
    }

    /// Normalized von Mangoldt product: Π_h 1/a_h when every component is a
    /// prime power p^a, else 0. Equals 1 exactly when every component is
    /// prime; the component 1 has Λ(1) = 0, so n = 1 with offset 0 gives 0.
    pub fn mangoldt_weight(&self, n: u64) -> Result<f64> {
        self.check_range(n)?;
        Ok(self.mangoldt_weight_unchecked(n))
    }

    /// Range-unchecked λ for internal hot loops with pre-validated ranges.
    #[inline]
    pub(crate) fn mangoldt_weight_raw(&self, n: u64) -> f64 {
        self.mangoldt_weight_unchecked(n)
    }

    /// Range-unchecked signed Möbius product, same caveat.
    #[inline]
    pub(crate) fn mobius_weight_raw(&self, n: u64) -> i32 {
        self.mobius_weight_unchecked(n)
    }

    #[inline]
    fn mangoldt_weight_unchecked(&self, n: u64) -> f64 {
        let mut weight = 1.0;
        for &h in self.offsets.offsets() {
            match self.table.prime_power(n + h) {
                Some((_, a)) => weight *= 1.0 / a as f64,
                None => return 0.0,
            }
        }
        weight
    }

    /// Signed Möbius product (−1)^k μ(n) ⋯ μ(n+h_k).
    pub fn mobius_weight(&self, n: u64) -> Result<i32> {
        self.check_range(n)?;
        Ok(self.mobius_weight_unchecked(n))
    }

    fn mobius_weight_unchecked(&self, n: u64) -> i32 {
        let mut product = if self.k() % 2 == 0 { 1i32 } else { -1 };
        for &h in self.offsets.offsets() {
            let mu = self.table.mobius_unchecked(n + h);
            if mu == 0 {
                return 0;
            }
            product *= mu as i32;
        }
        product
    }

    /// 1 iff every component is a prime power (Λ ≠ 0 everywhere).
    pub fn prime_power_indicator(&self, n: u64) -> Result<u8> {
        self.check_range(n)?;
        let all = self
            .offsets
            .offsets()
            .iter()
            .all(|&h| self.table.prime_power(n + h).is_some());
        Ok(all as u8)
    }

    /// The weight λ(n) · log^k of the geometric mean. Defined for
    /// completeness; nothing downstream consumes it.
    pub fn mangoldt_weight_scaled(&self, n: u64) -> Result<f64> {
        let lambda = self.mangoldt_weight(n)?;
        let log_gm = self.log_sum(n) / self.k() as f64;
        Ok(lambda * log_gm.powi(self.k() as i32))
    }

    /// True when every p + h is prime.
    #[inline]
    fn all_components_prime(&self, p: u64) -> bool {
        self.offsets
            .offsets()
            .iter()
            .all(|&h| self.table.is_prime(p + h))
    }
}

fn check_s_gt_1(s: f64) -> Result<()> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain(format!(
            "s must be > 1 (got {s}); pass --force-s to explore the truncated sum anyway"
        )));
    }
    Ok(())
}

fn check_sum_range(ctx: &WeightContext, n_limit: u64) -> Result<()> {
    if n_limit == 0 {
        return Ok(());
    }
    let top = n_limit
        .checked_add(ctx.offsets.max_offset())
        .ok_or_else(|| Error::domain("N + max offset overflows"))?;
    if top > ctx.table.limit() {
        return Err(Error::Range {
            n: top,
            limit: ctx.table.limit(),
        });
    }
    Ok(())
}

/// Σ_{n ≤ N} λ(n)/n_gm^s — the m = 0 von Mangoldt form.
pub fn log_zeta_k(s: f64, n_limit: u64, ctx: &WeightContext) -> Result<SeriesSample> {
    check_s_gt_1(s)?;
    log_zeta_k_deriv_forced(0, s, n_limit, ctx)
}

/// Σ_{n ≤ N} λ(n) log^m(n_gm)/n_gm^s: the m-th |s-derivative| of the m = 0
/// sum. The alternating sign (−1)^m of the true derivative is left to
/// callers; the stored series is positive.
pub fn log_zeta_k_deriv(m: u32, s: f64, n_limit: u64, ctx: &WeightContext) -> Result<SeriesSample> {
    check_s_gt_1(s)?;
    log_zeta_k_deriv_forced(m, s, n_limit, ctx)
}

/// [`log_zeta_k_deriv`] without the s > 1 gate, for divergence probes at
/// s = 1 and forced exploration.
pub fn log_zeta_k_deriv_forced(
    m: u32,
    s: f64,
    n_limit: u64,
    ctx: &WeightContext,
) -> Result<SeriesSample> {
    check_sum_range(ctx, n_limit)?;
    let k = ctx.k() as f64;
    let (value, err_bound) = chunked_candidate_sum(n_limit, ctx, false, |c, n| {
        let lambda = c.mangoldt_weight_unchecked(n);
        if lambda == 0.0 {
            return 0.0;
        }
        let log_sum = c.log_sum(n);
        let log_gm = log_sum / k;
        lambda * log_gm.powi(m as i32) * (-(s * log_sum) / k).exp()
    });
    Ok(SeriesSample {
        s,
        n_limit,
        log_power: m,
        kind: SeriesKind::VonMangoldtForm,
        value,
        err_bound,
    })
}

/// Σ over base primes p ≤ N with every p + h prime of log^m(p_gm)/p_gm^s.
pub fn prime_form_sum(m: u32, s: f64, n_limit: u64, ctx: &WeightContext) -> Result<SeriesSample> {
    check_s_gt_1(s)?;
    prime_form_sum_forced(m, s, n_limit, ctx)
}

/// [`prime_form_sum`] without the s > 1 gate (the divergence sums live at
/// s = 1; every truncation is finite).
pub fn prime_form_sum_forced(
    m: u32,
    s: f64,
    n_limit: u64,
    ctx: &WeightContext,
) -> Result<SeriesSample> {
    check_sum_range(ctx, n_limit)?;
    let k = ctx.k() as f64;
    let (value, err_bound) = chunked_candidate_sum(n_limit, ctx, true, |c, p| {
        if !c.all_components_prime(p) {
            return 0.0;
        }
        let log_sum = c.log_sum(p);
        let log_gm = log_sum / k;
        log_gm.powi(m as i32) * (-(s * log_sum) / k).exp()
    });
    Ok(SeriesSample {
        s,
        n_limit,
        log_power: m,
        kind: SeriesKind::PrimeForm,
        value,
        err_bound,
    })
}

/// The prime-power remainder log ζ − log 𝗓: what the all-prime subsum misses.
/// Nonnegative; callers compare against ζ((k+1)/k).
pub fn remainder_s(s: f64, n_limit: u64, ctx: &WeightContext) -> Result<f64> {
    check_s_gt_1(s)?;
    let full = log_zeta_k_deriv_forced(0, s, n_limit, ctx)?;
    let prime_only = prime_form_sum_forced(0, s, n_limit, ctx)?;
    Ok(full.value - prime_only.value)
}

/// Dirichlet-series truncation cutoff for [`zeta_eval`].
const ZETA_EVAL_CUTOFF: u64 = 10_000_000;

/// Riemann zeta for real s > 1: direct summation to 10^7 with an
/// integral-plus-endpoint tail correction. Relative error well under 1e−8
/// for s ≥ 1.2.
pub fn zeta_eval(s: f64) -> Result<f64> {
    check_s_gt_1(s)?;
    let m = ZETA_EVAL_CUTOFF;
    let chunks = chunk_ranges(1, m - 1);
    let partials: Vec<KahanSum> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = KahanSum::new();
            for n in lo..=hi {
                acc.add((n as f64).powf(-s));
            }
            acc
        })
        .collect();
    let (head, _) = merge_partials(&partials);
    let mf = m as f64;
    // Σ_{n ≥ M} n^{-s} ≈ ∫_M^∞ x^{-s} dx + M^{-s}/2 + s·M^{-s-1}/12
    let tail = mf.powf(1.0 - s) / (s - 1.0) + mf.powf(-s) / 2.0 + s * mf.powf(-s - 1.0) / 12.0;
    Ok(head + tail)
}

/// Ascending prime powers (primes merged with higher powers) in [lo, hi].
fn prime_powers_in(table: &SieveTable, lo: u64, hi: u64) -> Vec<u64> {
    let mut primes = table.primes_up_to(hi).skip_while(|&p| p < lo).peekable();
    let mut highers = table
        .higher_prime_powers()
        .map(|(n, _, _)| n)
        .skip_while(|&n| n < lo)
        .take_while(|&n| n <= hi)
        .peekable();
    let mut out = Vec::new();
    loop {
        match (primes.peek(), highers.peek()) {
            (Some(&p), Some(&q)) => {
                if p < q {
                    out.push(p);
                    primes.next();
                } else {
                    out.push(q);
                    highers.next();
                }
            }
            (Some(_), None) => {
                out.extend(primes);
                break;
            }
            (None, Some(_)) => {
                out.extend(highers);
                break;
            }
            (None, None) => break,
        }
    }
    out
}

/// Chunked, deterministic sum of `term` over candidate first components in
/// `1..=n_limit`: primes when `primes_only`, otherwise all prime powers.
fn chunked_candidate_sum<F>(
    n_limit: u64,
    ctx: &WeightContext,
    primes_only: bool,
    term: F,
) -> (f64, f64)
where
    F: Fn(&WeightContext, u64) -> f64 + Sync,
{
    if n_limit == 0 {
        return (0.0, 0.0);
    }
    let chunks = chunk_ranges(1, n_limit);
    let partials: Vec<KahanSum> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = KahanSum::new();
            if primes_only {
                for p in ctx.table.primes_up_to(hi).skip_while(|&p| p < lo) {
                    let t = term(ctx, p);
                    if t != 0.0 {
                        acc.add(t);
                    }
                }
            } else {
                for n in prime_powers_in(ctx.table, lo, hi) {
                    let t = term(ctx, n);
                    if t != 0.0 {
                        acc.add(t);
                    }
                }
            }
            acc
        })
        .collect();
    merge_partials(&partials)
}
