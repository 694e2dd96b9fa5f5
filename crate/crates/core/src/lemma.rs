//! Finite-truncation audits of the shift-lattice inequalities between
//! weighted prime-pair sums with gaps 2i and (2i)^l, the gcd-preservation
//! claim behind them, and the equivalence-class ratio probe.
//!
//! The audited quantity for a gap g is
//!
//!   Σ_n μ₍g₎(n) λ₍g₎(n) · log(n(n+g)) / (n(n+g))^{s/2},
//!
//! whose summands localize onto prime pairs (the weight is 1 when n and
//! n + g are both prime, 0 otherwise), so all summands are nonnegative.
//! Each check records lhs, rhs, the truncated remainder window, and the
//! signed margin; a negative margin is reported, never suppressed.

use serde::Serialize;

use crate::admissible::OffsetTuple;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::series::{log_zeta_k_deriv, WeightContext};
use crate::sieve::SieveTable;

/// Parameters a lemma check ran with.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LemmaParams {
    pub small_gap: u64,
    pub large_gap: u64,
    pub l: u32,
    pub s: f64,
    pub n_limit: u64,
}

/// LHS/RHS/remainder/margin record for one finite-N inequality check.
///
/// `holds` ⇔ `margin ≥ −tol` with `tol = 1e−9 · max(|lhs|, |rhs|)`;
/// `margin = lhs − rhs + remainder`.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lhs: f64,
    pub rhs: f64,
    pub remainder: f64,
    pub margin: f64,
    pub tol: f64,
    pub holds: bool,
    /// Inclusive n-range the remainder was summed over; empty when lo > hi.
    pub window: (u64, u64),
    pub params: LemmaParams,
}

impl LemmaReport {
    fn from_parts(lhs: f64, rhs: f64, remainder: f64, window: (u64, u64), params: LemmaParams) -> Self {
        let margin = lhs - rhs + remainder;
        let tol = 1e-9 * lhs.abs().max(rhs.abs());
        LemmaReport {
            lhs,
            rhs,
            remainder,
            margin,
            tol,
            holds: margin >= -tol,
            window,
            params,
        }
    }

    pub fn csv_header() -> &'static str {
        "small_gap,large_gap,l,s,N,lhs,rhs,remainder,margin,holds"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.11e},{:.11e},{:.11e},{:.11e},{}",
            self.params.small_gap,
            self.params.large_gap,
            self.params.l,
            self.params.s,
            self.params.n_limit,
            self.lhs,
            self.rhs,
            self.remainder,
            self.margin,
            self.holds
        )
    }
}

/// Coprimality bookkeeping for the shift map between two gap rays.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RayCheck {
    pub pairs_checked: u64,
    pub violations: u64,
    pub first_violation: Option<u64>,
}

fn check_even_gap(g: u64) -> Result<()> {
    if g < 2 || g % 2 != 0 {
        return Err(Error::domain(format!("gap must be even and ≥ 2, got {g}")));
    }
    Ok(())
}

fn gap_power(base: u64, l: u32) -> Result<u64> {
    let mut m: u64 = 1;
    for _ in 0..l {
        m = m
            .checked_mul(base)
            .ok_or_else(|| Error::domain(format!("{base}^{l} overflows u64")))?;
    }
    Ok(m)
}

/// Σ over `lo..=hi` of μλ-weighted pair terms for the given gap. Empty when
/// lo > hi. Single compensated pass, ascending.
fn weighted_pair_sum(gap: u64, lo: u64, hi: u64, s: f64, table: &SieveTable) -> Result<f64> {
    if lo > hi {
        return Ok(0.0);
    }
    let pair = OffsetTuple::pair(gap)?;
    let ctx = WeightContext::new(&pair, table);
    if hi.checked_add(gap).map_or(true, |top| top > table.limit()) {
        return Err(Error::Range {
            n: hi.saturating_add(gap),
            limit: table.limit(),
        });
    }
    let mut acc = KahanSum::new();
    for n in lo..=hi {
        let lambda = ctx.mangoldt_weight_raw(n);
        if lambda == 0.0 {
            continue;
        }
        let weight = ctx.mobius_weight_raw(n) as f64 * lambda;
        if weight == 0.0 {
            continue;
        }
        let log_sum = (n as f64).ln() + ((n + gap) as f64).ln();
        acc.add(weight * log_sum * (-(s * log_sum) / 2.0).exp());
    }
    Ok(acc.value())
}

/// Compare the gap-2i sum over `1..=N` against the gap-(2i)^l sum truncated
/// at N − (2j − 2i), plus the trailing remainder window ending at N.
pub fn lemma2_check(
    two_i: u64,
    l: u32,
    s: f64,
    n_limit: u64,
    table: &SieveTable,
) -> Result<LemmaReport> {
    check_even_gap(two_i)?;
    if l == 0 {
        return Err(Error::domain("power l must be ≥ 1"));
    }
    if !(s > 1.0) {
        return Err(Error::domain(format!("s must be > 1, got {s}")));
    }
    let two_j = gap_power(two_i, l)?;
    let shift = two_j - two_i;
    if n_limit <= 1 + shift {
        return Err(Error::domain(format!(
            "N must exceed 1 + (2j − 2i) = {}, got {n_limit}",
            1 + shift
        )));
    }
    let lhs = weighted_pair_sum(two_i, 1, n_limit, s, table)?;
    let rhs = weighted_pair_sum(two_j, 1, n_limit - shift, s, table)?;
    let window = (n_limit + 1 - shift, n_limit);
    let remainder = weighted_pair_sum(two_j, window.0, window.1, s, table)?;
    Ok(LemmaReport::from_parts(
        lhs,
        rhs,
        remainder,
        window,
        LemmaParams {
            small_gap: two_i,
            large_gap: two_j,
            l,
            s,
            n_limit,
        },
    ))
}

/// Mirror check: the gap-(2j)^l sum over `1..=N` against the gap-2j sum
/// over `1..=N` minus the head window `1..=(2m − 2j)`.
pub fn lemma3_check(
    two_j: u64,
    l: u32,
    s: f64,
    n_limit: u64,
    table: &SieveTable,
) -> Result<LemmaReport> {
    check_even_gap(two_j)?;
    if l == 0 {
        return Err(Error::domain("power l must be ≥ 1"));
    }
    if !(s > 1.0) {
        return Err(Error::domain(format!("s must be > 1, got {s}")));
    }
    if n_limit == 0 {
        return Err(Error::domain("N must be ≥ 1"));
    }
    let two_m = gap_power(two_j, l)?;
    let lhs = weighted_pair_sum(two_m, 1, n_limit, s, table)?;
    let rhs = weighted_pair_sum(two_j, 1, n_limit, s, table)?;
    let window = (1, two_m - two_j); // empty when l = 1
    let remainder = weighted_pair_sum(two_j, window.0, window.1, s, table)?;
    Ok(LemmaReport::from_parts(
        lhs,
        rhs,
        remainder,
        window,
        LemmaParams {
            small_gap: two_j,
            large_gap: two_m,
            l,
            s,
            n_limit,
        },
    ))
}

/// Whether `large` is an exact integer power of `base`.
pub fn is_power_of(base: u64, large: u64) -> bool {
    if base < 2 {
        return base == large;
    }
    let mut m = base;
    loop {
        if m == large {
            return true;
        }
        if m > large {
            return false;
        }
        match m.checked_mul(base) {
            Some(next) => m = next,
            None => return false,
        }
    }
}

/// Audit the shift map n ↦ n + 2i − 2j between coprime pairs: count n ≤ N
/// with gcd(n, n+2i) = 1 whose image fails gcd(n′, n′+2j) = 1.
///
/// When 2j is a power of 2i both gaps share the same prime support, so a
/// violation is impossible; the non-power case (behind `force`) is where
/// the map genuinely breaks.
pub fn gcd_shift_audit(two_i: u64, two_j: u64, n_limit: u64, force: bool) -> Result<RayCheck> {
    check_even_gap(two_i)?;
    check_even_gap(two_j)?;
    if two_j < two_i {
        return Err(Error::domain(format!(
            "need 2j ≥ 2i, got 2i = {two_i}, 2j = {two_j}"
        )));
    }
    if !force && !is_power_of(two_i, two_j) {
        return Err(Error::domain(format!(
            "{two_j} is not a power of {two_i}; pass --force to audit a non-power pair"
        )));
    }
    let shift = two_j - two_i;
    let mut pairs_checked = 0u64;
    let mut violations = 0u64;
    let mut first_violation = None;
    for n in (1 + shift)..=n_limit {
        if gcd(n, n + two_i) != 1 {
            continue;
        }
        pairs_checked += 1;
        let image = n - shift;
        if gcd(image, image + two_j) != 1 {
            violations += 1;
            if first_violation.is_none() {
                first_violation = Some(n);
            }
        }
    }
    Ok(RayCheck {
        pairs_checked,
        violations,
        first_violation,
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Ratio of the m = 1 von Mangoldt-form sums for gaps 2i and (2i)^l at each
/// s. The asymptotic-equivalence constants are unknown, so ratios are
/// reported raw.
pub fn corollary_equivalence_probe(
    two_i: u64,
    l: u32,
    s_grid: &[f64],
    n_limit: u64,
    table: &SieveTable,
) -> Result<Vec<(f64, f64)>> {
    check_even_gap(two_i)?;
    if l == 0 {
        return Err(Error::domain("power l must be ≥ 1"));
    }
    let two_j = gap_power(two_i, l)?;
    let small = OffsetTuple::pair(two_i)?;
    let large = OffsetTuple::pair(two_j)?;
    let ctx_small = WeightContext::new(&small, table);
    let ctx_large = WeightContext::new(&large, table);
    let mut out = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let num = log_zeta_k_deriv(1, s, n_limit, &ctx_small)?.value;
        let den = log_zeta_k_deriv(1, s, n_limit, &ctx_large)?.value;
        if den == 0.0 {
            return Err(Error::domain(format!(
                "gap-{two_j} series is identically zero at s = {s}, N = {n_limit}"
            )));
        }
        out.push((s, num / den));
    }
    Ok(out)
}
