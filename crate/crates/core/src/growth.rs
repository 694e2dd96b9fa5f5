//! Empirical divergence studies: the single-prime reciprocal baseline, the
//! prime-pair and k-tuple divergence sums at s = 1, the prime-form /
//! von-Mangoldt-form ratio probe, and ordinary least-squares fits of partial
//! sums against a·log log N + b.

use serde::Serialize;

use crate::admissible::{check_admissible, class_root, enumerate_tuples, OffsetTuple};
use crate::error::{Error, Result};
use crate::series::{log_zeta_k_deriv, prime_form_sum, prime_form_sum_forced, WeightContext};
use crate::sieve::SieveTable;

/// One grid point of the reciprocal-prime baseline.
///
/// `delta = sum_recip_primes − log log ψ(N)`: the end-point constant the
/// divergence argument leaves behind, measured rather than assumed.
/// `loglog_psi` is NaN when ψ(N) ≤ 1 (only at N = 2).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MertensProbe {
    pub n_limit: u64,
    pub sum_recip_primes: f64,
    pub loglog_psi: f64,
    pub delta: f64,
}

/// Ordinary least-squares fit of partial sums against a·log log N + b.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// Set when the samples have no variance (constant partial sums), in
    /// which case r2 is 1 by convention and the fit says nothing.
    pub degenerate: bool,
    pub samples: Vec<(u64, f64)>,
}

impl GrowthFit {
    /// Fit residuals y − (a·log log N + b), in sample order.
    pub fn residuals(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|&(n, y)| y - (self.slope * loglog(n) + self.intercept))
            .collect()
    }
}

/// One point of the prime-form / derivative-form ratio probe.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioPoint {
    pub s: f64,
    pub prime_form: f64,
    pub derivative_form: f64,
    pub ratio: f64,
}

/// Ratio probe output; `admissible` is false when the caller probed an
/// inadmissible tuple (computed anyway, flagged).
#[derive(Debug, Clone, Serialize)]
pub struct RatioProbe {
    pub admissible: bool,
    pub points: Vec<RatioPoint>,
}

/// Prime-double statistics embedded in a k-tuple: one record per offset
/// pair, every full tuple counting toward each of its pairs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairDoubleCount {
    pub low: u64,
    pub high: u64,
    pub gap: u64,
    /// Smallest even root of the gap; the gap is class_base^power.
    pub class_base: u64,
    pub power: u32,
    pub count: u64,
}

fn loglog(n: u64) -> f64 {
    (n as f64).ln().ln()
}

fn check_grid_ascending(grid: &[u64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain("grid must be non-empty"));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::domain(format!(
                "grid must be strictly ascending, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    Ok(())
}

/// Reciprocal-prime partial sums against log log ψ(N) at each grid point.
/// Grid values must be ascending and ≥ 2.
pub fn euler_baseline(n_grid: &[u64], table: &SieveTable) -> Result<Vec<MertensProbe>> {
    check_grid_ascending(n_grid)?;
    if n_grid[0] < 2 {
        return Err(Error::domain("grid points must be ≥ 2"));
    }
    let singleton = OffsetTuple::singleton();
    let ctx = WeightContext::new(&singleton, table);
    let mut out = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let sum_recip = prime_form_sum_forced(0, 1.0, n, &ctx)?.value;
        let psi = table.chebyshev_psi(n)?;
        let loglog_psi = if psi > 1.0 { psi.ln().ln() } else { f64::NAN };
        out.push(MertensProbe {
            n_limit: n,
            sum_recip_primes: sum_recip,
            loglog_psi,
            delta: sum_recip - loglog_psi,
        });
    }
    Ok(out)
}

/// Partial sums of the prime-form divergence series at s = 1 over the grid,
/// with a log log fit. This is the one place s = 1 is legal by contract.
pub fn tuple_divergence_probe(
    h: &OffsetTuple,
    m: u32,
    n_grid: &[u64],
    table: &SieveTable,
) -> Result<GrowthFit> {
    check_grid_ascending(n_grid)?;
    if n_grid.len() < 3 {
        return Err(Error::domain(format!(
            "divergence fit needs at least 3 grid points, got {}",
            n_grid.len()
        )));
    }
    if n_grid[0] < 2 {
        return Err(Error::domain("grid points must be ≥ 2"));
    }
    let ctx = WeightContext::new(h, table);
    let mut samples = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        let value = prime_form_sum_forced(m, 1.0, n, &ctx)?.value;
        samples.push((n, value));
    }
    Ok(fit_loglog(samples))
}

/// Least squares of (log log N, y) pairs.
fn fit_loglog(samples: Vec<(u64, f64)>) -> GrowthFit {
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|&(x, _)| loglog(x)).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, y)| y).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = y_mean - slope * x_mean;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let degenerate = ss_tot <= f64::EPSILON * y_mean.abs().max(1.0);
    let r2 = if degenerate {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    GrowthFit {
        slope,
        intercept,
        r2,
        degenerate,
        samples,
    }
}

/// m = 1 von-Mangoldt-form values for H = {0, 2j} over an s grid; the
/// observable for the divergence claim is monotone growth as s ↓ 1.
pub fn proposition_probe(
    two_j: u64,
    s_grid: &[f64],
    n_limit: u64,
    table: &SieveTable,
) -> Result<Vec<(f64, f64)>> {
    let pair = OffsetTuple::pair(two_j)?;
    let ctx = WeightContext::new(&pair, table);
    let mut out = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        out.push((s, log_zeta_k_deriv(1, s, n_limit, &ctx)?.value));
    }
    Ok(out)
}

/// Ratio of the prime-form sum to the von-Mangoldt-form sum at log power
/// k − 1, per s. The prime form is a term-by-term subsum, so ratios sit in
/// (0, 1] and climb toward 1 as s ↓ 1.
pub fn theorem_ratio_probe(
    h: &OffsetTuple,
    s_grid: &[f64],
    n_limit: u64,
    table: &SieveTable,
) -> Result<RatioProbe> {
    let admissible = check_admissible(h).admissible;
    let m = h.k() as u32 - 1;
    let ctx = WeightContext::new(h, table);
    let mut points = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let pf = prime_form_sum(m, s, n_limit, &ctx)?.value;
        let dv = log_zeta_k_deriv(m, s, n_limit, &ctx)?.value;
        if dv == 0.0 {
            return Err(Error::domain(format!(
                "zero denominator: the von Mangoldt form vanishes at s = {s}, N = {n_limit}"
            )));
        }
        points.push(RatioPoint {
            s,
            prime_form: pf,
            derivative_form: dv,
            ratio: pf / dv,
        });
    }
    Ok(RatioProbe { admissible, points })
}

/// Embedded prime-double statistics: for each offset pair of H, the count
/// of full k-tuples with base prime ≤ limit, annotated with the pair gap's
/// even class root.
pub fn twin_corollary_probe(
    h: &OffsetTuple,
    limit: u64,
    table: &SieveTable,
) -> Result<Vec<PairDoubleCount>> {
    let count = enumerate_tuples(h, limit, table)?.len() as u64;
    let mut out = Vec::new();
    for (low, high) in h.pairs() {
        let gap = high - low;
        let base = class_root(gap)?;
        let mut power = 1u32;
        let mut acc = base;
        while acc < gap {
            acc *= base;
            power += 1;
        }
        out.push(PairDoubleCount {
            low,
            high,
            gap,
            class_base: base,
            power,
            count,
        });
    }
    Ok(out)
}

/// Longest run of same-sign values (zeros break runs); 0 for empty input.
pub fn max_sign_run(values: &[f64]) -> usize {
    let mut best = 0usize;
    let mut run = 0usize;
    let mut last_sign = 0i8;
    for &v in values {
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 && sign == last_sign {
            run += 1;
        } else if sign != 0 {
            run = 1;
        } else {
            run = 0;
        }
        last_sign = sign;
        best = best.max(run);
    }
    best
}
