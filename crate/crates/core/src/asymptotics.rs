//! Large-`N` behaviour: the gamma function, the limit constant
//! `e^(c-1) / Gamma(2-c)`, threshold bounds and convergence diagnostics.

use num_traits::{Float, FloatConst};
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::{compute_threshold, record_survival_product, solve_values, GameConfig};
use crate::error::{Result, SecretaryError};

/// Relative tolerance declared on the last sample of a convergence report.
///
/// Empirical: the observed error of `N^c * pi_N` decays roughly like `1/N`,
/// so 5% is loose for any `N` beyond a few hundred. No rate is proven.
pub const SCALED_VALUE_TOLERANCE: f64 = 0.05;

/// Tolerance on `|n*_N / N - 1/e|` used at `N = 10^6`. Empirical as well.
pub const THRESHOLD_RATIO_TOLERANCE: f64 = 1e-3;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lit<T: Float>(x: f64) -> T {
    T::from(x).expect("literal representable")
}

fn lanczos<T: Float + FloatConst>(x: T) -> T {
    // Gamma(x) for x >= 1/2
    let x = x - T::one();
    let mut acc = lit::<T>(LANCZOS_COEFFS[0]);
    for (i, &coef) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + lit::<T>(coef) / (x + lit(i as f64));
    }
    let t = x + lit(LANCZOS_G + 0.5);
    (T::PI() + T::PI()).sqrt() * t.powf(x + lit(0.5)) * (-t).exp() * acc
}

/// Gamma function on `(0, 3]`.
///
/// Lanczos approximation (`g = 7`, nine terms) with the reflection formula
/// below 1/2. Relative error stays below `1e-14` in `f64` on this range.
pub fn gamma<T: Float + FloatConst>(x: T) -> Result<T> {
    let upper = lit::<T>(3.0);
    if !(x > T::zero() && x <= upper) {
        return Err(SecretaryError::GammaDomain(x.to_f64().unwrap_or(f64::NAN)));
    }
    if x < lit(0.5) {
        let pi = T::PI();
        Ok(pi / ((pi * x).sin() * lanczos(T::one() - x)))
    } else {
        Ok(lanczos(x))
    }
}

fn check_cost(cost: f64) -> Result<()> {
    if (0.0..1.0).contains(&cost) {
        Ok(())
    } else {
        Err(SecretaryError::CostOutOfRange(cost))
    }
}

/// `e^(c-1) / Gamma(2-c)`, the limit of `N^c * pi_N` and of
/// `N^(c-1) * E[tau_N]`.
pub fn limit_constant(cost: f64) -> Result<f64> {
    check_cost(cost)?;
    Ok((cost - 1.0).exp() / gamma(2.0 - cost)?)
}

/// `(N/e, (N-1)/e + 2)`; the threshold `n*_N` lies in this closed interval.
pub fn threshold_bounds(n_applicants: usize) -> Result<(f64, f64)> {
    if n_applicants < 2 {
        return Err(SecretaryError::TooFewApplicants(n_applicants));
    }
    let n = n_applicants as f64;
    let inv_e = (-1.0f64).exp();
    Ok((n * inv_e, (n - 1.0) * inv_e + 2.0))
}

/// `n^c * S_n(c)`, which tends to `1/Gamma(1-c)`.
pub fn gauss_product_check(cost: f64, n: usize) -> f64 {
    (n as f64).powf(cost) * record_survival_product(n, &cost)
}

/// `sum_{n=n*}^{N} 1/(n-1)`. Needs `n* >= 2`, which holds for `N >= 3`.
pub fn threshold_tail_sum(n_applicants: usize) -> Result<f64> {
    let threshold = compute_threshold(n_applicants)?;
    if threshold < 2 {
        return Err(SecretaryError::TooFewApplicants(n_applicants));
    }
    Ok((threshold..=n_applicants)
        .rev()
        .map(|n| 1.0 / (n - 1) as f64)
        .sum())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledSample {
    pub n: usize,
    pub success_probability: f64,
    /// `N^c * pi_N`.
    pub scaled_value: f64,
    /// `(scaled_value - limit) / limit`.
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdSample {
    pub n: usize,
    pub n_star: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
}

impl ThresholdSample {
    pub fn within_bounds(&self) -> bool {
        let t = self.n_star as f64;
        self.lower_bound <= t && t <= self.upper_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub cost: f64,
    pub limit_constant: f64,
    pub tolerance: f64,
    pub samples: Vec<ScaledSample>,
    pub threshold_samples: Vec<ThresholdSample>,
    /// Least-squares slope of `ln pi_N` on `ln N`, when there are two or
    /// more distinct sizes.
    pub loglog_slope: Option<f64>,
    pub note: &'static str,
}

impl AsymptoticReport {
    pub fn bounds_hold(&self) -> bool {
        self.threshold_samples.iter().all(ThresholdSample::within_bounds)
    }

    pub fn final_deviation(&self) -> Option<f64> {
        self.samples.last().map(|s| s.relative_deviation.abs())
    }

    /// Whether the last sample is within the declared tolerance.
    pub fn converged(&self) -> bool {
        self.final_deviation().is_some_and(|d| d < self.tolerance)
    }

    pub fn satisfies_invariants(&self) -> bool {
        self.bounds_hold() && self.converged()
    }
}

/// Solves every `N` in `n_list` and records `N^c * pi_N` next to the
/// limit constant, plus the threshold against its bounds.
///
/// Sizes are solved in parallel; output order follows `n_list`.
pub fn convergence_report(cost: f64, n_list: &[usize]) -> Result<AsymptoticReport> {
    let limit = limit_constant(cost)?;
    let rows = n_list
        .par_iter()
        .map(|&n| {
            let config = GameConfig::new(n, cost)?;
            let tables = solve_values(&config);
            let (lower_bound, upper_bound) = threshold_bounds(n)?;
            let pi = tables.success_probability;
            let scaled = (n as f64).powf(cost) * pi;
            Ok((
                ScaledSample {
                    n,
                    success_probability: pi,
                    scaled_value: scaled,
                    relative_deviation: (scaled - limit) / limit,
                },
                ThresholdSample {
                    n,
                    n_star: compute_threshold(n)?,
                    lower_bound,
                    upper_bound,
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (samples, threshold_samples): (Vec<_>, Vec<_>) = rows.into_iter().unzip();

    let mut distinct: Vec<(f64, f64)> = samples
        .iter()
        .map(|s| (s.n as f64, s.success_probability))
        .collect();
    distinct.sort_by(|a, b| a.0.total_cmp(&b.0));
    distinct.dedup_by(|a, b| a.0 == b.0);
    let slope = (distinct.len() >= 2).then(|| loglog_slope(&distinct));

    Ok(AsymptoticReport {
        cost,
        limit_constant: limit,
        tolerance: SCALED_VALUE_TOLERANCE,
        samples,
        threshold_samples,
        loglog_slope: slope,
        note: "tolerances are empirical acceptance thresholds; no convergence rate is proven",
    })
}
