//! ε-sweeps of half-eigenvalues against their homogenized limits.
//!
//! For every `(k, t, sign)` the experiment solves `λ_{k,t,ε}^±` on the
//! rescaled weights, compares with the constant-weight limit built from the
//! weight means, fits a log-log rate and computes the empirical constant
//! `C_emp = max err / (ε (k/ℓ)³ γ(t))`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, positive, Result};
use crate::shooting::Sign;
use crate::spectrum::{limit_half_eigenvalue, solve_half_eigenvalue, HalfEigenvalue};
use crate::weights::{scale, PiecewiseConstantWeight, WeightBounds};
use crate::Error;

/// `t` outside `[T_MIN, T_MAX]` is rejected.
pub const T_MIN: f64 = 1e-4;
pub const T_MAX: f64 = 1e4;

/// Rows with error below `NOISE_FACTOR · tol · λ_0` are left out of fits.
pub const NOISE_FACTOR: f64 = 10.0;

/// `γ(t) = max(t^{-3/2}, t^{1/2})`.
pub fn gamma(t: f64) -> Result<f64> {
    positive("t", t)?;
    Ok(t.powf(-1.5).max(t.sqrt()))
}

/// Default `ε = ℓ/j` for `j ∈ {4, 8, …, 256}`.
pub fn default_epsilons(ell: f64) -> Vec<f64> {
    [4u32, 8, 16, 32, 64, 128, 256].iter().map(|&j| ell / j as f64).collect()
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub m: PiecewiseConstantWeight,
    pub n: PiecewiseConstantWeight,
    pub ell: f64,
    pub k_list: Vec<usize>,
    pub t_list: Vec<f64>,
    pub signs: Vec<Sign>,
    pub epsilons: Vec<f64>,
    pub tol: f64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        positive("ell", self.ell)?;
        positive("tol", self.tol)?;
        if self.k_list.is_empty() || self.k_list.contains(&0) {
            return Err(invalid("k_list", "must be non-empty with every k ≥ 1"));
        }
        if self.t_list.is_empty() {
            return Err(invalid("t_list", "must not be empty"));
        }
        for &t in &self.t_list {
            if !(T_MIN..=T_MAX).contains(&t) {
                return Err(invalid("t_list", format!("t = {t} outside [{T_MIN}, {T_MAX}]")));
            }
        }
        if self.signs.is_empty() {
            return Err(invalid("signs", "must not be empty"));
        }
        if self.epsilons.is_empty() {
            return Err(invalid("epsilon_list", "must not be empty"));
        }
        for &e in &self.epsilons {
            positive("epsilon_list", e)?;
        }
        Ok(())
    }

    pub fn bounds(&self) -> WeightBounds {
        WeightBounds::enclosing(&self.m, &self.n)
    }

    /// `(k, t, sign)` keys in output order: k, then t, then sign.
    pub fn series_keys(&self) -> Vec<SeriesKey> {
        let mut keys = Vec::new();
        for &k in &self.k_list {
            for &t in &self.t_list {
                for &sign in &self.signs {
                    keys.push(SeriesKey { k, t, sign });
                }
            }
        }
        keys
    }

    /// ε values sorted by decreasing size.
    fn sorted_epsilons(&self) -> Vec<f64> {
        let mut e = self.epsilons.clone();
        e.sort_by(|a, b| b.total_cmp(a));
        e.dedup();
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesKey {
    pub k: usize,
    pub t: f64,
    pub sign: Sign,
}

/// One solved grid point of an experiment.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub key: SeriesKey,
    pub epsilon: f64,
    pub lambda_0: f64,
    pub solution: Result<HalfEigenvalue>,
}

/// Solves every `(k, t, sign, ε)` point; output order is independent of
/// scheduling.
pub fn solve_grid(cfg: &ExperimentConfig) -> Result<Vec<GridPoint>> {
    cfg.validate()?;
    let bounds = cfg.bounds();
    let (m_bar, n_bar) = (cfg.m.average(), cfg.n.average());
    let epsilons = cfg.sorted_epsilons();
    let scaled: Vec<_> = epsilons
        .iter()
        .map(|&e| Ok((e, scale(&cfg.m, e, cfg.ell)?, scale(&cfg.n, e, cfg.ell)?)))
        .collect::<Result<_>>()?;
    let mut work = Vec::new();
    for key in cfg.series_keys() {
        let lambda_0 = limit_half_eigenvalue(key.k, key.t, key.sign, m_bar, n_bar, cfg.ell)?.lambda;
        for s in &scaled {
            work.push((key, lambda_0, s));
        }
    }
    Ok(work
        .into_par_iter()
        .map(|(key, lambda_0, (epsilon, m, n))| GridPoint {
            key,
            epsilon: *epsilon,
            lambda_0,
            solution: solve_half_eigenvalue(key.k, key.t, key.sign, m, n, cfg.ell, bounds, cfg.tol),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateRow {
    pub epsilon: f64,
    pub lambda_eps: f64,
    pub lambda_0: f64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub used_rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RateSeries {
    pub key: SeriesKey,
    /// Sorted by decreasing ε.
    pub rows: Vec<RateRow>,
    /// `None` when fewer than three rows clear the noise floor.
    pub fit: Option<RateFit>,
    pub c_emp: f64,
    pub failures: Vec<(f64, String)>,
}

impl RateSeries {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RateReport {
    pub ell: f64,
    pub tol: f64,
    pub series: Vec<RateSeries>,
}

impl RateReport {
    pub fn is_complete(&self) -> bool {
        self.series.iter().all(RateSeries::is_complete)
    }

    pub fn get(&self, k: usize, t: f64, sign: Sign) -> Option<&RateSeries> {
        self.series
            .iter()
            .find(|s| s.key.k == k && s.key.t == t && s.key.sign == sign)
    }
}

/// Normalization `(k/ℓ)³ γ(t) ε` of the error bound.
pub fn bound_scale(k: usize, t: f64, ell: f64, epsilon: f64) -> f64 {
    (k as f64 / ell).powi(3) * gamma(t).unwrap_or(f64::NAN) * epsilon
}

/// Least squares line through `(log ε, log err)` over rows with `err ≥ floor`.
pub fn fit_rate(rows: &[(f64, f64)], floor: f64) -> Result<RateFit> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|(e, err)| *e > 0.0 && *err > 0.0 && *err >= floor)
        .map(|(e, err)| (e.ln(), err.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::TooFewRows(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(invalid("rows", "all epsilon values coincide"));
    }
    let slope = sxy / sxx;
    Ok(RateFit {
        slope,
        intercept: my - slope * mx,
        used_rows: pts.len(),
    })
}

/// Groups solved grid points into per-series rows, fits and constants.
pub fn build_report(cfg: &ExperimentConfig, grid: &[GridPoint]) -> RateReport {
    let series = cfg
        .series_keys()
        .into_iter()
        .map(|key| {
            let mut rows = Vec::new();
            let mut failures = Vec::new();
            let mut lambda_0 = f64::NAN;
            for p in grid.iter().filter(|p| p.key == key) {
                lambda_0 = p.lambda_0;
                match &p.solution {
                    Ok(e) => rows.push(RateRow {
                        epsilon: p.epsilon,
                        lambda_eps: e.lambda,
                        lambda_0: p.lambda_0,
                        abs_err: (e.lambda - p.lambda_0).abs(),
                    }),
                    Err(err) => failures.push((p.epsilon, err.to_string())),
                }
            }
            rows.sort_by(|a, b| b.epsilon.total_cmp(&a.epsilon));
            let floor = NOISE_FACTOR * cfg.tol * lambda_0;
            let pairs: Vec<(f64, f64)> = rows.iter().map(|r| (r.epsilon, r.abs_err)).collect();
            let fit = fit_rate(&pairs, floor).ok();
            let c_emp = rows
                .iter()
                .map(|r| r.abs_err / bound_scale(key.k, key.t, cfg.ell, r.epsilon))
                .fold(0.0, f64::max);
            RateSeries {
                key,
                rows,
                fit,
                c_emp,
                failures,
            }
        })
        .collect();
    RateReport {
        ell: cfg.ell,
        tol: cfg.tol,
        series,
    }
}

pub fn run_rate_experiment(cfg: &ExperimentConfig) -> Result<RateReport> {
    let grid = solve_grid(cfg)?;
    Ok(build_report(cfg, &grid))
}

/// Every row satisfies `err ≤ C_budget (k/ℓ)³ γ(t) ε`.
pub fn check_rate_bound(report: &RateReport, c_budget: f64) -> bool {
    report.series.iter().all(|s| {
        s.rows
            .iter()
            .all(|r| r.abs_err <= c_budget * bound_scale(s.key.k, s.key.t, report.ell, r.epsilon))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct K2RateCheck {
    /// `(t, max err / (ε t^{-3/2}))` over both signs, for each `t ≤ 1` with `k = 2` rows.
    pub constants: Vec<(f64, f64)>,
    pub spread: f64,
    pub ok: bool,
}

/// `|λ_{2,t,ε} - λ_{2,t,0}| ≤ C ε t^{-3/2}` with per-`t` constants within a
/// factor 10 of each other.
pub fn check_k2_rate(report: &RateReport) -> K2RateCheck {
    let k2: Vec<&RateSeries> = report.series.iter().filter(|s| s.key.k == 2 && s.key.t <= 1.0).collect();
    let mut ts: Vec<f64> = k2.iter().map(|s| s.key.t).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let constants: Vec<(f64, f64)> = ts
        .into_iter()
        .map(|t| {
            let c = k2
                .iter()
                .filter(|s| s.key.t == t)
                .flat_map(|s| s.rows.iter())
                .map(|r| r.abs_err / (r.epsilon * t.powf(-1.5)))
                .fold(0.0, f64::max);
            (t, c)
        })
        .collect();
    let values: Vec<f64> = constants.iter().map(|c| c.1).collect();
    let spread = spread(&values);
    K2RateCheck {
        ok: values.iter().all(|c| c.is_finite()) && spread <= 10.0,
        constants,
        spread,
    }
}

/// `max / min` over the positive entries; 1 when there are none.
pub fn spread(values: &[f64]) -> f64 {
    let pos: Vec<f64> = values.iter().copied().filter(|v| *v > 0.0).collect();
    if pos.is_empty() {
        return 1.0;
    }
    let max = pos.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = pos.iter().copied().fold(f64::INFINITY, f64::min);
    max / min
}

/// Per-`k` empirical constant: the largest `C_emp` over all series with that `k`.
pub fn c_emp_by_k(report: &RateReport) -> Vec<(usize, f64)> {
    let mut ks: Vec<usize> = report.series.iter().map(|s| s.key.k).collect();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .map(|k| {
            let c = report.series.iter().filter(|s| s.key.k == k).map(|s| s.c_emp).fold(0.0, f64::max);
            (k, c)
        })
        .collect()
}

/// Per-`t` empirical constant: the largest `C_emp` over all series with that `t`.
pub fn c_emp_by_t(report: &RateReport) -> Vec<(f64, f64)> {
    let mut ts: Vec<f64> = report.series.iter().map(|s| s.key.t).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts.into_iter()
        .map(|t| {
            let c = report.series.iter().filter(|s| s.key.t == t).map(|s| s.c_emp).fold(0.0, f64::max);
            (t, c)
        })
        .collect()
}

/// Tail convergence: once `ε ≤ ℓ/32` every error stays at or below the
/// error at the largest ε, allowing one exception.
pub fn check_tail_convergence(series: &RateSeries, ell: f64) -> bool {
    let Some(first) = series.rows.first() else {
        return true;
    };
    let violations = series
        .rows
        .iter()
        .filter(|r| r.epsilon <= ell / 32.0 * (1.0 + 1e-12) && r.abs_err > first.abs_err)
        .count();
    violations <= 1
}
