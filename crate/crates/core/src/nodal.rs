//! Nodal decompositions of half-eigenfunctions and the length inequalities
//! they satisfy.
//!
//! Every check returns a report instead of failing, so negative controls can
//! be run through the same code. Strict inequalities are tested with an
//! additive slack of [`SLACK`]`·ℓ`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{positive, Result};
use crate::shooting::Sign;
use crate::spectrum::HalfEigenvalue;
use crate::weights::WeightBounds;
use crate::Error;

pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodalInterval {
    pub left: f64,
    pub right: f64,
    pub sign: Sign,
}

impl NodalInterval {
    pub fn length(&self) -> f64 {
        self.right - self.left
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodalDecomposition {
    pub ell: f64,
    pub intervals: Vec<NodalInterval>,
}

impl NodalDecomposition {
    /// Builds a decomposition from interior zeros, alternating signs from `first`.
    pub fn from_zeros(ell: f64, zeros: &[f64], first: Sign) -> Result<Self> {
        positive("ell", ell)?;
        let mut edges = Vec::with_capacity(zeros.len() + 2);
        edges.push(0.0);
        edges.extend_from_slice(zeros);
        edges.push(ell);
        if edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(crate::error::invalid("zeros", "must be strictly increasing inside (0, ell)"));
        }
        let mut sign = first;
        let intervals = edges
            .windows(2)
            .map(|w| {
                let iv = NodalInterval {
                    left: w[0],
                    right: w[1],
                    sign,
                };
                sign = sign.flip();
                iv
            })
            .collect();
        Ok(Self { ell, intervals })
    }

    pub fn k(&self) -> usize {
        self.intervals.len()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.intervals.iter().map(NodalInterval::length).collect()
    }

    pub fn lengths_of(&self, sign: Sign) -> Vec<f64> {
        self.intervals
            .iter()
            .filter(|iv| iv.sign == sign)
            .map(NodalInterval::length)
            .collect()
    }

    /// Lengths of consecutive unions `I_1 ∪ I_2`, `I_3 ∪ I_4`, …; an odd
    /// trailing domain is left out.
    pub fn pair_lengths(&self) -> Vec<f64> {
        self.intervals
            .chunks_exact(2)
            .map(|p| p[1].right - p[0].left)
            .collect()
    }

    /// Right end `c` of the first pair `J = (0, c)`, if there is one.
    pub fn first_pair_end(&self) -> Option<f64> {
        self.intervals.get(1).map(|iv| iv.right)
    }

    /// Odd reflection onto `[-ℓ, ℓ]`: `u(-x) = -u(x)`.
    pub fn odd_reflection(&self) -> NodalDecomposition {
        let mut intervals: Vec<NodalInterval> = self
            .intervals
            .iter()
            .rev()
            .map(|iv| NodalInterval {
                left: -iv.right,
                right: -iv.left,
                sign: iv.sign.flip(),
            })
            .collect();
        intervals.extend(self.intervals.iter().copied());
        NodalDecomposition {
            ell: 2.0 * self.ell,
            intervals,
        }
    }
}

/// Nodal decomposition of a solved eigenfunction.
pub fn extract(e: &HalfEigenvalue) -> Result<NodalDecomposition> {
    let f = &e.eigenfunction;
    if f.zeros.len() + 1 != e.k {
        return Err(Error::ZeroCount {
            expected: e.k - 1,
            found: f.zeros.len(),
        });
    }
    NodalDecomposition::from_zeros(f.ell, &f.zeros, e.sign)
}

fn worst_gap(lengths: &[f64]) -> f64 {
    let max = lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    if lengths.is_empty() {
        0.0
    } else {
        max - min
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualLengthReport {
    pub gap_plus: f64,
    pub gap_minus: f64,
    pub bound: f64,
    pub plus_ok: bool,
    pub minus_ok: bool,
}

impl EqualLengthReport {
    pub fn ok(&self) -> bool {
        self.plus_ok && self.minus_ok
    }
}

/// Same-sign nodal domains differ in length by less than `2·period`, where
/// `period` is the period of the rescaled weights (`ε` for unit base period).
pub fn check_equal_lengths(d: &NodalDecomposition, period: f64) -> EqualLengthReport {
    let bound = 2.0 * period;
    let gap_plus = worst_gap(&d.lengths_of(Sign::Plus));
    let gap_minus = worst_gap(&d.lengths_of(Sign::Minus));
    let limit = bound + SLACK * d.ell;
    EqualLengthReport {
        gap_plus,
        gap_minus,
        bound,
        plus_ok: gap_plus < limit,
        minus_ok: gap_minus < limit,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairLengthReport {
    /// `|J| - 2ℓ/k` for each pair.
    pub deviations: Vec<f64>,
    pub target: f64,
    pub bound: f64,
    pub worst: f64,
    pub ok: bool,
}

/// Consecutive-pair lengths compared with `2ℓ/k`, allowed deviation `4·period`.
///
/// For odd `k` the pairs are formed on the odd reflection over `[-ℓ, ℓ]`.
pub fn check_pair_lengths(d: &NodalDecomposition, period: f64, k: usize, ell: f64) -> PairLengthReport {
    let target = 2.0 * ell / k as f64;
    let pairs = if k.is_multiple_of(2) {
        d.pair_lengths()
    } else {
        d.odd_reflection().pair_lengths()
    };
    let deviations: Vec<f64> = pairs.iter().map(|p| p - target).collect();
    let worst = deviations.iter().fold(0.0f64, |a, d| a.max(d.abs()));
    let bound = 4.0 * period;
    PairLengthReport {
        ok: worst <= bound + SLACK * ell,
        deviations,
        target,
        bound,
        worst,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub min_domain: f64,
    pub domain_bound: f64,
    /// `None` when there is no pair (`k = 1`).
    pub min_pair: Option<f64>,
    pub pair_bound: f64,
    pub ok: bool,
}

/// `|I| ≥ (ℓ/k)√(τa/b)` for every domain and `|J| ≥ (ℓ/k)√(a/b)(1+√τ)` for
/// every pair of consecutive domains, with `τ = min(t, 1/t)`.
///
/// For `t > 1` the bounds come from the mirrored problem `v = -u` with slope
/// `1/t`, which has the same nodal domains.
pub fn check_lower_bounds(d: &NodalDecomposition, t: f64, bounds: WeightBounds, k: usize, ell: f64) -> LowerBoundReport {
    let tau = t.min(1.0 / t);
    let unit = ell / k as f64 * (bounds.a / bounds.b).sqrt();
    let domain_bound = unit * tau.sqrt();
    let pair_bound = unit * (1.0 + tau.sqrt());
    let lengths = d.lengths();
    let min_domain = lengths.iter().copied().fold(f64::INFINITY, f64::min);
    let min_pair = lengths.windows(2).map(|w| w[0] + w[1]).reduce(f64::min);
    let slack = SLACK * ell;
    let ok = min_domain + slack >= domain_bound && min_pair.is_none_or(|p| p + slack >= pair_bound);
    LowerBoundReport {
        min_domain,
        domain_bound,
        min_pair,
        pair_bound,
        ok,
    }
}

/// Sturm two-sided bound on each domain: `π/√(μb) ≤ |I| ≤ π/√(μa)` with
/// `μ = λ` on positive and `μ = tλ` on negative domains.
pub fn check_sturm_lengths(d: &NodalDecomposition, lambda: f64, t: f64, bounds: WeightBounds) -> bool {
    let slack = SLACK * d.ell;
    d.intervals.iter().all(|iv| {
        let mu = match iv.sign {
            Sign::Plus => lambda,
            Sign::Minus => t * lambda,
        };
        let len = iv.length();
        len + slack >= PI / (mu * bounds.b).sqrt() && len - slack <= PI / (mu * bounds.a).sqrt()
    })
}

/// If `Σ a_i = M` then each `|a_i - M/K| < ε`? Fails when the sum is off.
pub fn averaging_lemma(values: &[f64], total: f64, epsilon: f64) -> Result<bool> {
    if values.is_empty() {
        return Err(crate::error::invalid("values", "must not be empty"));
    }
    let sum: f64 = values.iter().sum();
    if (sum - total).abs() > 1e-12 * total.abs().max(sum.abs()).max(f64::MIN_POSITIVE) {
        return Err(Error::SumMismatch { sum, expected: total });
    }
    let mean = total / values.len() as f64;
    Ok(values.iter().all(|a| (a - mean).abs() < epsilon))
}

/// One CSV row per nodal domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodalRow {
    pub k: usize,
    pub sign: Sign,
    pub t: f64,
    pub epsilon: Option<f64>,
    pub domain_index: usize,
    pub left: f64,
    pub right: f64,
    pub sign_of_u: Sign,
    pub length: f64,
}

pub fn nodal_rows(e: &HalfEigenvalue, d: &NodalDecomposition) -> Vec<NodalRow> {
    let epsilon = match e.context {
        crate::spectrum::EpsilonContext::Scale(x) => Some(x),
        crate::spectrum::EpsilonContext::Limit => None,
    };
    d.intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| NodalRow {
            k: e.k,
            sign: e.sign,
            t: e.t,
            epsilon,
            domain_index: i + 1,
            left: iv.left,
            right: iv.right,
            sign_of_u: iv.sign,
            length: iv.length(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::limit_half_eigenvalue;

    fn unit() -> WeightBounds {
        WeightBounds::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn extract_sine() {
        let e = limit_half_eigenvalue(2, 1.0, Sign::Plus, 1.0, 1.0, PI).unwrap();
        let d = extract(&e).unwrap();
        assert_eq!(d.k(), 2);
        assert!((d.intervals[0].right - PI / 2.0).abs() < 1e-15);
        assert_eq!(d.intervals[0].sign, Sign::Plus);
        assert_eq!(d.intervals[1].sign, Sign::Minus);
        assert_eq!(d.intervals[1].right, PI);
    }

    #[test]
    fn extract_asymmetric() {
        let e = limit_half_eigenvalue(2, 4.0, Sign::Plus, 1.0, 1.0, PI).unwrap();
        let d = extract(&e).unwrap();
        assert!((d.intervals[0].right - 2.0 * PI / 3.0).abs() < 1e-15);
        let e = limit_half_eigenvalue(1, 3.0, Sign::Minus, 1.0, 1.0, 2.0).unwrap();
        let d = extract(&e).unwrap();
        assert_eq!(d.intervals, vec![NodalInterval { left: 0.0, right: 2.0, sign: Sign::Minus }]);
    }

    #[test]
    fn extract_detects_count_mismatch() {
        let mut e = limit_half_eigenvalue(3, 1.0, Sign::Plus, 1.0, 1.0, PI).unwrap();
        e.eigenfunction.zeros.pop();
        assert!(matches!(extract(&e), Err(Error::ZeroCount { .. })));
    }

    #[test]
    fn equal_lengths_control() {
        let e = limit_half_eigenvalue(5, 0.3, Sign::Plus, 2.0, 1.0, 1.0).unwrap();
        let r = check_equal_lengths(&extract(&e).unwrap(), 0.01);
        assert!(r.ok());
        assert!(r.gap_plus < 1e-14 && r.gap_minus < 1e-14);

        let eps = 0.05;
        let d = NodalDecomposition::from_zeros(1.0, &[0.3, 0.575, 0.725], Sign::Plus).unwrap();
        // Positive lengths 0.3 and 0.15 (gap 3ε), negative lengths both 0.275.
        let r = check_equal_lengths(&d, eps);
        assert!(!r.plus_ok);
        assert!(r.minus_ok);
    }

    #[test]
    fn pair_lengths_constant_even() {
        let e = limit_half_eigenvalue(4, 0.3, Sign::Minus, 2.0, 1.0, 1.0).unwrap();
        let r = check_pair_lengths(&extract(&e).unwrap(), 0.0, 4, 1.0);
        assert!(r.ok, "{r:?}");
        assert!(r.worst < 1e-14);
    }

    #[test]
    fn pair_lengths_negative_control() {
        let eps = 0.02;
        // Pairs of length 0.5 + 5ε and 0.5 - 5ε against 2ℓ/k = 0.5.
        let d = NodalDecomposition::from_zeros(1.0, &[0.3, 0.6, 0.8], Sign::Plus).unwrap();
        let r = check_pair_lengths(&d, eps, 4, 1.0);
        assert!(!r.ok);
        assert!((r.worst - 5.0 * eps).abs() < 1e-12);
    }

    #[test]
    fn odd_reflection_layout() {
        let d = NodalDecomposition::from_zeros(3.0, &[1.0, 2.0], Sign::Plus).unwrap();
        let r = d.odd_reflection();
        assert_eq!(r.k(), 6);
        assert_eq!(r.intervals[0], NodalInterval { left: -3.0, right: -2.0, sign: Sign::Minus });
        assert_eq!(r.intervals[2].sign, Sign::Minus);
        assert_eq!(r.intervals[3].sign, Sign::Plus);
        assert!(r.intervals.windows(2).all(|w| w[0].right == w[1].left && w[0].sign != w[1].sign));
    }

    #[test]
    fn lower_bounds_examples() {
        let e = limit_half_eigenvalue(2, 1.0, Sign::Plus, 1.0, 1.0, PI).unwrap();
        let r = check_lower_bounds(&extract(&e).unwrap(), 1.0, unit(), 2, PI);
        assert!(r.ok);
        assert!((r.min_domain - r.domain_bound).abs() < 1e-14);

        let e = limit_half_eigenvalue(2, 0.25, Sign::Plus, 1.0, 1.0, PI).unwrap();
        let d = extract(&e).unwrap();
        let r = check_lower_bounds(&d, 0.25, unit(), 2, PI);
        assert!(r.ok);
        assert!((d.intervals[1].length() - PI / 3.0).abs() < 1e-14 || (d.intervals[0].length() - PI / 3.0).abs() < 1e-14);
        assert!((r.domain_bound - PI / 4.0).abs() < 1e-15);

        let d = NodalDecomposition::from_zeros(1.0, &[0.05], Sign::Plus).unwrap();
        assert!(!check_lower_bounds(&d, 1.0, unit(), 2, 1.0).ok);
    }

    #[test]
    fn sturm_lengths_constant() {
        let e = limit_half_eigenvalue(3, 2.0, Sign::Plus, 1.5, 1.5, 1.0).unwrap();
        let b = WeightBounds::new(1.5, 1.5).unwrap();
        assert!(check_sturm_lengths(&extract(&e).unwrap(), e.lambda, 2.0, b));
        assert!(!check_sturm_lengths(&extract(&e).unwrap(), 2.0 * e.lambda, 2.0, b));
    }

    #[test]
    fn averaging_lemma_examples() {
        assert!(averaging_lemma(&[1.0, 1.0, 1.0], 3.0, 1e-3).unwrap());
        assert!(averaging_lemma(&[1.0, 1.5], 2.5, 0.6).unwrap());
        assert!(!averaging_lemma(&[1.0, 2.0], 3.0, 0.4).unwrap());
        assert!(matches!(averaging_lemma(&[1.0, 1.0], 3.0, 1.0), Err(Error::SumMismatch { .. })));
    }
}
