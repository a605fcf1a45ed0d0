//! Periodic piecewise-constant weights and their rescalings `x ↦ w(x/ε)`.
//!
//! Cells are half-open `[x_{i-1}, x_i)`: at an interior breakpoint the
//! weight takes the value of the cell to its right.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, positive, Result};
use crate::Error;

/// A positive step function of period `period`, given on one period by
/// `breakpoints` (`0 = x_0 < … < x_N = period`) and `values` (`N` entries).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightSpec", into = "WeightSpec")]
pub struct PiecewiseConstantWeight {
    period: f64,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

/// Serialized form of a weight: `{ "period", "breakpoints", "values" }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub period: f64,
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl TryFrom<WeightSpec> for PiecewiseConstantWeight {
    type Error = Error;

    fn try_from(s: WeightSpec) -> Result<Self> {
        let w = Self::new(s.breakpoints, s.values)?;
        if w.period != s.period {
            return Err(invalid(
                "period",
                format!("{} does not match last breakpoint {}", s.period, w.period),
            ));
        }
        Ok(w)
    }
}

impl From<PiecewiseConstantWeight> for WeightSpec {
    fn from(w: PiecewiseConstantWeight) -> Self {
        WeightSpec {
            period: w.period,
            breakpoints: w.breakpoints,
            values: w.values,
        }
    }
}

impl PiecewiseConstantWeight {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(invalid("breakpoints", "need at least two breakpoints"));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(invalid(
                "values",
                format!(
                    "{} values for {} breakpoints (expected {})",
                    values.len(),
                    breakpoints.len(),
                    breakpoints.len() - 1
                ),
            ));
        }
        if breakpoints[0] != 0.0 {
            return Err(invalid("breakpoints", "first breakpoint must be 0"));
        }
        if breakpoints.iter().any(|x| !x.is_finite())
            || breakpoints.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(invalid("breakpoints", "must be finite and strictly increasing"));
        }
        for &v in &values {
            positive("values", v)?;
        }
        let period = *breakpoints.last().unwrap();
        Ok(Self {
            period,
            breakpoints,
            values,
        })
    }

    pub fn constant(value: f64, period: f64) -> Result<Self> {
        Self::new(vec![0.0, positive("period", period)?], vec![value])
    }

    /// Two equal halves: `low` on `[0, period/2)`, `high` on `[period/2, period)`.
    pub fn two_phase(low: f64, high: f64, period: f64) -> Result<Self> {
        let period = positive("period", period)?;
        Self::new(vec![0.0, 0.5 * period, period], vec![low, high])
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Mean value over one period.
    pub fn average(&self) -> f64 {
        let total: f64 = self
            .breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, c)| c * (w[1] - w[0]))
            .sum();
        total / self.period
    }

    /// Checks `a ≤ c_i ≤ b` for every cell value.
    pub fn check_bounds(&self, bounds: WeightBounds) -> Result<()> {
        match self.values.iter().find(|&&v| v < bounds.a || v > bounds.b) {
            Some(v) => Err(invalid(
                "values",
                format!("{v} outside declared bounds [{}, {}]", bounds.a, bounds.b),
            )),
            None => Ok(()),
        }
    }

    /// Step value of the periodic extension at `y` (half-open cells).
    pub fn value_at(&self, y: f64) -> f64 {
        let r = y.rem_euclid(self.period);
        let i = self.breakpoints.partition_point(|&b| b <= r);
        self.values[i.clamp(1, self.values.len()) - 1]
    }
}

/// Global bounds `0 < a ≤ b` on every weight value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightBounds {
    pub a: f64,
    pub b: f64,
}

impl WeightBounds {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        positive("a", a)?;
        positive("b", b)?;
        if a > b {
            return Err(invalid("a", format!("a = {a} exceeds b = {b}")));
        }
        Ok(Self { a, b })
    }

    /// Tightest bounds covering every value of both weights.
    pub fn enclosing(m: &PiecewiseConstantWeight, n: &PiecewiseConstantWeight) -> Self {
        Self {
            a: m.min_value().min(n.min_value()),
            b: m.max_value().max(n.max_value()),
        }
    }
}

/// `x ↦ base(x/ε)` realized as a step function on `[0, ℓ]`.
///
/// Beyond `ℓ` the weight continues as `base(x/ε)`; the shooting code relies
/// on that extension when a zero overshoots the interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledWeight {
    base: PiecewiseConstantWeight,
    epsilon: f64,
    ell: f64,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

/// Realized breakpoints closer than this (relative to ℓ) to ℓ are merged into ℓ.
const END_MERGE: f64 = 1e-13;

pub fn scale(w: &PiecewiseConstantWeight, epsilon: f64, ell: f64) -> Result<ScaledWeight> {
    let epsilon = positive("epsilon", epsilon)?;
    let ell = positive("ell", ell)?;
    let mut breakpoints = vec![0.0];
    let mut values = Vec::new();
    let mut cursor = CellCursor::new(w, epsilon);
    loop {
        values.push(cursor.value());
        let end = cursor.end();
        if end >= ell * (1.0 - END_MERGE) {
            breakpoints.push(ell);
            break;
        }
        breakpoints.push(end);
        cursor.advance();
    }
    Ok(ScaledWeight {
        base: w.clone(),
        epsilon,
        ell,
        breakpoints,
        values,
    })
}

impl ScaledWeight {
    pub fn base(&self) -> &PiecewiseConstantWeight {
        &self.base
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// Period of the rescaled weight, `ε · period`.
    pub fn cell_period(&self) -> f64 {
        self.epsilon * self.base.period
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.ell).contains(&x) {
            return Err(Error::OutOfDomain { x, ell: self.ell });
        }
        let i = self.breakpoints.partition_point(|&b| b <= x);
        Ok(self.values[i.clamp(1, self.values.len()) - 1])
    }

    pub(crate) fn cursor(&self) -> CellCursor<'_> {
        CellCursor::new(&self.base, self.epsilon)
    }
}

/// Walks the cells of `base(x/ε)` from `x = 0` onward, without truncation.
///
/// Cell ends are computed as `ε·(j·period + x_i)` rather than accumulated,
/// so the walk reproduces the realized breakpoints bit for bit.
#[derive(Debug, Clone)]
pub(crate) struct CellCursor<'a> {
    base: &'a PiecewiseConstantWeight,
    epsilon: f64,
    copy: usize,
    cell: usize,
}

impl<'a> CellCursor<'a> {
    fn new(base: &'a PiecewiseConstantWeight, epsilon: f64) -> Self {
        Self {
            base,
            epsilon,
            copy: 0,
            cell: 0,
        }
    }

    pub(crate) fn value(&self) -> f64 {
        self.base.values[self.cell]
    }

    pub(crate) fn end(&self) -> f64 {
        self.epsilon * (self.copy as f64 * self.base.period + self.base.breakpoints[self.cell + 1])
    }

    pub(crate) fn advance(&mut self) {
        self.cell += 1;
        if self.cell == self.base.values.len() {
            self.cell = 0;
            self.copy += 1;
        }
    }
}
