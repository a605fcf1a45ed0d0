//! Independent reference solver for the acceptance and integration tests.
//!
//! Classical RK4 on a uniform grid aligned with the weight breakpoints, a
//! sign-change count of the discrete solution, and bisection on "at least
//! k zeros in (0, ℓ]". Shares no code with the closed-form shooting solver.

#![allow(dead_code)]

/// A periodic step weight described by raw breakpoints and values on one period.
#[derive(Debug, Clone)]
pub struct RawWeight {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl RawWeight {
    pub fn constant(c: f64) -> Self {
        Self {
            breakpoints: vec![0.0, 1.0],
            values: vec![c],
        }
    }

    pub fn halves(lo: f64, hi: f64) -> Self {
        Self {
            breakpoints: vec![0.0, 0.5, 1.0],
            values: vec![lo, hi],
        }
    }

    fn at(&self, y: f64) -> f64 {
        let period = *self.breakpoints.last().unwrap();
        let r = y - period * (y / period).floor();
        for i in 0..self.values.len() {
            if r < self.breakpoints[i + 1] {
                return self.values[i];
            }
        }
        *self.values.last().unwrap()
    }
}

pub struct Oracle<'a> {
    pub m: &'a RawWeight,
    pub n: &'a RawWeight,
    pub epsilon: f64,
    pub ell: f64,
    pub t: f64,
    /// +1.0 or -1.0
    pub sign: f64,
    pub steps: usize,
}

impl Oracle<'_> {
    /// Number of sign changes of the discrete RK4 solution on `(0, ℓ]`.
    pub fn zero_count(&self, lambda: f64) -> usize {
        let h = self.ell / self.steps as f64;
        let (mut u, mut v) = (0.0f64, self.sign);
        let mut count = 0;
        let rhs = |u: f64, mw: f64, nw: f64| -> f64 {
            if u >= 0.0 {
                -lambda * mw * u
            } else {
                -lambda * self.t * nw * u
            }
        };
        let mut prev_sign = self.sign;
        for i in 0..self.steps {
            // Weights are constant on each step because the grid is aligned.
            let mid = (i as f64 + 0.5) * h / self.epsilon;
            let (mw, nw) = (self.m.at(mid), self.n.at(mid));
            let k1u = v;
            let k1v = rhs(u, mw, nw);
            let k2u = v + 0.5 * h * k1v;
            let k2v = rhs(u + 0.5 * h * k1u, mw, nw);
            let k3u = v + 0.5 * h * k2v;
            let k3v = rhs(u + 0.5 * h * k2u, mw, nw);
            let k4u = v + h * k3v;
            let k4v = rhs(u + h * k3u, mw, nw);
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            let s = if u > 0.0 {
                1.0
            } else if u < 0.0 {
                -1.0
            } else {
                -prev_sign
            };
            if s != prev_sign {
                count += 1;
                prev_sign = s;
            }
        }
        count
    }

    /// Smallest λ at which the k-th zero reaches ℓ.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let mut lo = 1e-6;
        let mut hi = 1.0;
        while self.zero_count(hi) < k {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.zero_count(mid) >= k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
