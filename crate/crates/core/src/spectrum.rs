//! Half-eigenvalues `λ_{k,t}^±`, their Sturm brackets, the constant-weight
//! closed form, trivial curves and Fučík curve tracing.
//!
//! For fixed `t > 0` the `k`-th half-eigenvalue is the unique `λ` at which
//! the `k`-th zero `z_k(λ)` of the shooting solution reaches ℓ. Since `z_k`
//! is continuous and strictly decreasing, plain bisection on
//! `g(λ) = z_k(λ) - ℓ` finds it.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, positive, Result};
use crate::shooting::{HalfProblem, Segment, Sign};
use crate::weights::{ScaledWeight, WeightBounds};
use crate::Error;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_BISECTIONS: usize = 200;

/// Largest admissible `|u(ℓ)|` relative to the trajectory scale.
pub const RESIDUAL_LIMIT: f64 = 1e-8;

/// Interval `[lo, hi]` containing `λ_{k,t}^±` for every weight pair with
/// values in `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn contains(&self, lambda: f64, rel_slack: f64) -> bool {
        lambda >= self.lo * (1.0 - rel_slack) && lambda <= self.hi * (1.0 + rel_slack)
    }
}

/// Sturm comparison bracket.
///
/// Some nodal domain is at least `ℓ/k` long, which gives the upper bound;
/// some domain is at most `ℓ/k` long, which gives the lower bound.
pub fn bracket(k: usize, t: f64, bounds: WeightBounds, ell: f64) -> Result<Bracket> {
    if k == 0 {
        return Err(invalid("k", "must be at least 1"));
    }
    positive("t", t)?;
    positive("ell", ell)?;
    let bounds = WeightBounds::new(bounds.a, bounds.b)?;
    let base = (k as f64 * PI / ell).powi(2);
    Ok(Bracket {
        lo: base / (bounds.b * t.max(1.0)),
        hi: base / (bounds.a * t.min(1.0)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EpsilonContext {
    Scale(f64),
    #[serde(serialize_with = "limit_str")]
    Limit,
}

fn limit_str<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("limit")
}

impl EpsilonContext {
    pub fn label(&self) -> String {
        match self {
            EpsilonContext::Scale(e) => format!("{e}"),
            EpsilonContext::Limit => "limit".to_string(),
        }
    }
}

/// Piecewise sinusoidal eigenfunction on `[0, ℓ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    pub ell: f64,
    pub segments: Vec<Segment>,
    /// Interior zeros, strictly increasing in `(0, ℓ)`.
    pub zeros: Vec<f64>,
}

impl Eigenfunction {
    /// `(u, u')` at `x`; points past the last segment use its closed form.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let i = self.segments.partition_point(|s| s.end <= x);
        let seg = &self.segments[i.min(self.segments.len() - 1)];
        seg.eval(x)
    }

    /// Largest `max(|u|, |u'|)` over segment end points.
    pub fn scale(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.u0.abs().max(s.du0.abs()))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfEigenvalue {
    pub k: usize,
    pub sign: Sign,
    pub t: f64,
    pub lambda: f64,
    pub context: EpsilonContext,
    pub eigenfunction: Eigenfunction,
}

impl HalfEigenvalue {
    pub fn alpha(&self) -> f64 {
        self.lambda
    }

    pub fn beta(&self) -> f64 {
        self.t * self.lambda
    }

    /// `(α, β)` lies in `{τα ≤ β ≤ α/τ}` for `τ = min(t, 1/t)`.
    pub fn in_cone(&self) -> bool {
        let tau = self.t.min(1.0 / self.t);
        let (a, b) = (self.alpha(), self.beta());
        tau * a <= b * (1.0 + 1e-15) && b <= a / tau * (1.0 + 1e-15)
    }
}

/// Solves for `λ_{k,t}^±` by bisection inside [`bracket`].
///
/// `tol` is the relative bracket width at which bisection stops.
#[allow(clippy::too_many_arguments)]
pub fn solve_half_eigenvalue(
    k: usize,
    t: f64,
    sign: Sign,
    m: &ScaledWeight,
    n: &ScaledWeight,
    ell: f64,
    bounds: WeightBounds,
    tol: f64,
) -> Result<HalfEigenvalue> {
    positive("tol", tol)?;
    m.base().check_bounds(bounds)?;
    n.base().check_bounds(bounds)?;
    let problem = HalfProblem::new(m, n, t, sign, ell)?;
    let br = bracket(k, t, bounds, ell)?;
    let cap = |lambda: f64| 4.0 * ell * (br.hi / lambda).sqrt();
    let g = |lambda: f64| -> Result<f64> { Ok(problem.kth_zero(lambda, k, cap(lambda))? - ell) };

    // z_k(λ) may equal ℓ to rounding at a tight end of the bracket.
    let slack = 1e-12 * ell;
    let (mut lo, mut hi) = (br.lo, br.hi);
    let (g_lo, g_hi) = (g(lo)?, g(hi)?);
    if g_lo < -slack || g_hi > slack {
        return Err(Error::BracketNotStraddling { lo, hi, g_lo, g_hi });
    }
    let mut iterations = 0;
    let lambda = if g_lo <= 0.0 {
        lo
    } else if g_hi >= 0.0 {
        hi
    } else {
        while hi - lo > tol * hi {
            if iterations == MAX_BISECTIONS {
                return Err(Error::NoConvergence(MAX_BISECTIONS));
            }
            iterations += 1;
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if g(mid)? > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };

    let eigenfunction = eigenfunction_at(&problem, lambda, k, cap(lambda))?;
    let (end_u, _) = eigenfunction_end(&problem, lambda)?;
    let limit = RESIDUAL_LIMIT * eigenfunction.scale();
    if end_u.abs() > limit {
        return Err(Error::Residual {
            residual: end_u.abs(),
            limit,
        });
    }
    Ok(HalfEigenvalue {
        k,
        sign,
        t,
        lambda,
        context: EpsilonContext::Scale(m.epsilon()),
        eigenfunction,
    })
}

fn eigenfunction_end(problem: &HalfProblem<'_>, lambda: f64) -> Result<(f64, f64)> {
    let r = problem.shoot(lambda)?;
    Ok((r.end_value, r.end_slope))
}

/// Trajectory up to the `k`-th zero, which is identified with ℓ.
fn eigenfunction_at(problem: &HalfProblem<'_>, lambda: f64, k: usize, cap: f64) -> Result<Eigenfunction> {
    let (mut zeros, mut segments) = problem.kth_zero_segments(lambda, k, cap)?;
    zeros.pop();
    if let Some(last) = segments.last_mut() {
        last.end = problem.ell;
    }
    if zeros.len() != k - 1 {
        return Err(Error::ZeroCount {
            expected: k - 1,
            found: zeros.len(),
        });
    }
    Ok(Eigenfunction {
        ell: problem.ell,
        segments,
        zeros,
    })
}

/// Hump counts `(positive, negative)` of a `k`-domain eigenfunction.
pub fn hump_counts(k: usize, sign: Sign) -> (usize, usize) {
    let (first, second) = (k.div_ceil(2), k / 2);
    match sign {
        Sign::Plus => (first, second),
        Sign::Minus => (second, first),
    }
}

/// Closed form for constant weights `m̄`, `n̄`:
/// `λ = (π/ℓ)² (p/√m̄ + q/√(t n̄))²` with `p` positive and `q` negative humps.
pub fn limit_half_eigenvalue(k: usize, t: f64, sign: Sign, m_bar: f64, n_bar: f64, ell: f64) -> Result<HalfEigenvalue> {
    if k == 0 {
        return Err(invalid("k", "must be at least 1"));
    }
    positive("t", t)?;
    positive("m_bar", m_bar)?;
    positive("n_bar", n_bar)?;
    positive("ell", ell)?;
    let (p, q) = hump_counts(k, sign);
    let root = p as f64 / m_bar.sqrt() + q as f64 / (t * n_bar).sqrt();
    let lambda = (PI / ell * root).powi(2);

    let omega_pos = (lambda * m_bar).sqrt();
    let omega_neg = (lambda * t * n_bar).sqrt();
    let mut segments = Vec::with_capacity(k);
    let mut zeros = Vec::with_capacity(k.saturating_sub(1));
    let mut x = 0.0;
    let mut hump = sign;
    for i in 0..k {
        let omega = match hump {
            Sign::Plus => omega_pos,
            Sign::Minus => omega_neg,
        };
        let end = if i + 1 == k { ell } else { x + PI / omega };
        segments.push(Segment {
            start: x,
            end,
            omega,
            u0: 0.0,
            du0: hump.value(),
        });
        if i + 1 < k {
            zeros.push(end);
        }
        x = end;
        hump = hump.flip();
    }
    Ok(HalfEigenvalue {
        k,
        sign,
        t,
        lambda,
        context: EpsilonContext::Limit,
        eigenfunction: Eigenfunction { ell, segments, zeros },
    })
}

/// First weighted Dirichlet eigenvalues `(λ₁^m, λ₁^n)`; the trivial curves
/// are `{λ₁^m} × ℝ` and `ℝ × {λ₁^n}`.
pub fn trivial_curves(m: &ScaledWeight, n: &ScaledWeight, ell: f64, tol: f64) -> Result<(f64, f64)> {
    let first = |w: &ScaledWeight| -> Result<f64> {
        let b = WeightBounds::enclosing(w.base(), w.base());
        Ok(solve_half_eigenvalue(1, 1.0, Sign::Plus, w, w, ell, b, tol)?.lambda)
    };
    Ok((first(m)?, first(n)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub k: usize,
    pub sign: Sign,
    pub t: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Points of `C_k^±` along a `t` grid; failed points are listed separately.
#[derive(Debug, Clone)]
pub struct CurveTrace {
    pub points: Vec<CurvePoint>,
    pub failures: Vec<(f64, Error)>,
}

impl CurveTrace {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// 33 logarithmically spaced slopes from 1/16 to 16.
pub fn default_t_grid() -> Vec<f64> {
    (0..33).map(|i| 2f64.powf(-4.0 + i as f64 / 4.0)).collect()
}

#[allow(clippy::too_many_arguments)]
pub fn trace_curve(
    k: usize,
    sign: Sign,
    m: &ScaledWeight,
    n: &ScaledWeight,
    ell: f64,
    bounds: WeightBounds,
    t_grid: &[f64],
    tol: f64,
) -> Result<CurveTrace> {
    if t_grid.is_empty() {
        return Err(invalid("t_grid", "must not be empty"));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("t_grid", "must be strictly increasing"));
    }
    for &t in t_grid {
        positive("t", t)?;
    }
    let solved: Vec<(f64, Result<HalfEigenvalue>)> = t_grid
        .par_iter()
        .map(|&t| (t, solve_half_eigenvalue(k, t, sign, m, n, ell, bounds, tol)))
        .collect();
    let mut trace = CurveTrace {
        points: Vec::new(),
        failures: Vec::new(),
    };
    for (t, r) in solved {
        match r {
            Ok(e) => trace.points.push(CurvePoint {
                k,
                sign,
                t,
                lambda: e.lambda,
                alpha: e.alpha(),
                beta: e.beta(),
            }),
            Err(err) => trace.failures.push((t, err)),
        }
    }
    Ok(trace)
}

/// Relative gap between `t·λ_{k,t}^σ(m, n)` and `λ_{k,1/t}^{-σ}(n, m)`;
/// the two coincide through `v = -u`.
#[allow(clippy::too_many_arguments)]
pub fn symmetry_check(
    k: usize,
    t: f64,
    sign: Sign,
    m: &ScaledWeight,
    n: &ScaledWeight,
    ell: f64,
    bounds: WeightBounds,
    tol: f64,
) -> Result<f64> {
    positive("t", t)?;
    let direct = solve_half_eigenvalue(k, t, sign, m, n, ell, bounds, tol)?;
    let mirrored = solve_half_eigenvalue(k, 1.0 / t, sign.flip(), n, m, ell, bounds, tol)?;
    let lhs = t * direct.lambda;
    Ok((lhs - mirrored.lambda).abs() / lhs)
}
