//! Exact shooting for `-u'' = λ (m u⁺ - t n u⁻)`, `u(0) = 0`, `u'(0) = ±1`.
//!
//! On a cell where both weights are constant and `u` keeps one sign the
//! equation is `-u'' = ω² u`, solved in closed form. The integrator walks
//! cell by cell, splitting at every weight breakpoint and at every zero of
//! `u`, where it switches between `ω = √(λ m)` and `ω = √(λ t n)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, positive, Result};
use crate::weights::ScaledWeight;
use crate::Error;

/// Zeros within `SNAP · ℓ` of a breakpoint are placed on the breakpoint.
pub const SNAP: f64 = 1e-13;

/// `|u|` and `|u'|` both below `DEGENERACY_GUARD` times the trajectory
/// scale is reported as a degenerate (double) zero.
pub const DEGENERACY_GUARD: f64 = 1e-14;

/// Sign of `u'(0)`, equivalently of `u` on the first nodal domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    /// Spelled-out form for file names.
    pub fn word(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "p" => Ok(Sign::Plus),
            "-" | "minus" | "m" => Ok(Sign::Minus),
            other => Err(invalid("sign", format!("expected + or -, got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShootState {
    pub x: f64,
    pub u: f64,
    pub du: f64,
    pub zeros: Vec<f64>,
    /// Sign of `u` on the nodal piece being traversed.
    pub sign: Sign,
}

impl ShootState {
    /// `u(0) = 0`, `u'(0) = ±1`.
    pub fn start(sign: Sign) -> Self {
        Self {
            x: 0.0,
            u: 0.0,
            du: sign.value(),
            zeros: Vec::new(),
            sign,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellExit {
    /// Stopped at a zero of `u` inside the cell (or on its end).
    Zero,
    /// Reached the end of the cell without a sign change.
    End,
}

/// One closed-form piece `u(x) = u0 cos(ω(x-start)) + (du0/ω) sin(ω(x-start))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub omega: f64,
    pub u0: f64,
    pub du0: f64,
}

impl Segment {
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let (s, c) = (self.omega * (x - self.start)).sin_cos();
        (
            self.u0 * c + self.du0 / self.omega * s,
            -self.u0 * self.omega * s + self.du0 * c,
        )
    }

    pub fn amplitude(&self) -> f64 {
        self.u0.hypot(self.du0 / self.omega)
    }

    /// Phase `φ` with `u(x) = A sin(ω(x-start) + φ)`.
    pub fn phase(&self) -> f64 {
        self.u0.atan2(self.du0 / self.omega)
    }
}

/// Smallest `s > 0` with `u0 cos(ωs) + (du0/ω) sin(ωs) = 0`.
fn first_zero(u0: f64, du0: f64, omega: f64) -> f64 {
    if u0 == 0.0 {
        return PI / omega;
    }
    let v0 = du0 / omega;
    let theta = u0.abs().atan2(-u0.signum() * v0);
    let mut s = theta / omega;
    // Two safeguarded Newton steps on the closed form.
    for _ in 0..2 {
        let (sn, cs) = (omega * s).sin_cos();
        let f = u0 * cs + v0 * sn;
        let df = omega * (-u0 * sn + v0 * cs);
        if df == 0.0 {
            break;
        }
        let next = s - f / df;
        if next > 0.0 && next < 2.0 * PI / omega {
            let (sn2, cs2) = (omega * next).sin_cos();
            if (u0 * cs2 + v0 * sn2).abs() < f.abs() {
                s = next;
            }
        }
    }
    s
}

/// Advances `state` across a constant-frequency cell ending at `cell_end`,
/// stopping early at the first zero of `u`.
///
/// A zero within `snap` of `cell_end` is placed exactly on `cell_end`.
pub fn propagate_cell(state: &mut ShootState, cell_end: f64, omega: f64, snap: f64) -> Result<CellExit> {
    positive("omega", omega)?;
    if cell_end.is_nan() || cell_end <= state.x {
        return Err(invalid(
            "cell_end",
            format!("{cell_end} must exceed current position {}", state.x),
        ));
    }
    let (u0, du0) = (state.u, state.du);
    let length = cell_end - state.x;
    let s_zero = first_zero(u0, du0, omega);
    if s_zero <= length + snap {
        let at = if (s_zero - length).abs() <= snap {
            cell_end
        } else {
            state.x + s_zero
        };
        // ω²u² + u'² is conserved, so |u'| at the zero is ω·A.
        let slope = omega * u0.hypot(du0 / omega);
        let dir = if u0 == 0.0 { -du0.signum() } else { -u0.signum() };
        state.x = at;
        state.u = 0.0;
        state.du = dir * slope;
        state.sign = if dir > 0.0 { Sign::Plus } else { Sign::Minus };
        state.zeros.push(at);
        Ok(CellExit::Zero)
    } else {
        let (sn, cs) = (omega * length).sin_cos();
        state.u = u0 * cs + du0 / omega * sn;
        state.du = -u0 * omega * sn + du0 * cs;
        state.x = cell_end;
        Ok(CellExit::End)
    }
}

/// Result of integrating from 0 to ℓ.
#[derive(Debug, Clone, PartialEq)]
pub struct ShootResult {
    /// Zeros in the open interval `(0, ℓ)`.
    pub zeros: Vec<f64>,
    pub end_value: f64,
    pub end_slope: f64,
    /// Nodal domains fully contained in `(0, ℓ)`.
    pub nodal_count: usize,
    /// Largest `max(|u|, |u'|)` seen along the trajectory.
    pub scale: f64,
}

/// One `(x, u, u')` sample of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub x: f64,
    pub u: f64,
    pub du: f64,
}

#[derive(Debug, Clone, Copy)]
enum Stop {
    At(f64),
    Zeros { k: usize, cap: f64 },
}

/// The problem `-u'' = λ (m u⁺ - t n u⁻)` on `(0, ℓ)` with `u'(0)` of sign `sign`.
#[derive(Debug, Clone, Copy)]
pub struct HalfProblem<'a> {
    pub m: &'a ScaledWeight,
    pub n: &'a ScaledWeight,
    pub t: f64,
    pub sign: Sign,
    pub ell: f64,
}

struct Run {
    state: ShootState,
    scale: f64,
}

impl<'a> HalfProblem<'a> {
    pub fn new(m: &'a ScaledWeight, n: &'a ScaledWeight, t: f64, sign: Sign, ell: f64) -> Result<Self> {
        positive("t", t)?;
        positive("ell", ell)?;
        Ok(Self { m, n, t, sign, ell })
    }

    fn snap(&self) -> f64 {
        SNAP * self.ell
    }

    fn integrate(&self, lambda: f64, stop: Stop, mut segments: Option<&mut Vec<Segment>>) -> Result<Run> {
        positive("lambda", lambda)?;
        positive("t", self.t)?;
        let snap = self.snap();
        let mut m_cells = self.m.cursor();
        let mut n_cells = self.n.cursor();
        let mut state = ShootState::start(self.sign);
        let mut scale: f64 = 1.0;
        let target = match stop {
            Stop::At(x) => x,
            Stop::Zeros { cap, .. } => cap,
        };
        loop {
            let cell_end = m_cells.end().min(n_cells.end()).min(target);
            let omega = match state.sign {
                Sign::Plus => (lambda * m_cells.value()).sqrt(),
                Sign::Minus => (lambda * self.t * n_cells.value()).sqrt(),
            };
            let (x0, u0, du0) = (state.x, state.u, state.du);
            let exit = propagate_cell(&mut state, cell_end, omega, snap)?;
            if let Some(segs) = segments.as_deref_mut() {
                segs.push(Segment {
                    start: x0,
                    end: state.x,
                    omega,
                    u0,
                    du0,
                });
            }
            scale = scale.max(state.u.abs()).max(state.du.abs());
            if state.u.abs() < DEGENERACY_GUARD * scale && state.du.abs() < DEGENERACY_GUARD * scale {
                return Err(Error::Degenerate { x: state.x });
            }
            if let (CellExit::Zero, Stop::Zeros { k, .. }) = (exit, stop) {
                if state.zeros.len() == k {
                    return Ok(Run { state, scale });
                }
            }
            while m_cells.end() <= state.x + snap {
                m_cells.advance();
            }
            while n_cells.end() <= state.x + snap {
                n_cells.advance();
            }
            if state.x >= target - snap {
                return match stop {
                    Stop::At(_) => Ok(Run { state, scale }),
                    Stop::Zeros { k, cap } => Err(Error::ZeroCapExceeded { k, cap }),
                };
            }
        }
    }

    /// Integrates over `[0, ℓ]`; a zero within snapping distance of ℓ counts
    /// as `u(ℓ) = 0`, not as an interior zero.
    pub fn shoot(&self, lambda: f64) -> Result<ShootResult> {
        let run = self.integrate(lambda, Stop::At(self.ell), None)?;
        Ok(self.finish(run))
    }

    fn finish(&self, run: Run) -> ShootResult {
        let Run { mut state, scale } = run;
        let mut end_value = state.u;
        if state.zeros.last().is_some_and(|&z| z >= self.ell - self.snap()) {
            state.zeros.pop();
            end_value = 0.0;
        }
        let nodal_count = state.zeros.len() + usize::from(end_value == 0.0);
        ShootResult {
            zeros: state.zeros,
            end_value,
            end_slope: state.du,
            nodal_count,
            scale,
        }
    }

    /// Shoots over `[0, ℓ]` and returns the closed-form pieces as well.
    pub fn shoot_segments(&self, lambda: f64) -> Result<(ShootResult, Vec<Segment>)> {
        let mut segs = Vec::new();
        let run = self.integrate(lambda, Stop::At(self.ell), Some(&mut segs))?;
        Ok((self.finish(run), segs))
    }

    /// Position of the `k`-th zero in `(0, ∞)`, continuing past ℓ with the
    /// weights' periodic extension. Fails if it lies beyond `cap`.
    pub fn kth_zero(&self, lambda: f64, k: usize, cap: f64) -> Result<f64> {
        if k == 0 {
            return Err(invalid("k", "must be at least 1"));
        }
        positive("cap", cap)?;
        let run = self.integrate(lambda, Stop::Zeros { k, cap }, None)?;
        Ok(*run.state.zeros.last().unwrap())
    }

    /// Closed-form pieces up to and including the `k`-th zero.
    pub fn kth_zero_segments(&self, lambda: f64, k: usize, cap: f64) -> Result<(Vec<f64>, Vec<Segment>)> {
        if k == 0 {
            return Err(invalid("k", "must be at least 1"));
        }
        let mut segs = Vec::new();
        let run = self.integrate(lambda, Stop::Zeros { k, cap }, Some(&mut segs))?;
        Ok((run.state.zeros, segs))
    }

    /// `(x, u, u')` at every cell boundary and zero on `[0, ℓ]`.
    pub fn trajectory(&self, lambda: f64) -> Result<Vec<TracePoint>> {
        let (_, segs) = self.shoot_segments(lambda)?;
        Ok(trace_points(&segs))
    }
}

/// Samples segment start points plus the final end point.
pub fn trace_points(segs: &[Segment]) -> Vec<TracePoint> {
    let mut out: Vec<TracePoint> = segs
        .iter()
        .map(|s| TracePoint {
            x: s.start,
            u: s.u0,
            du: s.du0,
        })
        .collect();
    if let Some(last) = segs.last() {
        let (u, du) = last.eval(last.end);
        out.push(TracePoint { x: last.end, u, du });
    }
    out
}
