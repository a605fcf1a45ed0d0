use thiserror::Error;

/// Errors raised by the weight, shooting, spectrum, nodal and rate routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("x = {x} lies outside [0, {ell}]")]
    OutOfDomain { x: f64, ell: f64 },

    #[error("degenerate trajectory at x = {x}: |u| and |u'| both below guard")]
    Degenerate { x: f64 },

    #[error("zero #{k} not reached before safety cap x = {cap}")]
    ZeroCapExceeded { k: usize, cap: f64 },

    #[error("bracket [{lo}, {hi}] does not straddle the root (g(lo) = {g_lo}, g(hi) = {g_hi}); check the declared weight bounds")]
    BracketNotStraddling { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },

    #[error("bisection did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("eigenfunction residual |u(ell)| = {residual} exceeds {limit}")]
    Residual { residual: f64, limit: f64 },

    #[error("expected {expected} zeros, found {found}")]
    ZeroCount { expected: usize, found: usize },

    #[error("need at least 3 usable rows for a rate fit, got {0}")]
    TooFewRows(usize),

    #[error("values sum to {sum}, expected {expected}")]
    SumMismatch { sum: f64, expected: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::Invalid {
        field,
        reason: reason.into(),
    }
}

/// Rejects non-finite or non-positive values.
pub(crate) fn positive(field: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(invalid(field, format!("must be finite and > 0, got {v}")))
    }
}
