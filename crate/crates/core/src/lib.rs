//! Half-eigenvalues and Fučík curves of
//! `-u'' = λ (m(x/ε) u⁺ - t n(x/ε) u⁻)` on `(0, ℓ)` with Dirichlet conditions,
//! for periodic piecewise-constant weights, together with the homogenization
//! experiments that compare them against the averaged constant-weight limit.
//!
//! Layout:
//! - [`weights`]: periodic step weights and their rescalings.
//! - [`shooting`]: closed-form cell-by-cell shooting and the zero map `z_k(λ)`.
//! - [`spectrum`]: brackets, the bisection solver, the limit closed form,
//!   trivial curves and curve tracing.
//! - [`nodal`]: nodal decompositions and their length inequalities.
//! - [`homog`]: ε-sweeps, rate fits and bound checks.
//! - [`cli`]: configuration files and command dispatch for the `fucik` binary.

pub mod cli;
mod error;
pub mod homog;
pub mod io;
pub mod nodal;
pub mod shooting;
pub mod spectrum;
pub mod weights;

pub use error::{Error, Result};
pub use shooting::Sign;
pub use weights::{PiecewiseConstantWeight, ScaledWeight, WeightBounds};
