//! Verification laboratory for the Li-Yau-type estimate
//! `u u_t >= C1 |∇u|^2 + C2 u^(p+1)` satisfied by nonnegative ancient
//! solutions of the subcritical semilinear heat equation `u_t = Δu + u^p`.
//!
//! The crate is split along the four pieces of the laboratory:
//!
//! - [`param_engine`]: closed-form admissible parameters, the quadratic-form
//!   matrix and its positivity certificates.
//! - [`jet_algebra`]: an exact differential-polynomial rewriting engine that
//!   re-derives the Bochner-type computation behind the estimate.
//! - [`pde_solver`]: explicit finite-difference evolution on periodic boxes and
//!   radial profiles in arbitrary dimension.
//! - [`liyau_verifier`]: evaluation of the inequality, the auxiliary function
//!   and the decay bound on exact and simulated solutions.

// `!(x > y)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod format;
pub mod jet_algebra;
pub mod liyau_verifier;
pub mod param_engine;
pub mod pde_solver;

/// Top-level schema tag carried by every JSON document this crate emits.
pub const SCHEMA: &str = "liyau-report/1";
