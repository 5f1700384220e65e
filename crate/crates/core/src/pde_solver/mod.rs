//! Explicit finite differences for u_t = Δu + u^p.
//!
//! Periodic boxes in 1–3 dimensions and radial profiles in any dimension
//! n ≥ 3, advanced with the explicit midpoint rule under an adaptive step that
//! respects both the diffusive limit and the reaction time scale.

pub mod evolve;
pub mod exact;
pub mod grid;
pub mod initial;
pub mod io;
pub mod stencil;

use thiserror::Error;

pub use evolve::{
    evolve, evolve_from, rhs, stable_dt, step, EvolveOptions, SnapshotSchedule, SolutionSnapshot, Trajectory,
    TrajectoryStatus, DEFAULT_BLOWUP_THRESHOLD,
};
pub use exact::{exact_homogeneous, exact_homogeneous_dt, exact_trajectory, kappa};
pub use grid::{GridMode, GridSpec};
pub use initial::InitialData;
pub use io::{read_trajectory, write_trajectory, Manifest};
pub use stencil::{discrete_laplacian, gradient_squared};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("exponent p = {0} must exceed 1")]
    InvalidExponent(f64),
    #[error("field has {got} values, grid has {expected} nodes")]
    FieldLength { expected: usize, got: usize },
    #[error("initial data must be finite and nonnegative, found {0}")]
    NegativeData(f64),
    #[error("step dt = {dt:e} exceeds the stable limit {limit:e}")]
    UnstableStep { dt: f64, limit: f64 },
    #[error("t = {t} is not before the blow-up time T0 = {t0}")]
    NotBeforeBlowup { t: f64, t0: f64 },
    #[error("trajectory has no snapshots")]
    EmptyTrajectory,
    #[error("inconsistent trajectory: {0}")]
    InconsistentTrajectory(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed snapshot data: {0}")]
    Format(String),
}
