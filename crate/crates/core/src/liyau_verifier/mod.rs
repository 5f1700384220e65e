//! Evaluation of the Li-Yau inequality, the auxiliary function φ and the
//! decay bound on exact and simulated solutions.

pub mod decay;
pub mod fields;
pub mod report;
pub mod residual;
pub mod trend;

use thiserror::Error;

pub use decay::{decay_bound, decay_bound_check, DecayCheck, DecayEntry};
pub use fields::{phi_field, phi_q_relation_error, profile_jets, q_field, Jets, PhiField, QField, PHI_MASK};
pub use report::{verify_trajectory, TimeRecord, VerificationReport, Verdicts, VerifyOptions};
pub use residual::{identity_residual_between, identity_residual_numeric};
pub use trend::{ancient_defect_trend, TrendRecord, WindowRecord, WindowStatus, TREND_SLACK};

use crate::param_engine::LiYauParameters;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("snapshot exponent p = {snapshot} differs from the parameters' p = {params}")]
    ExponentMismatch { snapshot: f64, params: f64 },
    #[error("every node of the snapshot at t = {t} has u <= 1e-8; phi is undefined there")]
    FullyMasked { t: f64 },
    #[error("need at least two snapshots, found {0}")]
    InsufficientSnapshots(usize),
    #[error("jets need a radial or one-dimensional grid, found {0}")]
    UnsupportedGrid(String),
    #[error("invalid windows {0}: need positive elapsed times")]
    InvalidWindows(String),
    #[error("invalid trajectory: {0}")]
    Trajectory(String),
}

/// Q on the homogeneous family, (1 − C2)c^{p+1}, evaluated analytically.
pub fn homogeneous_q(params: &LiYauParameters, c: f64) -> f64 {
    (1.0 - params.c2) * c.powf(params.spec.p + 1.0)
}

/// φ on the homogeneous family, (γ − α)c^{p−1}.
pub fn homogeneous_phi(params: &LiYauParameters, c: f64) -> f64 {
    (params.gamma - params.alpha) * c.powf(params.spec.p - 1.0)
}
