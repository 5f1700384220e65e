//! The spatially homogeneous family u = κ(T₀ − t)^(−1/(p−1)).

use super::grid::GridSpec;
use super::evolve::{SolutionSnapshot, Trajectory, TrajectoryStatus};
use super::SolverError;

/// κ(p) = (p − 1)^(−1/(p−1)).
pub fn kappa(p: f64) -> f64 {
    (p - 1.0).powf(-1.0 / (p - 1.0))
}

fn check(p: f64, t0: f64, t: f64) -> Result<(), SolverError> {
    if !(p.is_finite() && p > 1.0) {
        return Err(SolverError::InvalidExponent(p));
    }
    if !(t < t0) {
        return Err(SolverError::NotBeforeBlowup { t, t0 });
    }
    Ok(())
}

pub fn exact_homogeneous(p: f64, t0: f64, t: f64) -> Result<f64, SolverError> {
    check(p, t0, t)?;
    Ok(kappa(p) * (t0 - t).powf(-1.0 / (p - 1.0)))
}

/// ∂_t of [`exact_homogeneous`], κ/(p−1)·(T₀ − t)^(−p/(p−1)).
pub fn exact_homogeneous_dt(p: f64, t0: f64, t: f64) -> Result<f64, SolverError> {
    check(p, t0, t)?;
    Ok(kappa(p) / (p - 1.0) * (t0 - t).powf(-p / (p - 1.0)))
}

/// Blow-up time of the homogeneous solution through the value `c` at time `t`.
pub fn blowup_time_from(p: f64, c: f64, t: f64) -> f64 {
    t + (c / kappa(p)).powf(-(p - 1.0))
}

/// Snapshots of the exact family sampled on `grid` at `times` (all before `t0`).
pub fn exact_trajectory(grid: GridSpec, p: f64, t0: f64, times: &[f64]) -> Result<Trajectory, SolverError> {
    let snapshots = times
        .iter()
        .map(|&t| {
            let u = exact_homogeneous(p, t0, t)?;
            SolutionSnapshot::new(t, vec![u; grid.node_count()], grid, p)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tr = Trajectory {
        snapshots,
        status: TrajectoryStatus::Completed,
        steps: 0,
        blowup_time: None,
        clipped_mass: 0.0,
        max_clip_fraction: 0.0,
        max_boundary_ratio: 0.0,
    };
    tr.check_invariants()?;
    Ok(tr)
}
