use serde::Serialize;

use crate::param_engine::LiYauParameters;
use crate::pde_solver::Trajectory;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayEntry {
    /// Snapshot time re-anchored so the last snapshot sits at −t_final_offset.
    pub t: f64,
    pub u_max: f64,
    /// C3(−t)^(−1/(p−1)); `None` (no bound) for t ≥ 0.
    pub bound: Option<f64>,
    pub margin: Option<f64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayCheck {
    pub entries: Vec<DecayEntry>,
    pub all_hold: bool,
    /// Every snapshot is spatially constant.
    pub homogeneous: bool,
    /// `Some(all_hold)` on homogeneous data, where the bound must hold;
    /// `None` for general data, whose margins are informational.
    pub verdict: Option<bool>,
}

/// Relative spread below which a snapshot counts as spatially constant.
const HOMOGENEITY_TOL: f64 = 1e-12;

pub fn decay_bound(params: &LiYauParameters, t: f64) -> Option<f64> {
    (t < 0.0).then(|| params.c3 * (-t).powf(-1.0 / (params.spec.p - 1.0)))
}

pub fn decay_bound_check(traj: &Trajectory, params: &LiYauParameters, t_final_offset: f64) -> DecayCheck {
    let shift = traj.last().t + t_final_offset;
    let mut homogeneous = true;
    let entries: Vec<DecayEntry> = traj
        .snapshots
        .iter()
        .map(|s| {
            let (max, min) = (s.max(), s.min());
            homogeneous &= max - min <= HOMOGENEITY_TOL * max;
            let t = s.t - shift;
            let bound = decay_bound(params, t);
            let margin = bound.map(|b| b - max);
            DecayEntry { t, u_max: max, bound, margin, holds: margin.is_none_or(|m| m >= 0.0) }
        })
        .collect();
    let all_hold = entries.iter().all(|e| e.holds);
    DecayCheck { entries, all_hold, homogeneous, verdict: homogeneous.then_some(all_hold) }
}
