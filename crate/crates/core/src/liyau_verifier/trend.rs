use serde::Serialize;

use super::fields::q_field;
use super::VerifyError;
use crate::param_engine::LiYauParameters;
use crate::pde_solver::{SolutionSnapshot, Trajectory};

pub const TREND_SLACK: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowStatus {
    Evaluated,
    /// The run blew up before the window closed.
    BlowupInWindow,
    /// No snapshot was recorded at the window's end.
    MissingSnapshot,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowRecord {
    pub window: f64,
    pub status: WindowStatus,
    pub epsilon: Option<f64>,
    pub min_q: Option<f64>,
    pub normalizer: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendRecord {
    pub windows: Vec<WindowRecord>,
    pub slack: f64,
    /// ε(T_{k+1}) ≤ ε(T_k) + slack over consecutive evaluated windows.
    pub nonincreasing: bool,
    pub any_blowup: bool,
}

/// ε at every requested elapsed window, read off the snapshots of a single
/// run from the shared initial data (the equation is autonomous, so the
/// snapshot at start + T is the final state of a run of length T).
pub fn ancient_defect_trend(
    traj: &Trajectory,
    params: &LiYauParameters,
    windows: &[f64],
) -> Result<TrendRecord, VerifyError> {
    if windows.is_empty() || windows.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(VerifyError::InvalidWindows(format!("{windows:?}")));
    }
    let mut sorted = windows.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let start = traj.first().t;
    let mut records = Vec::with_capacity(sorted.len());
    for &w in &sorted {
        let t = start + w;
        let blew_up = traj.blowup_time.is_some_and(|tb| tb <= t + 1e-12);
        let rec = match (blew_up, traj.at_time(t)) {
            (true, _) => WindowRecord { window: w, status: WindowStatus::BlowupInWindow, epsilon: None, min_q: None, normalizer: None },
            (false, None) => WindowRecord { window: w, status: WindowStatus::MissingSnapshot, epsilon: None, min_q: None, normalizer: None },
            (false, Some(s)) => evaluated(w, s, params)?,
        };
        records.push(rec);
    }
    let eps: Vec<f64> = records.iter().filter_map(|r| r.epsilon).collect();
    let nonincreasing = eps.windows(2).all(|e| e[1] <= e[0] + TREND_SLACK);
    let any_blowup = records.iter().any(|r| r.status == WindowStatus::BlowupInWindow);
    Ok(TrendRecord { windows: records, slack: TREND_SLACK, nonincreasing, any_blowup })
}

fn evaluated(window: f64, s: &SolutionSnapshot, params: &LiYauParameters) -> Result<WindowRecord, VerifyError> {
    let q = q_field(s, params)?;
    Ok(WindowRecord {
        window,
        status: WindowStatus::Evaluated,
        epsilon: Some(q.normalized_defect()),
        min_q: Some(q.min_q),
        normalizer: Some(q.normalizer),
    })
}
