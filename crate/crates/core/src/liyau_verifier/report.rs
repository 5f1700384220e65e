use serde::Serialize;

use super::decay::{decay_bound, decay_bound_check, DecayCheck};
use super::fields::{phi_q_relation_error, q_field};
use super::residual::identity_residual_numeric;
use super::trend::{ancient_defect_trend, TrendRecord};
use super::VerifyError;
use crate::format::fmt_sig;
use crate::param_engine::{LiYauParameters, ProblemSpec};
use crate::pde_solver::{Trajectory, TrajectoryStatus};

/// Relative tolerance of the pointwise φ = −αQ/u² relation.
pub const PHI_Q_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeRecord {
    pub t: f64,
    /// `t` re-anchored so the last snapshot sits at −t_final_offset.
    pub t_rel: f64,
    pub min_q: f64,
    pub normalizer: f64,
    pub epsilon: f64,
    pub u_max: f64,
    pub decay_bound: Option<f64>,
    pub decay_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdicts {
    pub phi_q_consistent: bool,
    pub trend_nonincreasing: Option<bool>,
    pub decay_bound: Option<bool>,
    pub blowup_in_windows: bool,
    pub clipping_within_tolerance: bool,
    /// Everything that is asserted (not merely reported) holds.
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub spec: ProblemSpec,
    pub params: LiYauParameters,
    pub trajectory_status: TrajectoryStatus,
    pub records: Vec<TimeRecord>,
    pub trend: Option<TrendRecord>,
    pub decay: DecayCheck,
    pub phi_q_max_relative_error: f64,
    pub identity_residual: Option<f64>,
    pub max_boundary_ratio: f64,
    pub verdicts: Verdicts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub windows: Vec<f64>,
    pub t_final_offset: f64,
    pub identity_residual: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { windows: vec![1.0, 2.0, 4.0], t_final_offset: 1.0, identity_residual: false }
    }
}

pub fn verify_trajectory(
    traj: &Trajectory,
    params: &LiYauParameters,
    options: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    traj.check_invariants().map_err(|e| VerifyError::Trajectory(e.to_string()))?;
    let decay = decay_bound_check(traj, params, options.t_final_offset);
    let mut phi_q: f64 = 0.0;
    let mut records = Vec::with_capacity(traj.snapshots.len());
    for (s, d) in traj.snapshots.iter().zip(&decay.entries) {
        let q = q_field(s, params)?;
        phi_q = phi_q.max(phi_q_relation_error(s, params)?);
        records.push(TimeRecord {
            t: s.t,
            t_rel: d.t,
            min_q: q.min_q,
            normalizer: q.normalizer,
            epsilon: q.normalized_defect(),
            u_max: d.u_max,
            decay_bound: decay_bound(params, d.t),
            decay_holds: d.holds,
        });
    }
    let trend = if options.windows.is_empty() { None } else { Some(ancient_defect_trend(traj, params, &options.windows)?) };
    let identity_residual = if options.identity_residual { Some(identity_residual_numeric(traj, params)?) } else { None };
    let blowup_in_windows = trend.as_ref().is_some_and(|t| t.any_blowup);
    let trend_nonincreasing = trend.as_ref().map(|t| t.nonincreasing);
    let phi_q_consistent = phi_q <= PHI_Q_TOL;
    let clipping = traj.clip_within_tolerance();
    let passed = phi_q_consistent
        && trend_nonincreasing.unwrap_or(true)
        && decay.verdict.unwrap_or(true)
        && !blowup_in_windows
        && clipping;
    Ok(VerificationReport {
        schema: crate::SCHEMA,
        kind: "verification_report",
        spec: params.spec,
        params: *params,
        trajectory_status: traj.status,
        records,
        trend,
        verdicts: Verdicts {
            phi_q_consistent,
            trend_nonincreasing,
            decay_bound: decay.verdict,
            blowup_in_windows,
            clipping_within_tolerance: clipping,
            passed,
        },
        decay,
        phi_q_max_relative_error: phi_q,
        identity_residual,
        max_boundary_ratio: traj.max_boundary_ratio,
    })
}

impl VerificationReport {
    /// Per-time margin table.
    pub fn margins_csv(&self) -> String {
        let mut out = String::from("t,t_rel,min_q,normalizer,epsilon,u_max,decay_bound,decay_holds\n");
        for r in &self.records {
            let bound = r.decay_bound.map(fmt_sig).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fmt_sig(r.t),
                fmt_sig(r.t_rel),
                fmt_sig(r.min_q),
                fmt_sig(r.normalizer),
                fmt_sig(r.epsilon),
                fmt_sig(r.u_max),
                bound,
                r.decay_holds
            ));
        }
        out
    }

    /// Two whitespace-separated columns: window and ε for every evaluated window.
    pub fn defect_plot_data(&self) -> String {
        let mut out = String::from("# window epsilon\n");
        if let Some(trend) = &self.trend {
            for w in &trend.windows {
                if let Some(e) = w.epsilon {
                    out.push_str(&format!("{} {}\n", fmt_sig(w.window), fmt_sig(e)));
                }
            }
        }
        out
    }
}
