//! Resolution of the shared evolution settings from flags and config.

use liyau_core::pde_solver::{EvolveOptions, GridSpec, InitialData, SnapshotSchedule};

use crate::cli::{Family, Mode, RunArgs};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct ResolvedRun {
    /// Dimension for parameter selection (the radial drift dimension in radial mode).
    pub n: u32,
    pub p: f64,
    pub grid: GridSpec,
    pub init: InitialData,
    pub t_end: f64,
    pub snapshot_every: f64,
    pub blowup_threshold: f64,
}

impl ResolvedRun {
    pub fn options(&self, extra_times: &[f64]) -> EvolveOptions {
        let t_end = extra_times.iter().copied().fold(self.t_end, f64::max);
        let count = (t_end / self.snapshot_every + 1e-9).floor() as usize;
        let mut times: Vec<f64> = (1..=count).map(|k| k as f64 * self.snapshot_every).collect();
        times.extend_from_slice(extra_times);
        let mut opts = EvolveOptions::new(t_end, SnapshotSchedule::At(times));
        opts.blowup_threshold = self.blowup_threshold;
        opts
    }
}

pub fn resolve(run: &RunArgs, cfg: &RunConfig) -> CliResult<ResolvedRun> {
    let n = cfg.pick(run.n, "n")?.unwrap_or(3);
    let p = cfg.pick(run.p, "p")?.unwrap_or(2.0);
    let mode = cfg.pick::<Mode>(run.mode, "mode")?.unwrap_or_default();
    let dims = cfg.pick(run.dims, "dims")?.unwrap_or(1);
    let points = cfg.pick(run.points, "points")?.unwrap_or(200);
    let length = cfg.pick(run.length, "length")?.unwrap_or(20.0);
    let family = cfg.pick::<Family>(run.init, "init")?.unwrap_or_default();
    let value = cfg.pick(run.value, "value")?.unwrap_or(1.0);
    let amplitude = cfg.pick(run.amplitude, "amplitude")?.unwrap_or(0.3);
    let floor = cfg.pick(run.floor, "floor")?.unwrap_or(0.1);
    let width = cfg.pick(run.width, "width")?.unwrap_or(2.0);
    let t_end = cfg.pick(run.t_end, "t_end")?.unwrap_or(4.0);
    let snapshot_every = cfg.pick(run.snapshot_every, "snapshot_every")?.unwrap_or(0.5);
    let blowup_threshold = cfg.pick(run.blowup_threshold, "blowup_threshold")?.unwrap_or(1e6);

    if n < 3 {
        return Err(CliError::usage(format!("n = {n} must be at least 3")));
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(CliError::usage(format!("p = {p} must exceed 1")));
    }
    let grid = match mode {
        Mode::Radial => GridSpec::radial(n, points, length),
        Mode::Box => GridSpec::periodic_box(dims, points, length),
    }
    .map_err(CliError::usage)?;
    let init = match family {
        Family::Zero => InitialData::Zero,
        Family::Constant => InitialData::Constant { value },
        Family::Gaussian => InitialData::Gaussian { amplitude, width },
        Family::GaussianFloor => InitialData::GaussianOverFloor { floor, amplitude, width },
    };
    init.validate().map_err(CliError::usage)?;
    let resolved = ResolvedRun { n, p, grid, init, t_end, snapshot_every, blowup_threshold };
    resolved.options(&[]).validate().map_err(CliError::usage)?;
    if !(snapshot_every.is_finite() && snapshot_every > 0.0) {
        return Err(CliError::usage(format!("snapshot_every = {snapshot_every} must be positive")));
    }
    Ok(resolved)
}
