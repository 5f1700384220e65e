use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use super::stencil::laplacian_into;
use super::SolverError;

pub const SAFETY: f64 = 0.4;
pub const REACTION_EPS: f64 = 1e-12;
pub const DEFAULT_BLOWUP_THRESHOLD: f64 = 1e6;
pub const DT_FLOOR: f64 = 1e-14;
/// Clipped negative mass tolerated relative to the total mass.
pub const CLIP_TOLERANCE: f64 = 1e-10;
/// Times closer than this to a scheduled snapshot count as hitting it.
const TIME_EPS: f64 = 1e-12;

/// The field at one instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSnapshot {
    pub t: f64,
    pub field: Vec<f64>,
    pub grid: GridSpec,
    pub p: f64,
}

impl SolutionSnapshot {
    pub fn new(t: f64, field: Vec<f64>, grid: GridSpec, p: f64) -> Result<Self, SolverError> {
        grid.validate()?;
        if field.len() != grid.node_count() {
            return Err(SolverError::FieldLength { expected: grid.node_count(), got: field.len() });
        }
        if let Some(v) = field.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(SolverError::NegativeData(*v));
        }
        if !(p.is_finite() && p > 1.0) {
            return Err(SolverError::InvalidExponent(p));
        }
        Ok(Self { t, field, grid, p })
    }

    pub fn max(&self) -> f64 {
        self.field.iter().copied().fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.field.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sum(&self) -> f64 {
        self.field.iter().sum()
    }

    /// |u_N − u_{N−1}| / max u at the outer radial boundary; 0 in box mode.
    pub fn boundary_ratio(&self) -> f64 {
        if !self.grid.is_radial() {
            return 0.0;
        }
        let n = self.field.len();
        let max = self.max();
        if max == 0.0 {
            return 0.0;
        }
        (self.field[n - 1] - self.field[n - 2]).abs() / max
    }
}

/// Δ_h u + u^p, with u^p read as max(u, 0)^p.
pub fn rhs(grid: &GridSpec, p: f64, u: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; u.len()];
    rhs_into(grid, p, u, &mut out);
    out
}

fn rhs_into(grid: &GridSpec, p: f64, u: &[f64], out: &mut [f64]) {
    laplacian_into(grid, u, out);
    for (o, v) in out.iter_mut().zip(u) {
        *o += v.max(0.0).powf(p);
    }
}

/// The diffusive cap h²/(2·dims_effective), before the safety factor.
pub fn diffusive_cap(grid: &GridSpec) -> f64 {
    let h = grid.spacing();
    h * h / (2.0 * grid.dims_effective() as f64)
}

pub fn stable_dt_for(grid: &GridSpec, p: f64, max_u: f64) -> f64 {
    let reaction = 1.0 / (p * max_u.max(0.0).powf(p - 1.0) + REACTION_EPS);
    SAFETY * diffusive_cap(grid).min(reaction)
}

pub fn stable_dt(s: &SolutionSnapshot) -> f64 {
    stable_dt_for(&s.grid, s.p, s.max())
}

/// Workspace for repeated midpoint steps without reallocation.
struct Stepper {
    grid: GridSpec,
    p: f64,
    k: Vec<f64>,
    half: Vec<f64>,
}

impl Stepper {
    fn new(grid: GridSpec, p: f64) -> Self {
        let n = grid.node_count();
        Self { grid, p, k: vec![0.0; n], half: vec![0.0; n] }
    }

    /// One explicit midpoint step in place. Returns the clipped negative mass.
    fn advance(&mut self, u: &mut [f64], dt: f64) -> f64 {
        rhs_into(&self.grid, self.p, u, &mut self.k);
        for ((h, v), k) in self.half.iter_mut().zip(u.iter()).zip(&self.k) {
            *h = v + 0.5 * dt * k;
        }
        rhs_into(&self.grid, self.p, &self.half, &mut self.k);
        let mut clipped = 0.0;
        for (v, k) in u.iter_mut().zip(&self.k) {
            *v += dt * k;
            if *v < 0.0 {
                clipped -= *v;
                *v = 0.0;
            }
        }
        clipped
    }
}

/// Single midpoint step, rejected when `dt` exceeds [`stable_dt`].
pub fn step(s: &SolutionSnapshot, dt: f64) -> Result<SolutionSnapshot, SolverError> {
    let limit = stable_dt(s);
    if !(dt > 0.0 && dt <= limit * (1.0 + 1e-12)) {
        return Err(SolverError::UnstableStep { dt, limit });
    }
    let mut field = s.field.clone();
    Stepper::new(s.grid, s.p).advance(&mut field, dt);
    Ok(SolutionSnapshot { t: s.t + dt, field, grid: s.grid, p: s.p })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnapshotSchedule {
    /// Every `dt` time units after the start.
    Every(f64),
    /// At the given times, measured from the start.
    At(Vec<f64>),
}

impl SnapshotSchedule {
    fn times(&self, t_end: f64) -> Vec<f64> {
        let mut out = match self {
            SnapshotSchedule::Every(dt) => {
                let count = (t_end / dt + 1e-9).floor() as usize;
                (1..=count).map(|k| k as f64 * dt).collect::<Vec<_>>()
            }
            SnapshotSchedule::At(ts) => ts.iter().copied().filter(|t| *t > 0.0 && *t <= t_end).collect(),
        };
        out.sort_by(f64::total_cmp);
        out.dedup();
        if out.last().is_none_or(|t| (t_end - t).abs() > TIME_EPS) {
            out.push(t_end);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveOptions {
    pub t_end: f64,
    pub schedule: SnapshotSchedule,
    pub blowup_threshold: f64,
}

impl EvolveOptions {
    pub fn new(t_end: f64, schedule: SnapshotSchedule) -> Self {
        Self { t_end, schedule, blowup_threshold: DEFAULT_BLOWUP_THRESHOLD }
    }

    pub fn every(t_end: f64, snapshot_every: f64) -> Self {
        Self::new(t_end, SnapshotSchedule::Every(snapshot_every))
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |why: String| Err(SolverError::InvalidOptions(why));
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return bad(format!("t_end = {} must be positive", self.t_end));
        }
        if !(self.blowup_threshold.is_finite() && self.blowup_threshold > 0.0) {
            return bad(format!("blowup_threshold = {} must be positive", self.blowup_threshold));
        }
        match &self.schedule {
            SnapshotSchedule::Every(dt) if !(dt.is_finite() && *dt > 0.0) => {
                bad(format!("snapshot interval {dt} must be positive"))
            }
            SnapshotSchedule::At(ts) if ts.iter().any(|t| !t.is_finite()) => bad("non-finite snapshot time".into()),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryStatus {
    Completed,
    BlowupDetected,
    StepUnderflow,
}

/// Time-ordered snapshots of one run plus run diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub snapshots: Vec<SolutionSnapshot>,
    pub status: TrajectoryStatus,
    pub steps: usize,
    /// Time at which max u first reached the threshold.
    pub blowup_time: Option<f64>,
    pub clipped_mass: f64,
    /// Largest clipped mass of a single step relative to the field's total mass.
    pub max_clip_fraction: f64,
    /// Largest [`SolutionSnapshot::boundary_ratio`] over recorded snapshots.
    pub max_boundary_ratio: f64,
}

impl Trajectory {
    pub fn grid(&self) -> &GridSpec {
        &self.snapshots[0].grid
    }

    pub fn p(&self) -> f64 {
        self.snapshots[0].p
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.t).collect()
    }

    pub fn first(&self) -> &SolutionSnapshot {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &SolutionSnapshot {
        self.snapshots.last().expect("trajectories hold at least the initial snapshot")
    }

    pub fn clip_within_tolerance(&self) -> bool {
        self.max_clip_fraction <= CLIP_TOLERANCE
    }

    /// Snapshot recorded at time `t` (to within 1e−9), if any.
    pub fn at_time(&self, t: f64) -> Option<&SolutionSnapshot> {
        self.snapshots.iter().find(|s| (s.t - t).abs() <= 1e-9 * t.abs().max(1.0))
    }

    /// Checks strictly increasing times and a uniform grid and exponent.
    pub fn check_invariants(&self) -> Result<(), SolverError> {
        if self.snapshots.is_empty() {
            return Err(SolverError::EmptyTrajectory);
        }
        let g = self.grid();
        let p = self.p();
        for w in self.snapshots.windows(2) {
            if !(w[1].t > w[0].t) {
                return Err(SolverError::InconsistentTrajectory(format!("times {} then {}", w[0].t, w[1].t)));
            }
        }
        if self.snapshots.iter().any(|s| s.grid != *g || s.p != p || s.field.len() != g.node_count()) {
            return Err(SolverError::InconsistentTrajectory("grid or exponent changes between snapshots".into()));
        }
        Ok(())
    }
}

/// Evolves `u0` from t = 0.
pub fn evolve(u0: Vec<f64>, grid: GridSpec, p: f64, options: &EvolveOptions) -> Result<Trajectory, SolverError> {
    evolve_from(SolutionSnapshot::new(0.0, u0, grid, p)?, options)
}

/// Evolves an existing snapshot for `options.t_end` time units; snapshot times
/// in the schedule are relative to `start.t`.
pub fn evolve_from(start: SolutionSnapshot, options: &EvolveOptions) -> Result<Trajectory, SolverError> {
    options.validate()?;
    let SolutionSnapshot { t: t0, field, grid, p } = start;
    let mut stepper = Stepper::new(grid, p);
    let targets = options.schedule.times(options.t_end);
    let mut u = field;
    let mut elapsed = 0.0;
    let mut steps = 0;
    let mut clipped_mass = 0.0;
    let mut max_clip_fraction: f64 = 0.0;
    let mut snapshots = vec![SolutionSnapshot { t: t0, field: u.clone(), grid, p }];
    let mut status = TrajectoryStatus::Completed;
    let mut blowup_time = None;
    let mut max_u = u.iter().copied().fold(0.0, f64::max);

    'targets: for &target in &targets {
        while elapsed < target - TIME_EPS {
            if max_u >= options.blowup_threshold {
                status = TrajectoryStatus::BlowupDetected;
                blowup_time = Some(t0 + elapsed);
                break 'targets;
            }
            let dt_stable = stable_dt_for(&grid, p, max_u);
            if dt_stable < DT_FLOOR {
                status = TrajectoryStatus::StepUnderflow;
                break 'targets;
            }
            let remaining = target - elapsed;
            let (dt, hit) = if dt_stable >= remaining { (remaining, true) } else { (dt_stable, false) };
            let clipped = stepper.advance(&mut u, dt);
            steps += 1;
            if clipped > 0.0 {
                clipped_mass += clipped;
                let total: f64 = u.iter().sum();
                max_clip_fraction = max_clip_fraction.max(if total > 0.0 { clipped / total } else { f64::INFINITY });
            }
            elapsed = if hit { target } else { elapsed + dt };
            max_u = u.iter().copied().fold(0.0, f64::max);
            if !max_u.is_finite() {
                status = TrajectoryStatus::BlowupDetected;
                blowup_time = Some(t0 + elapsed);
                break 'targets;
            }
        }
        snapshots.push(SolutionSnapshot { t: t0 + target, field: u.clone(), grid, p });
    }
    if status == TrajectoryStatus::Completed && max_u >= options.blowup_threshold {
        status = TrajectoryStatus::BlowupDetected;
        blowup_time = Some(t0 + elapsed);
    }
    if status != TrajectoryStatus::Completed {
        let t = t0 + elapsed;
        if snapshots.last().is_some_and(|s| t > s.t) && u.iter().all(|v| v.is_finite()) {
            snapshots.push(SolutionSnapshot { t, field: u, grid, p });
        }
    }
    let max_boundary_ratio = snapshots.iter().map(SolutionSnapshot::boundary_ratio).fold(0.0, f64::max);
    Ok(Trajectory { snapshots, status, steps, blowup_time, clipped_mass, max_clip_fraction, max_boundary_ratio })
}
