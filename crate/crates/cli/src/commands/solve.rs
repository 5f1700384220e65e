use std::path::PathBuf;

use liyau_core::pde_solver::{evolve, write_trajectory, TrajectoryStatus};
use serde::Serialize;

use super::run::resolve;
use crate::cli::SolveArgs;
use crate::config::load_optional;
use crate::error::{CliError, CliResult, EXIT_OK};
use crate::output::json;

#[derive(Serialize)]
struct SolveSummary {
    schema: &'static str,
    kind: &'static str,
    status: TrajectoryStatus,
    blowup_time: Option<f64>,
    final_time: f64,
    final_max: f64,
    steps: usize,
    snapshots: usize,
    clipped_mass: f64,
    max_boundary_ratio: f64,
    manifest: String,
}

pub fn run(args: SolveArgs) -> CliResult<u8> {
    let cfg = load_optional(args.config.as_deref())?;
    let run = resolve(&args.run, &cfg)?;
    let out_dir = cfg.pick::<PathBuf>(args.out_dir, "out_dir")?.unwrap_or_else(|| PathBuf::from("liyau_out"));
    let u0 = run.init.sample(&run.grid).map_err(CliError::usage)?;
    let traj = evolve(u0, run.grid, run.p, &run.options(&[])).map_err(CliError::usage)?;
    let manifest = write_trajectory(&traj, &out_dir).map_err(CliError::io)?;
    let summary = SolveSummary {
        schema: liyau_core::SCHEMA,
        kind: "solve_summary",
        status: traj.status,
        blowup_time: traj.blowup_time,
        final_time: traj.last().t,
        final_max: traj.last().max(),
        steps: traj.steps,
        snapshots: traj.snapshots.len(),
        clipped_mass: traj.clipped_mass,
        max_boundary_ratio: traj.max_boundary_ratio,
        manifest: manifest.display().to_string(),
    };
    print!("{}", json(&summary)?);
    Ok(EXIT_OK)
}
