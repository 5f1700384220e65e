use std::path::PathBuf;

use liyau_core::liyau_verifier::{verify_trajectory, VerifyOptions};
use liyau_core::param_engine::{select_params, LiYauParameters, Policy, ProblemSpec};
use liyau_core::pde_solver::{evolve, read_trajectory, GridMode, Trajectory};
use serde::Serialize;

use super::run::resolve;
use crate::cli::VerifyArgs;
use crate::config::{load_optional, RealList, RunConfig};
use crate::error::{CliError, CliResult, EXIT_BLOWUP, EXIT_CERTIFICATION, EXIT_OK};
use crate::output::{json, write_file};

#[derive(Serialize)]
struct VerifySummary {
    schema: &'static str,
    kind: &'static str,
    passed: bool,
    blowup_in_windows: bool,
    windows: Vec<f64>,
    epsilon: Vec<Option<f64>>,
    outputs: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Formats {
    json: bool,
    csv: bool,
    plot: bool,
}

fn parse_formats(s: &str) -> CliResult<Formats> {
    let mut f = Formats::default();
    for item in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item {
            "json" => f.json = true,
            "csv" => f.csv = true,
            "plot" => f.plot = true,
            other => return Err(CliError::usage(format!("unknown output format '{other}' (json, csv, plot)"))),
        }
    }
    Ok(f)
}

fn parameters(n: u32, p: f64, alpha: Option<f64>, policy: Policy) -> CliResult<LiYauParameters> {
    let spec = ProblemSpec::new(n, p)?;
    Ok(match alpha {
        Some(a) => LiYauParameters::from_alpha(&spec, a)?,
        None => select_params(&spec, policy)?.params,
    })
}

/// How the trajectory will be obtained once everything has been validated.
enum Source {
    Manifest(Trajectory),
    Inline(super::run::ResolvedRun),
}

pub fn run(args: VerifyArgs) -> CliResult<u8> {
    let cfg: RunConfig = load_optional(args.config.as_deref())?;
    let windows = cfg.pick::<RealList>(args.windows, "windows")?.map(|l| l.0).unwrap_or_else(|| vec![1.0, 2.0, 4.0]);
    if windows.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(CliError::usage(format!("windows {windows:?} must be positive")));
    }
    let t_final_offset = cfg.pick(args.t_final_offset, "t_final_offset")?.unwrap_or(1.0);
    if !(t_final_offset.is_finite() && t_final_offset >= 0.0) {
        return Err(CliError::usage("t_final_offset must be finite and >= 0"));
    }
    let identity_residual = args.identity_residual || cfg.get::<bool>("identity_residual")?.unwrap_or(false);
    let policy = cfg.pick(args.policy, "policy")?.unwrap_or_default();
    let alpha = cfg.pick(args.alpha, "alpha")?;
    let out_dir = cfg.pick::<PathBuf>(args.out_dir, "out_dir")?.unwrap_or_else(|| PathBuf::from("liyau_out"));
    let formats = parse_formats(&cfg.pick(args.formats, "formats")?.unwrap_or_else(|| "json,csv,plot".into()))?;
    let manifest = cfg.pick::<PathBuf>(args.manifest, "manifest")?;

    let (source, n, p, grid) = match manifest {
        Some(path) => {
            let traj = read_trajectory(&path).map_err(CliError::usage)?;
            let grid = *traj.grid();
            let n = match grid.mode {
                GridMode::Radial => grid.dims_effective(),
                GridMode::PeriodicBox => cfg.pick(args.run.n, "n")?.unwrap_or(3),
            };
            let p = traj.p();
            (Source::Manifest(traj), n, p, grid)
        }
        None => {
            let run = resolve(&args.run, &cfg)?;
            let (n, p, grid) = (run.n, run.p, run.grid);
            (Source::Inline(run), n, p, grid)
        }
    };
    if identity_residual && grid.mode == GridMode::PeriodicBox && grid.dims != 1 {
        return Err(CliError::usage("the identity residual needs a radial or one-dimensional grid"));
    }
    let params = parameters(n, p, alpha, policy)?;

    let traj = match source {
        Source::Manifest(t) => t,
        Source::Inline(run) => {
            let u0 = run.init.sample(&run.grid).map_err(CliError::usage)?;
            evolve(u0, run.grid, run.p, &run.options(&windows)).map_err(CliError::usage)?
        }
    };
    let options = VerifyOptions { windows: windows.clone(), t_final_offset, identity_residual };
    let report = verify_trajectory(&traj, &params, &options).map_err(CliError::usage)?;

    let mut outputs = Vec::new();
    let mut put = |name: &str, body: String| -> CliResult<()> {
        let path = out_dir.join(name);
        write_file(&path, &body)?;
        outputs.push(path.display().to_string());
        Ok(())
    };
    if formats.json {
        put("verification_report.json", json(&report)?)?;
    }
    if formats.csv {
        put("margins.csv", report.margins_csv())?;
    }
    if formats.plot {
        put("defect.dat", report.defect_plot_data())?;
    }
    let trend = report.trend.as_ref();
    let summary = VerifySummary {
        schema: liyau_core::SCHEMA,
        kind: "verify_summary",
        passed: report.verdicts.passed,
        blowup_in_windows: report.verdicts.blowup_in_windows,
        windows: trend.map(|t| t.windows.iter().map(|w| w.window).collect()).unwrap_or_default(),
        epsilon: trend.map(|t| t.windows.iter().map(|w| w.epsilon).collect()).unwrap_or_default(),
        outputs,
    };
    print!("{}", json(&summary)?);
    if report.verdicts.blowup_in_windows {
        eprintln!("blow-up inside the verification windows; partial report written");
        return Ok(EXIT_BLOWUP);
    }
    if !report.verdicts.passed {
        eprintln!("verification failed: {:?}", report.verdicts);
        return Ok(EXIT_CERTIFICATION);
    }
    Ok(EXIT_OK)
}
