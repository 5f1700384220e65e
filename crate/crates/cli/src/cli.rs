use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use liyau_core::param_engine::Policy;

use crate::config::{DimList, RealList};

#[derive(Debug, Parser)]
#[command(name = "liyau", version, about = "Li-Yau estimate laboratory for u_t = Δu + u^p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible parameters, the quadratic-form matrix and its certificates.
    Params(ParamsArgs),
    /// Exact certification of the identity chain behind the estimate.
    Identity(IdentityArgs),
    /// Parameter table over a grid of (n, p).
    Sweep(SweepArgs),
    /// Evolve initial data and write a trajectory manifest plus snapshots.
    Solve(SolveArgs),
    /// Evaluate the estimate, its defect trend and the decay bound on a trajectory.
    Verify(VerifyArgs),
    /// Evaluate the homogeneous blow-up family and its analytic margin.
    Exact(ExactArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{other}' (expected json or csv)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Radial,
    Box,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "radial" => Ok(Mode::Radial),
            "box" | "periodic_box" => Ok(Mode::Box),
            other => Err(format!("unknown grid mode '{other}' (expected radial or box)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Family {
    Zero,
    Constant,
    Gaussian,
    #[default]
    GaussianFloor,
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "zero" => Ok(Family::Zero),
            "constant" => Ok(Family::Constant),
            "gaussian" => Ok(Family::Gaussian),
            "gaussian_floor" | "gaussian_over_floor" => Ok(Family::GaussianFloor),
            other => Err(format!(
                "unknown initial data '{other}' (expected zero, constant, gaussian or gaussian_floor)"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Zero => "zero",
            Family::Constant => "constant",
            Family::Gaussian => "gaussian",
            Family::GaussianFloor => "gaussian_floor",
        })
    }
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    pub n: u32,
    /// Exponent; also read exactly as a rational for `--exact-alpha`.
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value = "midpoint")]
    pub policy: Policy,
    #[arg(long, default_value = "json")]
    pub format: Format,
    /// Also certify the closed forms exactly at this rational α.
    #[arg(long, allow_hyphen_values = true)]
    pub exact_alpha: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    /// Exact rational β, e.g. -2, 1/2 or 0.5.
    #[arg(long, default_value = "-2", allow_hyphen_values = true)]
    pub beta: String,
    /// Exact rational λ; defaults to −2(β+1).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Added to λ to break the cancellation on purpose.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb_lambda: Option<String>,
    #[arg(long, default_value = "identity_certificate.json")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Dimensions: `3..6` (inclusive) or `3,5`.
    #[arg(long)]
    pub n: Option<DimList>,
    /// Explicit exponents; overrides the p grid.
    #[arg(long)]
    pub p: Option<RealList>,
    #[arg(long)]
    pub p_min: Option<f64>,
    /// Upper end of the p grid; defaults to p_c(n) − pc-margin per n.
    #[arg(long)]
    pub p_max: Option<f64>,
    #[arg(long)]
    pub p_points: Option<usize>,
    #[arg(long)]
    pub pc_margin: Option<f64>,
    #[arg(long)]
    pub policy: Option<Policy>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Grid, exponent and initial data of one evolution.
#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    /// Dimension (radial drift) or, in box mode, the dimension used for parameters.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Box dimensions (1–3).
    #[arg(long)]
    pub dims: Option<u32>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub length: Option<f64>,
    #[arg(long)]
    pub init: Option<Family>,
    /// Level of constant data.
    #[arg(long)]
    pub value: Option<f64>,
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub floor: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub snapshot_every: Option<f64>,
    #[arg(long)]
    pub blowup_threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Verify a trajectory written by `solve` instead of running inline.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub policy: Option<Policy>,
    /// Use this α instead of the policy's choice.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Elapsed windows, e.g. `1,2,4`.
    #[arg(long)]
    pub windows: Option<RealList>,
    /// The last snapshot is re-anchored at t = −offset.
    #[arg(long)]
    pub t_final_offset: Option<f64>,
    /// Also evaluate the numeric identity residual on the last two snapshots.
    #[arg(long)]
    pub identity_residual: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Any of json, csv, plot (comma-separated).
    #[arg(long)]
    pub formats: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "midpoint")]
    pub policy: Policy,
    #[arg(long = "T0", default_value_t = 0.0, allow_negative_numbers = true)]
    pub t0: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}
