use liyau_core::format::fmt_sig;
use liyau_core::param_engine::{analyze, critical_exponent, ParameterAnalysis, Policy, ProblemSpec};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{Format, SweepArgs};
use crate::config::{load_optional, DimList, RealList};
use crate::error::{CliError, CliResult, EXIT_INFEASIBLE, EXIT_OK};
use crate::output::{emit, json};

/// One row of the parameter table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u32,
    pub p: f64,
    pub critical_exponent: f64,
    pub feasible: bool,
    pub policy: Policy,
    pub alpha: Option<f64>,
    pub delta: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
    pub min_eigenvalue: Option<f64>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn from_analysis(a: &ParameterAnalysis) -> Self {
        let params = a.selection.as_ref().map(|s| s.params);
        Self {
            n: a.n,
            p: a.p,
            critical_exponent: a.critical_exponent,
            feasible: a.feasible,
            policy: a.policy,
            alpha: params.map(|p| p.alpha),
            delta: params.map(|p| p.delta),
            c1: params.map(|p| p.c1),
            c2: params.map(|p| p.c2),
            c3: params.map(|p| p.c3),
            min_eigenvalue: a.min_eigenvalue,
            error: a.error.clone(),
        }
    }
}

const HEADER: &str = "n,p,critical_exponent,feasible,policy,alpha,delta,c1,c2,c3,min_eigenvalue,error";

fn opt(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn rows_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            fmt_sig(r.p),
            fmt_sig(r.critical_exponent),
            r.feasible,
            r.policy,
            opt(r.alpha),
            opt(r.delta),
            opt(r.c1),
            opt(r.c2),
            opt(r.c3),
            opt(r.min_eigenvalue),
            quote(r.error.as_deref().unwrap_or("")),
        ));
    }
    out
}

#[derive(Serialize)]
struct SweepReport<'a> {
    schema: &'static str,
    kind: &'static str,
    rows: &'a [SweepRow],
}

fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![lo];
    }
    (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
}

pub fn run(args: SweepArgs) -> CliResult<u8> {
    let cfg = load_optional(args.config.as_deref())?;
    let dims = cfg.pick::<DimList>(args.n, "n")?.map(|d| d.0).unwrap_or_else(|| vec![3]);
    let explicit = cfg.pick::<RealList>(args.p, "p")?.map(|l| l.0);
    let p_min = cfg.pick(args.p_min, "p_min")?.unwrap_or(1.1);
    let p_max = cfg.pick::<f64>(args.p_max, "p_max")?;
    let p_points = cfg.pick(args.p_points, "p_points")?.unwrap_or(10);
    let pc_margin = cfg.pick(args.pc_margin, "pc_margin")?.unwrap_or(0.05);
    let policy = cfg.pick(args.policy, "policy")?.unwrap_or_default();
    let jobs = cfg.pick(args.jobs, "jobs")?.unwrap_or(1);
    if p_points == 0 || jobs == 0 {
        return Err(CliError::usage("p_points and jobs must be at least 1"));
    }
    let mut cells = Vec::new();
    for &n in &dims {
        let pc = critical_exponent(n)?;
        let ps = match &explicit {
            Some(list) => list.clone(),
            None => linspace(p_min, p_max.unwrap_or(pc - pc_margin), p_points),
        };
        for p in ps {
            cells.push(ProblemSpec::new(n, p)?);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    let rows: Vec<SweepRow> =
        pool.install(|| cells.par_iter().map(|s| SweepRow::from_analysis(&analyze(s, policy))).collect());
    let body = match args.format {
        Format::Csv => rows_csv(&rows),
        Format::Json => json(&SweepReport { schema: liyau_core::SCHEMA, kind: "sweep", rows: &rows })?,
    };
    emit(args.output.as_deref(), &body)?;
    if rows.iter().all(|r| !r.feasible) {
        eprintln!("every cell of the sweep is infeasible");
        return Ok(EXIT_INFEASIBLE);
    }
    Ok(EXIT_OK)
}
