use liyau_core::param_engine::exact::{certify, parse_rational, ExactCertificate};
use liyau_core::param_engine::{analyze, LiYauParameters, ParameterAnalysis, ProblemSpec};
use serde::Serialize;

use super::sweep::{rows_csv, SweepRow};
use crate::cli::{Format, ParamsArgs};
use crate::error::{CliError, CliResult, EXIT_INFEASIBLE, EXIT_OK};
use crate::output::{emit, json};

#[derive(Serialize)]
struct ParamsReport {
    schema: &'static str,
    kind: &'static str,
    #[serde(flatten)]
    analysis: ParameterAnalysis,
    alpha: Option<f64>,
    params: Option<LiYauParameters>,
    exact: Option<ExactCertificate>,
}

pub fn run(args: ParamsArgs) -> CliResult<u8> {
    let p: f64 = args.p.trim().parse().map_err(|e| CliError::usage(format!("--p '{}': {e}", args.p)))?;
    let spec = ProblemSpec::new(args.n, p)?;
    let exact = match &args.exact_alpha {
        Some(a) => {
            let pq = parse_rational(&args.p).map_err(CliError::usage)?;
            let aq = parse_rational(a).map_err(CliError::usage)?;
            Some(certify(args.n, &pq, &aq))
        }
        None => None,
    };
    let analysis = analyze(&spec, args.policy);
    let feasible = analysis.feasible;
    let error = analysis.error.clone();
    let body = match args.format {
        Format::Csv => rows_csv(&[SweepRow::from_analysis(&analysis)]),
        Format::Json => {
            let params = analysis.selection.map(|s| s.params);
            json(&ParamsReport {
                schema: liyau_core::SCHEMA,
                kind: "params",
                alpha: params.map(|p| p.alpha),
                params,
                analysis,
                exact,
            })?
        }
    };
    if !feasible {
        // the report still goes to stdout, but no artifact is left behind
        print!("{body}");
        eprintln!("infeasible: {}", error.unwrap_or_default());
        return Ok(EXIT_INFEASIBLE);
    }
    emit(args.output.as_deref(), &body)?;
    Ok(EXIT_OK)
}
