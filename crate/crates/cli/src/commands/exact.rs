use liyau_core::liyau_verifier::{decay_bound, homogeneous_phi, homogeneous_q};
use liyau_core::param_engine::{select_params, LiYauParameters, ProblemSpec};
use liyau_core::pde_solver::{exact_homogeneous, exact_homogeneous_dt, kappa};
use serde::Serialize;

use crate::cli::ExactArgs;
use crate::error::{CliError, CliResult, EXIT_OK};
use crate::output::{emit, json};

#[derive(Serialize)]
struct ExactReport {
    schema: &'static str,
    kind: &'static str,
    n: u32,
    p: f64,
    t0: f64,
    t: f64,
    kappa: f64,
    u: f64,
    u_t: f64,
    /// u·u_t − C2u^{p+1} from the analytic derivative (the gradient vanishes).
    q: f64,
    /// (1 − C2)u^{p+1}.
    q_analytic: f64,
    phi: f64,
    decay_bound: Option<f64>,
    decay_holds: bool,
    params: LiYauParameters,
}

pub fn run(args: ExactArgs) -> CliResult<u8> {
    let spec = ProblemSpec::new(args.n, args.p)?;
    let params = match args.alpha {
        Some(a) => LiYauParameters::from_alpha(&spec, a)?,
        None => select_params(&spec, args.policy)?.params,
    };
    let u = exact_homogeneous(args.p, args.t0, args.t).map_err(CliError::usage)?;
    let ut = exact_homogeneous_dt(args.p, args.t0, args.t).map_err(CliError::usage)?;
    let bound = decay_bound(&params, args.t);
    let report = ExactReport {
        schema: liyau_core::SCHEMA,
        kind: "exact",
        n: args.n,
        p: args.p,
        t0: args.t0,
        t: args.t,
        kappa: kappa(args.p),
        u,
        u_t: ut,
        q: u * ut - params.c2 * u.powf(args.p + 1.0),
        q_analytic: homogeneous_q(&params, u),
        phi: homogeneous_phi(&params, u),
        decay_bound: bound,
        decay_holds: bound.is_none_or(|b| u <= b),
        params,
    };
    emit(args.output.as_deref(), &json(&report)?)?;
    Ok(EXIT_OK)
}
