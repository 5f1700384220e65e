use liyau_core::jet_algebra::identities::lambda_for;
use liyau_core::jet_algebra::{assert_identity_chain, StepStatus};
use liyau_core::param_engine::exact::parse_rational;

use crate::cli::IdentityArgs;
use crate::error::{CliError, CliResult, EXIT_CERTIFICATION, EXIT_OK};
use crate::output::{json, write_file};

pub fn run(args: IdentityArgs) -> CliResult<u8> {
    let rational = |flag: &str, s: &str| parse_rational(s).map_err(|e| CliError::usage(format!("--{flag}: {e}")));
    let beta = rational("beta", &args.beta)?;
    let mut lambda = match &args.lambda {
        Some(l) => rational("lambda", l)?,
        None => lambda_for(&beta),
    };
    if let Some(d) = &args.perturb_lambda {
        lambda = &lambda + &rational("perturb-lambda", d)?;
    }
    let report = assert_identity_chain(&beta, &lambda).map_err(|e| CliError::usage(format!("rewriting failed: {e}")))?;
    let body = json(&report)?;
    write_file(&args.output, &body)?;
    print!("{body}");
    for step in &report.steps {
        if step.status == StepStatus::Failed {
            eprintln!("step {} failed; offending monomials:", step.name);
            for m in &step.offending {
                eprintln!("  {m}");
            }
        }
    }
    Ok(if report.certified { EXIT_OK } else { EXIT_CERTIFICATION })
}
