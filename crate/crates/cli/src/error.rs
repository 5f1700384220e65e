use std::fmt::Display;

use liyau_core::param_engine::ParamError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CERTIFICATION: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_BLOWUP: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Display) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }

    pub fn io(message: impl Display) -> Self {
        // unwritable outputs are an environment problem, reported like bad arguments
        Self { code: EXIT_USAGE, message: message.to_string() }
    }
}

/// Infeasible exponents map to exit 2, every other parameter error to 64.
impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        let code = match e {
            ParamError::InfeasibleExponent { .. }
            | ParamError::EmptyInterval { .. }
            | ParamError::NonPositiveDelta { .. } => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
