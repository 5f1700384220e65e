mod exact;
mod identity;
mod params;
mod run;
mod solve;
mod sweep;
mod verify;

use crate::cli::{Cli, Command};
use crate::error::CliResult;

pub fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Params(a) => params::run(a),
        Command::Identity(a) => identity::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Solve(a) => solve::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Exact(a) => exact::run(a),
    }
}
