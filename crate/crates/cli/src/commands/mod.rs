mod exact;
mod exponents;
mod maximize;
mod pd;
mod simulate;

use std::io::Write;

use crate::cli::{Cli, Command};
use crate::error::CliResult;

pub fn run<W: Write>(cli: Cli, out: &mut W) -> CliResult<()> {
    match cli.command {
        Command::Exact(args) => exact::run(&args, out),
        Command::Simulate(args) => simulate::run(&args, out),
        Command::Exponents(args) => exponents::run(&args, out),
        Command::Maximize(args) => maximize::run(&args, out),
        Command::Pd(args) => pd::run(&args, out),
    }
}

/// True when the `CI` environment variable is set to something other than a false value.
pub(crate) fn ci_mode() -> bool {
    std::env::var("CI").is_ok_and(|v| !v.is_empty() && v != "0" && !v.eq_ignore_ascii_case("false"))
}
