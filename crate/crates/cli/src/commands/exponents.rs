use std::io::Write;

use serde::Serialize;
use spinloops::asymptotics::{critical_exponent_fit, CriticalExponent, SpinContext};

use crate::cli::{ExponentChoice, ExponentsArgs};
use crate::config::Spin;
use crate::error::CliResult;
use crate::output::write_table;

#[derive(Debug, Serialize)]
struct ExponentRow {
    which: &'static str,
    spin: Spin,
    target: f64,
    exponent: f64,
    r_squared: f64,
    fd_max_relative_gap: Option<f64>,
}

pub fn run<W: Write>(args: &ExponentsArgs, out: &mut W) -> CliResult<()> {
    let ctx = SpinContext::new(args.spin.0)?;
    let kinds: Vec<CriticalExponent> = match args.which {
        ExponentChoice::All => CriticalExponent::ALL.to_vec(),
        ExponentChoice::Magnetization => vec![CriticalExponent::Magnetization],
        ExponentChoice::Susceptibility => vec![CriticalExponent::Susceptibility],
        ExponentChoice::CriticalIsotherm => vec![CriticalExponent::CriticalIsotherm],
        ExponentChoice::TransverseCritical => vec![CriticalExponent::TransverseCritical],
        ExponentChoice::TransverseOrdered => vec![CriticalExponent::TransverseOrdered],
    };
    let rows = kinds
        .into_iter()
        .map(|kind| {
            let r = critical_exponent_fit(kind, ctx)?;
            Ok(ExponentRow {
                which: kind.name(),
                spin: args.spin,
                target: r.target,
                exponent: r.fit.exponent,
                r_squared: r.fit.r_squared,
                fd_max_relative_gap: r.fd_max_relative_gap,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    write_table(&rows, args.format, out)
}
