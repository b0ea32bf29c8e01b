use std::io::Write;

use serde::Serialize;
use spinloops::asymptotics::{interchange_beta_c, interchange_maximizer, m_star, SpinContext};

use crate::cli::{MaximizeArgs, Model};
use crate::config::Spin;
use crate::error::{CliError, CliResult};
use crate::output::write_table;

#[derive(Debug, Serialize)]
struct MaximizerRow {
    model: Model,
    spin: Spin,
    beta: f64,
    beta_c: f64,
    /// `m*` for the Heisenberg and XY models, `x_1*` for the interchange model.
    location: f64,
    z_star: f64,
    value: f64,
}

pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = || CliError::usage(format!("--beta-grid expects start:stop:step, got {spec:?}"));
    let parts: Vec<f64> = spec.split(':').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else { return Err(bad()) };
    if !(step > 0.0) || stop < start || !(start > 0.0) {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| start + k as f64 * step).collect())
}

pub fn run<W: Write>(args: &MaximizeArgs, out: &mut W) -> CliResult<()> {
    let betas = match (&args.beta_grid, &args.beta) {
        (Some(g), _) => parse_grid(g)?,
        (None, Some(b)) => b.clone(),
        (None, None) => return Err(CliError::usage("give --beta-grid or --beta")),
    };
    let ctx = SpinContext::new(args.spin.0)?;
    let rows = betas
        .into_iter()
        .map(|beta| {
            Ok(match args.model {
                Model::Heisenberg | Model::Xy => {
                    let r = m_star(beta, ctx)?;
                    MaximizerRow {
                        model: args.model,
                        spin: args.spin,
                        beta,
                        beta_c: ctx.beta_c(),
                        location: r.location,
                        z_star: r.location / ctx.spin(),
                        value: r.value,
                    }
                }
                Model::Interchange => {
                    let r = interchange_maximizer(beta, ctx)?;
                    MaximizerRow {
                        model: args.model,
                        spin: args.spin,
                        beta,
                        beta_c: interchange_beta_c(ctx),
                        location: r.result.location,
                        z_star: r.z_star,
                        value: r.result.value,
                    }
                }
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    write_table(&rows, args.format, out)
}
