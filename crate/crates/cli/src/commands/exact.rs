use std::io::Write;

use serde::Serialize;
use spinloops::asymptotics::{interchange_maximizer, m_star, SpinContext};
use spinloops::pd::r_function;
use spinloops::spectra::heisenberg_expectation_exact;
use spinloops::special::{bessel_i0, sinhc};
use spinloops::symfunc::interchange_expectation_exact;
use spinloops::Complex64;

use crate::cli::{ExactArgs, Model};
use crate::config::{RunConfig, Spin};
use crate::error::CliResult;
use crate::output::write_table;

#[derive(Debug, Serialize)]
struct ExactRow {
    model: Model,
    n: u32,
    spin: Spin,
    theta: u32,
    beta: f64,
    delta: f64,
    h: String,
    exact: f64,
    limit: f64,
    gap: f64,
}

pub fn run<W: Write>(args: &ExactArgs, out: &mut W) -> CliResult<()> {
    let config = RunConfig::from_args("exact", &args.model)?;
    let limit = limit_value(&config)?;
    let rows = args
        .n
        .iter()
        .map(|&n| {
            let exact = exact_value(&config, n)?;
            Ok(ExactRow {
                model: config.model,
                n,
                spin: config.spin,
                theta: config.theta,
                beta: config.beta,
                delta: config.delta,
                h: config.field_label(),
                exact,
                limit,
                gap: (exact - limit).abs(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    write_table(&rows, args.format, out)
}

pub(crate) fn exact_value(config: &RunConfig, n: u32) -> CliResult<f64> {
    Ok(match config.model {
        Model::Heisenberg | Model::Xy => {
            let h = Complex64::new(config.h[0], 0.0);
            heisenberg_expectation_exact(n, config.spin.0, config.beta, config.delta, h)?.value.re
        }
        Model::Interchange => {
            let h: Vec<Complex64> = config.h.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            interchange_expectation_exact(n, config.beta, &h)?.re
        }
    })
}

/// `sinh(hm*)/(hm*)` for the isotropic model, `I_0(hm*)` for `Δ < 1`, and
/// `R(h; x*)` for the interchange model.
pub(crate) fn limit_value(config: &RunConfig) -> CliResult<f64> {
    Ok(match config.model {
        Model::Heisenberg | Model::Xy => {
            let ctx = SpinContext::new(config.spin.0)?;
            let hm = Complex64::new(config.h[0] * m_star(config.beta, ctx)?.location, 0.0);
            if config.delta == 1.0 { sinhc(hm).re } else { bessel_i0(hm).re }
        }
        Model::Interchange => {
            let ctx = SpinContext::from_theta(config.theta)?;
            let x = interchange_maximizer(config.beta, ctx)?.point(ctx);
            let h: Vec<Complex64> = config.h.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            r_function(&h, &x)?.re
        }
    })
}
