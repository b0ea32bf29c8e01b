use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use spinloops::pd::{
    pd_cosh_series, pd_q_closed_form, pd_q_expectation_mc, stick_breaking_sample, FieldVector, DEFAULT_TRUNCATION,
};
use spinloops::stats::mean_se;
use spinloops::Complex64;

use super::ci_mode;
use crate::cli::PdArgs;
use crate::error::{CliError, CliResult};
use crate::output::write_table;

const VERDICT_SE: f64 = 3.0;

#[derive(Debug, Serialize)]
struct PdRow {
    check: &'static str,
    theta: f64,
    h: f64,
    z_star: Option<f64>,
    closed_form: f64,
    mc_mean: f64,
    mc_std_error: f64,
    z_score: f64,
    verdict: &'static str,
}

fn verdict(z: f64) -> &'static str {
    if z <= VERDICT_SE { "pass" } else { "fail" }
}

pub fn run<W: Write>(args: &PdArgs, out: &mut W) -> CliResult<()> {
    if args.samples < 2 {
        return Err(CliError::usage("--samples must be at least 2"));
    }
    let seed = match args.seed {
        Some(s) => s,
        None if ci_mode() => return Err(CliError::usage("--seed is required when CI is set")),
        None => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..args.samples)
        .map(|_| stick_breaking_sample(args.theta, &mut rng, DEFAULT_TRUNCATION))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for &h in &args.h {
        let series = pd_cosh_series(args.theta, Complex64::new(h, 0.0))?.re;
        let values: Vec<f64> = samples.iter().map(|s| s.parts.iter().map(|&x| (h * x).cosh()).product()).collect();
        let est = mean_se(&values);
        let z = est.z_score(series);
        rows.push(PdRow {
            check: "cosh-product",
            theta: args.theta,
            h,
            z_star: None,
            closed_form: series,
            mc_mean: est.mean,
            mc_std_error: est.std_error,
            z_score: z,
            verdict: verdict(z),
        });
    }
    if let Some(z_star) = args.z_star {
        if args.theta.fract() != 0.0 || args.theta < 2.0 {
            return Err(CliError::usage("--z-star needs an integer --theta of at least 2"));
        }
        for &h in &args.h {
            let field = FieldVector::projector(args.theta as u32, h);
            let closed = pd_q_closed_form(args.theta, &field, z_star)?.re;
            let est = pd_q_expectation_mc(args.theta, &field, z_star, args.samples, &mut rng)?;
            let z = (est.mean.re - closed).abs() / est.std_error;
            rows.push(PdRow {
                check: "projector",
                theta: args.theta,
                h,
                z_star: Some(z_star),
                closed_form: closed,
                mc_mean: est.mean.re,
                mc_std_error: est.std_error,
                z_score: z,
                verdict: verdict(z),
            });
        }
    }
    write_table(&rows, args.format, out)
}
