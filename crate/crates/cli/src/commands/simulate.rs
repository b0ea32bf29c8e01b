use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use spinloops::loops::{
    chain_estimate, observable_cosh, observable_q, run_chains, ChainOutput, LoopModel, LoopSpectrum, McmcOptions,
    DEFAULT_BURN_IN_FRACTION,
};
use spinloops::spectra::{dense_gibbs_oracle_with, heisenberg_expectation_exact, HamiltonianForm, DENSE_DIM_CAP};
use spinloops::stats::Estimate;
use spinloops::symfunc::{interchange_expectation_exact, INTERCHANGE_MAX_N};
use spinloops::Complex64;

use super::ci_mode;
use crate::cli::{Model, SimulateArgs};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const SPECTRA_FILE: &str = "spectra.csv";
pub const METADATA_FILE: &str = "metadata.json";

#[derive(Debug, Serialize)]
struct ChainSummary {
    chain: u64,
    estimate: Estimate,
    sweeps: u64,
    proposed_inserts: u64,
    accepted_inserts: u64,
    proposed_deletes: u64,
    accepted_deletes: u64,
    proposed_perm_moves: u64,
    accepted_perm_moves: u64,
    mean_links: f64,
}

#[derive(Debug, Serialize)]
struct Reference {
    value: f64,
    source: &'static str,
    z_score: f64,
}

#[derive(Debug, Serialize)]
struct Metadata<'a> {
    config: &'a RunConfig,
    n: u32,
    two_s: u32,
    pseudo_sites: u32,
    sweeps: u64,
    burn_in: u64,
    chains: u64,
    seed: u64,
    observable: &'static str,
    per_chain: Vec<ChainSummary>,
    pooled: Estimate,
    reference: Option<Reference>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

pub fn run<W: Write>(args: &SimulateArgs, out: &mut W) -> CliResult<()> {
    let config = RunConfig::from_args("simulate", &args.model)?;
    let seed = match args.seed {
        Some(s) => s,
        None if ci_mode() => return Err(CliError::usage("--seed is required when CI is set")),
        None => rand::random(),
    };
    if args.chains == 0 || args.sweeps == 0 {
        return Err(CliError::usage("--chains and --sweeps must be positive"));
    }
    let burn_in = args.burn_in.unwrap_or((args.sweeps as f64 * DEFAULT_BURN_IN_FRACTION) as u64);
    if burn_in >= args.sweeps {
        return Err(CliError::usage(format!("--burn-in {burn_in} leaves no samples out of {} sweeps", args.sweeps)));
    }
    let n = args.n;
    let two_s = if config.model == Model::Interchange { 1 } else { config.spin.0 };
    let model = LoopModel { n, two_s, beta: config.beta, u: config.u, theta: f64::from(config.theta) };
    let options = McmcOptions { burn_in: Some(burn_in), ..McmcOptions::default() };
    let chains = run_chains(model, args.sweeps, options, seed, args.chains)?;

    let hc: Vec<Complex64> = config.h.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let observable = |s: &LoopSpectrum| match config.model {
        // ∏ cosh(hℓ/(2n)): the spin generating function at field h
        Model::Heisenberg | Model::Xy => observable_cosh(s, config.h[0] * config.spin.0 as f64 / 2.0, n, two_s),
        Model::Interchange => observable_q(s, &hc, n).re,
    };
    let observable_name = match config.model {
        Model::Heisenberg | Model::Xy => "prod_cosh",
        Model::Interchange => "prod_q",
    };

    fs::create_dir_all(&args.out).map_err(io_err(&args.out))?;
    let csv_path = args.out.join(SPECTRA_FILE);
    write_spectra(&csv_path, &chains, burn_in, n * two_s, observable_name, &observable)?;

    let pooled = chain_estimate(&chains, &observable);
    let per_chain = chains
        .iter()
        .map(|c| {
            let s = &c.stats;
            ChainSummary {
                chain: c.chain,
                estimate: chain_estimate(std::slice::from_ref(c), &observable),
                sweeps: s.sweeps,
                proposed_inserts: s.proposed_inserts,
                accepted_inserts: s.accepted_inserts,
                proposed_deletes: s.proposed_deletes,
                accepted_deletes: s.accepted_deletes,
                proposed_perm_moves: s.proposed_perm_moves,
                accepted_perm_moves: s.accepted_perm_moves,
                mean_links: s.observable_trace.iter().sum::<f64>() / s.observable_trace.len() as f64,
            }
        })
        .collect();
    let reference = reference_value(&config, n).map(|(value, source)| Reference { value, source, z_score: pooled.z_score(value) });

    writeln!(out, "seed {seed}")?;
    writeln!(out, "{observable_name} = {} ± {} ({} samples)", pooled.mean, pooled.std_error, pooled.samples)?;
    if let Some(r) = &reference {
        writeln!(out, "exact ({}) = {}, |z| = {:.2}", r.source, r.value, r.z_score)?;
    }

    let meta = Metadata {
        config: &config,
        n,
        two_s,
        pseudo_sites: n * two_s,
        sweeps: args.sweeps,
        burn_in,
        chains: args.chains,
        seed,
        observable: observable_name,
        per_chain,
        pooled,
        reference,
    };
    let meta_path = args.out.join(METADATA_FILE);
    let mut text = serde_json::to_string_pretty(&meta)?;
    text.push('\n');
    fs::write(&meta_path, text).map_err(io_err(&meta_path))?;
    writeln!(out, "wrote {} and {}", csv_path.display(), meta_path.display())?;
    Ok(())
}

fn write_spectra<F: Fn(&LoopSpectrum) -> f64>(
    path: &Path,
    chains: &[ChainOutput],
    burn_in: u64,
    width: u32,
    observable_name: &str,
    observable: &F,
) -> CliResult<()> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
    let mut header = vec!["chain".to_string(), "sweep".to_string(), "n_loops".to_string()];
    header.extend((1..=width).map(|i| format!("ell_{i}")));
    header.push(observable_name.to_string());
    w.write_record(&header)?;
    let mut record = Vec::with_capacity(header.len());
    for c in chains {
        for (i, s) in c.samples.iter().enumerate() {
            record.clear();
            record.push(c.chain.to_string());
            record.push((burn_in + i as u64).to_string());
            record.push(s.n_loops_total.to_string());
            let parts = s.lengths.parts();
            record.extend((0..width as usize).map(|k| parts.get(k).copied().unwrap_or(0).to_string()));
            record.push(observable(s).to_string());
            w.write_record(&record)?;
        }
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

/// Exact finite-n value of the simulated observable when one is computable.
fn reference_value(config: &RunConfig, n: u32) -> Option<(f64, &'static str)> {
    match config.model {
        Model::Interchange if n <= INTERCHANGE_MAX_N => {
            let h: Vec<Complex64> = config.h.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            interchange_expectation_exact(n, config.beta, &h).ok().map(|v| (v.re, "character sum"))
        }
        Model::Interchange => None,
        Model::Heisenberg | Model::Xy => {
            let h = Complex64::new(config.h[0], 0.0);
            let two_s = config.spin.0;
            if two_s == 1 || config.delta == 1.0 {
                heisenberg_expectation_exact(n, two_s, config.beta, config.delta, h).ok().map(|g| (g.value.re, "angular momentum sum"))
            } else if u64::from(two_s + 1).checked_pow(n).is_some_and(|d| d <= DENSE_DIM_CAP as u64) {
                dense_gibbs_oracle_with(HamiltonianForm::Pairwise, n, two_s, config.beta, config.delta, h)
                    .ok()
                    .map(|g| (g.value.re, "dense pairwise"))
            } else {
                None
            }
        }
    }
}
