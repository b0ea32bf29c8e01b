//! Metropolis birth-death chain for the `θ^{#loops}`-weighted loop soup.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{random_permutation, sample_free_links, LoopConfiguration};
use super::trace::{LoopSpectrum, Tracer};
use crate::error::{Error, Result};
use crate::stats::{batch_means, Estimate};

/// Fraction of sweeps discarded when no burn-in is given.
pub const DEFAULT_BURN_IN_FRACTION: f64 = 0.2;
/// Batches per chain for standard errors.
pub const BATCHES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopModel {
    pub n: u32,
    pub two_s: u32,
    pub beta: f64,
    pub u: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct McmcOptions {
    /// Sweeps discarded before sampling; default is 20% of the total.
    pub burn_in: Option<u64>,
    /// Proposals per sweep; default `⌈Λ⌉ + 2S·n`.
    pub moves_per_sweep: Option<u64>,
    /// Insertions beyond this many links are rejected.
    pub max_links: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct McmcStats {
    pub sweeps: u64,
    pub proposed_inserts: u64,
    pub accepted_inserts: u64,
    pub proposed_deletes: u64,
    pub accepted_deletes: u64,
    pub proposed_perm_moves: u64,
    pub accepted_perm_moves: u64,
    /// Link count after each recorded sweep.
    pub observable_trace: Vec<f64>,
}

/// A single chain: current configuration, its loop count and scratch space.
#[derive(Debug, Clone)]
pub struct LoopChain {
    model: LoopModel,
    config: LoopConfiguration,
    spectrum: LoopSpectrum,
    tracer: Tracer,
    mass: f64,
    max_links: Option<usize>,
    pub stats: McmcStats,
}

impl LoopChain {
    pub fn new<R: Rng + ?Sized>(model: LoopModel, max_links: Option<usize>, rng: &mut R) -> Result<Self> {
        if !(model.theta >= 1.0 && model.theta.is_finite()) {
            return Err(Error::domain(format!("theta must be at least 1, got {}", model.theta)));
        }
        let mut config = sample_free_links(model.n, model.two_s, model.beta, model.u, rng)?;
        if let Some(cap) = max_links {
            config.links.truncate(cap);
        }
        Self::from_config(model, config, max_links)
    }

    pub fn from_config(model: LoopModel, config: LoopConfiguration, max_links: Option<usize>) -> Result<Self> {
        config.validate()?;
        let mut tracer = Tracer::default();
        let spectrum = tracer.trace(&config)?;
        let mass = config.poisson_mass();
        Ok(Self { model, config, spectrum, tracer, mass, max_links, stats: McmcStats::default() })
    }

    pub fn config(&self) -> &LoopConfiguration {
        &self.config
    }

    pub fn spectrum(&self) -> &LoopSpectrum {
        &self.spectrum
    }

    fn weight(&self, delta_loops: i64) -> f64 {
        self.model.theta.powi(delta_loops as i32)
    }

    /// One Metropolis proposal.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<()> {
        let with_perms = self.model.two_s > 1;
        let moves = if with_perms { 3 } else { 2 };
        match rng.random_range(0..moves) {
            0 => self.propose_insert(rng),
            1 => self.propose_delete(rng),
            _ => self.propose_perm(rng),
        }
    }

    fn current_loops(&self) -> i64 {
        self.spectrum.n_loops_total as i64
    }

    fn propose_insert<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<()> {
        self.stats.proposed_inserts += 1;
        let k = self.config.links.len();
        let link = self.config.random_link(rng);
        if self.max_links.is_some_and(|cap| k >= cap) {
            return Ok(());
        }
        self.config.links.push(link);
        let trial = match self.tracer.trace(&self.config) {
            Ok(s) => s,
            Err(Error::Integrity(_)) => {
                // coincident times: a null event under the continuous measure
                self.config.links.pop();
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        let ratio = self.weight(trial.n_loops_total as i64 - self.current_loops()) * self.mass / (k + 1) as f64;
        if rng.random::<f64>() < ratio {
            self.spectrum = trial;
            self.stats.accepted_inserts += 1;
        } else {
            self.config.links.pop();
        }
        Ok(())
    }

    fn propose_delete<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<()> {
        self.stats.proposed_deletes += 1;
        let k = self.config.links.len();
        if k == 0 {
            return Ok(());
        }
        let idx = rng.random_range(0..k);
        let removed = self.config.links.swap_remove(idx);
        let trial = self.tracer.trace(&self.config)?;
        let ratio = self.weight(trial.n_loops_total as i64 - self.current_loops()) * k as f64 / self.mass;
        if rng.random::<f64>() < ratio {
            self.spectrum = trial;
            self.stats.accepted_deletes += 1;
        } else {
            self.config.links.push(removed);
            let last = self.config.links.len() - 1;
            self.config.links.swap(idx, last);
        }
        Ok(())
    }

    fn propose_perm<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<()> {
        self.stats.proposed_perm_moves += 1;
        let site = rng.random_range(0..self.model.n as usize);
        let fresh = random_permutation(self.model.two_s, rng);
        let old = std::mem::replace(&mut self.config.site_perms[site], fresh);
        let trial = self.tracer.trace(&self.config)?;
        if rng.random::<f64>() < self.weight(trial.n_loops_total as i64 - self.current_loops()) {
            self.spectrum = trial;
            self.stats.accepted_perm_moves += 1;
        } else {
            self.config.site_perms[site] = old;
        }
        Ok(())
    }
}

fn default_moves(model: &LoopModel, mass: f64) -> u64 {
    mass.ceil() as u64 + u64::from(model.n * model.two_s)
}

/// Runs `n_sweeps` sweeps and returns the spectra recorded after burn-in.
pub fn mcmc_run<R: Rng + ?Sized>(
    model: LoopModel,
    n_sweeps: u64,
    options: McmcOptions,
    rng: &mut R,
) -> Result<(Vec<LoopSpectrum>, McmcStats)> {
    let mut chain = LoopChain::new(model, options.max_links, rng)?;
    let moves = options.moves_per_sweep.unwrap_or_else(|| default_moves(&model, chain.mass)).max(1);
    let burn_in = options.burn_in.unwrap_or((n_sweeps as f64 * DEFAULT_BURN_IN_FRACTION) as u64);
    if burn_in >= n_sweeps {
        return Err(Error::domain(format!("burn-in {burn_in} leaves no samples out of {n_sweeps} sweeps")));
    }
    let mut samples = Vec::with_capacity((n_sweeps - burn_in) as usize);
    for sweep in 0..n_sweeps {
        for _ in 0..moves {
            chain.step(rng)?;
        }
        chain.stats.sweeps += 1;
        if sweep >= burn_in {
            samples.push(chain.spectrum.clone());
            chain.stats.observable_trace.push(chain.config.links.len() as f64);
        }
    }
    Ok((samples, chain.stats))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainOutput {
    pub chain: u64,
    pub samples: Vec<LoopSpectrum>,
    pub stats: McmcStats,
}

/// Independent chains in parallel. Chain `i` uses the ChaCha8 stream `i`
/// of `seed`, so results do not depend on thread scheduling.
pub fn run_chains(model: LoopModel, n_sweeps: u64, options: McmcOptions, seed: u64, n_chains: u64) -> Result<Vec<ChainOutput>> {
    (0..n_chains)
        .into_par_iter()
        .map(|chain| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chain);
            let (samples, stats) = mcmc_run(model, n_sweeps, options, &mut rng)?;
            Ok(ChainOutput { chain, samples, stats })
        })
        .collect()
}

/// Pools per-chain batch-means estimates of `f` over the recorded spectra.
pub fn chain_estimate<F>(chains: &[ChainOutput], f: F) -> Estimate
where
    F: Fn(&LoopSpectrum) -> f64,
{
    let per_chain: Vec<Estimate> = chains
        .iter()
        .map(|c| batch_means(&c.samples.iter().map(&f).collect::<Vec<_>>(), BATCHES))
        .collect();
    let k = per_chain.len() as f64;
    let mean = per_chain.iter().map(|e| e.mean).sum::<f64>() / k;
    let var = per_chain.iter().map(|e| e.std_error * e.std_error).sum::<f64>() / (k * k);
    Estimate { mean, std_error: var.sqrt(), samples: per_chain.iter().map(|e| e.samples).sum() }
}
