//! Random loop soups on the complete graph and their Monte Carlo sampling.

mod config;
mod mcmc;
mod observables;
mod trace;

pub use config::{random_permutation, sample_free_links, Link, LinkKind, LoopConfiguration, TimeWindow};
pub use mcmc::{
    chain_estimate, mcmc_run, run_chains, ChainOutput, LoopChain, LoopModel, McmcOptions, McmcStats, BATCHES,
    DEFAULT_BURN_IN_FRACTION,
};
pub use observables::{observable_cosh, observable_q, pd_comparison, ObservableComparison, PdComparison, PdComparisonOptions};
pub use trace::{trace_loops, LoopSpectrum, Tracer};
