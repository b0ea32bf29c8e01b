use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::Spin;

#[derive(Debug, Parser)]
#[command(name = "spinloops", version, about = "Exact values, limits and loop Monte Carlo for mean-field quantum spin models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact finite-n generating function next to its n -> infinity limit.
    Exact(ExactArgs),
    /// Loop-soup Monte Carlo; writes spectra.csv and metadata.json.
    Simulate(SimulateArgs),
    /// Critical-exponent fits from the variational formulas.
    Exponents(ExponentsArgs),
    /// Free-energy maximisers over a grid of inverse temperatures.
    Maximize(MaximizeArgs),
    /// Poisson-Dirichlet series against stick-breaking Monte Carlo.
    Pd(PdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Heisenberg,
    Xy,
    Interchange,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "heisenberg")]
    pub model: Model,
    /// Spin as a fraction: 1/2, 1, 3/2, ...
    #[arg(long)]
    pub spin: Option<Spin>,
    /// Number of colours of the interchange model (2S+1).
    #[arg(long)]
    pub theta: Option<u32>,
    #[arg(long)]
    pub beta: f64,
    /// Anisotropy in [-1, 1]; 1 is the isotropic ferromagnet.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// Cross intensity of the loop soup, u = (delta + 1)/2.
    #[arg(long)]
    pub u: Option<f64>,
    /// Field: a scalar, or theta comma-separated eigenvalues for the interchange model.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Site counts, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 100_000)]
    pub sweeps: u64,
    /// Sweeps discarded per chain; defaults to 20% of --sweeps.
    #[arg(long)]
    pub burn_in: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub chains: u64,
    /// Required when the CI environment variable is set.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, env = "SPINLOOPS_OUT_DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExponentChoice {
    All,
    Magnetization,
    Susceptibility,
    CriticalIsotherm,
    TransverseCritical,
    TransverseOrdered,
}

#[derive(Debug, Clone, Args)]
pub struct ExponentsArgs {
    #[arg(long, default_value = "1/2")]
    pub spin: Spin,
    #[arg(long, value_enum, default_value = "all")]
    pub which: ExponentChoice,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct MaximizeArgs {
    #[arg(long, value_enum, default_value = "heisenberg")]
    pub model: Model,
    #[arg(long, default_value = "1/2")]
    pub spin: Spin,
    /// start:stop:step, inclusive of stop up to rounding.
    #[arg(long, conflicts_with = "beta")]
    pub beta_grid: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub beta: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct PdArgs {
    #[arg(long)]
    pub theta: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1")]
    pub h: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Also compare the rank-one projector expectation at this z*.
    #[arg(long)]
    pub z_star: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}
