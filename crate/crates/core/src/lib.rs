//! Finite-size computations for quantum spin systems on the complete graph.
//!
//! The crate pairs exact finite-`n` evaluators (angular-momentum sums, dense
//! matrices, symmetric-group characters) with their `n -> infinity` limits
//! (free-energy maximisers, Poisson-Dirichlet expectations) and with a Monte
//! Carlo sampler for the underlying random loop soups, so every limit can be
//! checked against an independent engine.
//!
//! Half-integer spin quantities are carried as doubled integers (`two_s`,
//! `two_m`, `two_j`) throughout.

pub mod asymptotics;
pub mod error;
pub mod loops;
pub mod optimize;
pub mod partition;
pub mod pd;
pub mod special;
pub mod spectra;
pub mod stats;
pub mod symfunc;

pub use error::{Error, Result};
pub use partition::Partition;

pub use num_complex::Complex64;
