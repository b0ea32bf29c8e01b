//! Exact finite-`n` quantum computations: multiplicities of total `S^(3)`,
//! spin-sector degeneracies, Gibbs generating functions and dense-matrix
//! cross-checks.

mod dense;
mod gibbs;
mod multiplicity;

pub use dense::{
    dense_gibbs_oracle, dense_gibbs_oracle_with, falk_bruch_check, FalkBruch, HamiltonianForm, DENSE_DIM_CAP,
};
pub use gibbs::{
    heisenberg_expectation_exact, heisenberg_expectation_with, ExactOptions, GibbsValue, ANISOTROPIC_CAP,
};
pub use multiplicity::{
    irrep_spectrum, ln_degeneracies, log_multiplicity_table, multiplicity_table, multiplicity_table_capped,
    IrrepSpectrum, MultiplicityTable, DEFAULT_EXACT_CAP, LOG_MODE_CAP,
};
