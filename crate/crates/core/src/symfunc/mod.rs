//! Partitions, characters of the symmetric group and Schur polynomials.

mod characters;
mod interchange;
mod schur;

pub use characters::{character, dimension, partitions, transposition_ratio, CharacterValue};
pub use interchange::{
    interchange_expectation_exact, schur_ratio_limit_check, SchurRatioPoint, SchurRatioReport, INTERCHANGE_MAX_N,
};
pub use schur::{
    power_sum_eval, power_sum_eval_exact, schur_at_ones, schur_eval, schur_eval_exact, schur_eval_routed, SchurRoute,
    CONFLUENCE_GAP,
};
