//! Poisson-Dirichlet and Ewens sampling, closed-form PD expectations and the
//! determinant function `R` with its confluent limits.

mod expectation;
mod rfunction;
mod sampling;
mod series;

pub use expectation::{pd_q_closed_form, pd_q_expectation_mc, ComplexEstimate};
pub use rfunction::{r_function, r_function_routed, RRoute, CONFLUENCE_TOL, GENERIC_GAP};
pub use sampling::{
    ewens_sample, stick_breaking_sample, stick_breaking_sticks, EwensPermutation, PDSample, DEFAULT_TRUNCATION,
};
pub use series::{pd_cosh_series, q_eval, q_spin, FieldVector};
