//! `E_{PD(θ)}[∏_i q_h(z X_i)]`: Monte Carlo and closed form.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::rfunction::r_function;
use super::sampling::{stick_breaking_sample, DEFAULT_TRUNCATION};
use super::series::{q_eval, FieldVector};
use crate::error::{Error, Result};

/// Sample mean of a complex observable; `std_error` combines the real and
/// imaginary parts, `sqrt(se_re² + se_im²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEstimate {
    pub mean: Complex64,
    pub std_error: f64,
    pub samples: usize,
}

impl ComplexEstimate {
    pub fn from_samples(values: &[Complex64]) -> Self {
        let n = values.len();
        let mean = values.iter().sum::<Complex64>() / n as f64;
        let var = if n > 1 {
            values.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (n - 1) as f64
        } else {
            f64::INFINITY
        };
        ComplexEstimate { mean, std_error: (var / n as f64).sqrt(), samples: n }
    }

    pub fn within(&self, target: Complex64, n_se: f64) -> bool {
        (self.mean - target).norm() <= n_se * self.std_error
    }
}

fn integer_theta(theta: f64, h: &FieldVector) -> Result<usize> {
    if theta.fract() != 0.0 || theta < 2.0 {
        return Err(Error::domain(format!(
            "the closed form is only available for integer theta >= 2, got {theta}"
        )));
    }
    let t = theta as usize;
    if h.theta() != t {
        return Err(Error::domain(format!("field vector has {} entries, theta = {t}", h.theta())));
    }
    Ok(t)
}

fn check_z(z_star: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&z_star) {
        return Err(Error::domain(format!("z* must lie in [0, 1], got {z_star}")));
    }
    Ok(())
}

/// `exp(-(1-z)Σh/θ) R(h; y+z, y, ..., y)` with `y = (1-z)/θ`.
pub fn pd_q_closed_form(theta: f64, h: &FieldVector, z_star: f64) -> Result<Complex64> {
    let t = integer_theta(theta, h)?;
    check_z(z_star)?;
    let y = (1.0 - z_star) / t as f64;
    let mut x = vec![y; t];
    x[0] += z_star;
    Ok((-h.sum() * (1.0 - z_star) / t as f64).exp() * r_function(h.as_slice(), &x)?)
}

/// Monte Carlo estimate of `E_{PD(θ)}[∏ q_h(z X_i)]` from stick-breaking
/// samples. Integer `θ` only, matching the closed form it is tested against.
pub fn pd_q_expectation_mc<R: Rng + ?Sized>(
    theta: f64,
    h: &FieldVector,
    z_star: f64,
    n_samples: usize,
    rng: &mut R,
) -> Result<ComplexEstimate> {
    integer_theta(theta, h)?;
    check_z(z_star)?;
    if n_samples < 2 {
        return Err(Error::domain("need at least two samples"));
    }
    let mut values = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let s = stick_breaking_sample(theta, rng, DEFAULT_TRUNCATION)?;
        values.push(s.parts.iter().map(|&p| q_eval(h, z_star * p)).product());
    }
    Ok(ComplexEstimate::from_samples(&values))
}
