//! Closed-form PD expectations and the single-loop weights `q`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::asymptotics::ln_sinhc;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 500;

/// Eigenvalues `(h_1, ..., h_θ)` of a one-site field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldVector(pub Vec<Complex64>);

impl FieldVector {
    pub fn new(h: Vec<Complex64>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::domain("field vector must be nonempty"));
        }
        Ok(FieldVector(h))
    }

    pub fn real(h: &[f64]) -> Result<Self> {
        Self::new(h.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// `h_i = h(-S + i - 1)`, the spectrum of `h S^(1)`.
    pub fn spin(two_s: u32, h: f64) -> Self {
        let s = f64::from(two_s) / 2.0;
        FieldVector((0..=two_s).map(|i| Complex64::new(h * (f64::from(i) - s), 0.0)).collect())
    }

    /// `(h, 0, ..., 0)`, the spectrum of `h` times a rank-one projector.
    pub fn projector(theta: u32, h: f64) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); theta as usize];
        v[0] = Complex64::new(h, 0.0);
        FieldVector(v)
    }

    pub fn theta(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> Complex64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }
}

/// `E_{PD(θ)}[∏ cosh(h X_i)] = Σ_k Γ(θ)Γ(θ/2+k) / (Γ(θ/2) k! Γ(θ+2k)) h^{2k}`,
/// summed through the term ratio `(θ/2+k) h² / ((k+1)(θ+2k)(θ+2k+1))`.
pub fn pd_cosh_series(theta: f64, h: Complex64) -> Result<Complex64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::domain(format!("theta must be positive, got {theta}")));
    }
    let h2 = h * h;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..MAX_TERMS {
        let k = k as f64;
        term *= h2 * ((theta / 2.0 + k) / ((k + 1.0) * (theta + 2.0 * k) * (theta + 2.0 * k + 1.0)));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    Ok(sum)
}

/// `q_h(t) = (1/θ) Σ_i e^{h_i t}`.
pub fn q_eval(h: &FieldVector, t: f64) -> Complex64 {
    h.0.iter().map(|&hi| (hi * t).exp()).sum::<Complex64>() / h.theta() as f64
}

/// `q_S(t) = sinh(θt/2) / (θ sinh(t/2))`, the average of `e^{mt}` over
/// `m = -S..S`.
pub fn q_spin(two_s: u32, t: f64) -> f64 {
    let theta = f64::from(two_s + 1);
    (ln_sinhc(theta * t / 2.0) - ln_sinhc(t / 2.0)).exp()
}
