//! Product observables of loop spectra and comparison with Poisson-Dirichlet limits.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::trace::LoopSpectrum;
use crate::error::{Error, Result};
use crate::pd::{pd_cosh_series, stick_breaking_sample, DEFAULT_TRUNCATION};
use crate::stats::{batch_means, ks_two_sample, Estimate, KsTest};

/// `∏_i cosh(h ℓ_i / (2S n))`. Its mean under the `2^{#loops}` measure is the
/// spin-`S` generating function `⟨exp{(h/(S n)) Σ_i S_i^{(1)}}⟩`.
pub fn observable_cosh(spectrum: &LoopSpectrum, h: f64, n: u32, two_s: u32) -> f64 {
    let scale = h / f64::from(two_s * n);
    spectrum.lengths.parts().iter().map(|&l| (scale * f64::from(l)).cosh()).product()
}

/// `∏_i q_h(ℓ_i / n)` with `q_h(t) = (1/θ) Σ_k e^{h_k t}` and `θ = hvec.len()`.
pub fn observable_q(spectrum: &LoopSpectrum, hvec: &[Complex64], n: u32) -> Complex64 {
    let theta = hvec.len() as f64;
    let nf = f64::from(n);
    spectrum
        .lengths
        .parts()
        .iter()
        .map(|&l| hvec.iter().map(|h| (h * (f64::from(l) / nf)).exp()).sum::<Complex64>() / theta)
        .product()
}

#[derive(Debug, Clone)]
pub struct PdComparisonOptions {
    pub n: u32,
    pub two_s: u32,
    pub h_grid: Vec<f64>,
    /// Stick-breaking draws for the reference law of the largest part.
    pub reference_samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObservableComparison {
    pub h: f64,
    pub estimate: Estimate,
    pub limit: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PdComparison {
    pub observables: Vec<ObservableComparison>,
    pub ks: Option<KsTest>,
    pub notice: Option<String>,
}

/// Compares Monte Carlo spectra with the `PD(theta)` description of the
/// macroscopic loops occupying a fraction `z_star` of all pseudo-sites:
/// `∏cosh` against `E_PD[∏ cosh(h z* X_i)]`, and `ℓ_1/(2Sn z*)` against the
/// largest `PD(theta)` part.
pub fn pd_comparison<R: Rng + ?Sized>(
    samples: &[LoopSpectrum],
    theta: f64,
    z_star: f64,
    options: &PdComparisonOptions,
    rng: &mut R,
) -> Result<PdComparison> {
    if samples.is_empty() {
        return Err(Error::domain("no samples to compare"));
    }
    if !(0.0..=1.0).contains(&z_star) {
        return Err(Error::domain(format!("z* must lie in [0,1], got {z_star}")));
    }
    let n_batches = crate::loops::BATCHES.min(samples.len());
    let observables = options
        .h_grid
        .iter()
        .map(|&h| {
            let values: Vec<f64> = samples.iter().map(|s| observable_cosh(s, h, options.n, options.two_s)).collect();
            let limit = pd_cosh_series(theta, Complex64::new(h * z_star, 0.0))?.re;
            Ok(ObservableComparison { h, estimate: batch_means(&values, n_batches), limit })
        })
        .collect::<Result<_>>()?;
    if z_star == 0.0 {
        return Ok(PdComparison {
            observables,
            ks: None,
            notice: Some("z* = 0: no macroscopic loops, largest-part comparison skipped".into()),
        });
    }
    let total = f64::from(options.n * options.two_s);
    let scaled: Vec<f64> = samples.iter().map(|s| f64::from(s.lengths.part(0)) / total / z_star).collect();
    let reference: Vec<f64> = (0..options.reference_samples)
        .map(|_| stick_breaking_sample(theta, rng, DEFAULT_TRUNCATION).map(|s| s.largest()))
        .collect::<Result<_>>()?;
    Ok(PdComparison { observables, ks: Some(ks_two_sample(&scaled, &reference)), notice: None })
}
