//! Exact generating function `<exp((h/n) Σ^(1))>` of the mean-field XXZ model,
//! decomposed over total-spin sectors.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::multiplicity::ln_degeneracies;
use crate::error::{Error, Result};

/// Largest `n * 2S` for which the anisotropic path diagonalises every
/// `(2J+1)`-dimensional block.
pub const ANISOTROPIC_CAP: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GibbsValue {
    pub value: Complex64,
    pub n: u32,
    pub two_s: u32,
    pub beta: f64,
    pub delta: f64,
    pub h: Complex64,
}

/// Evaluation knobs. `j_cutoff` drops spin sectors whose log-weight lies more
/// than the given amount below the largest one; `None` sums every sector.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExactOptions {
    pub j_cutoff: Option<f64>,
}

pub fn heisenberg_expectation_exact(
    n: u32,
    two_s: u32,
    beta: f64,
    delta: f64,
    h: Complex64,
) -> Result<GibbsValue> {
    heisenberg_expectation_with(n, two_s, beta, delta, h, ExactOptions::default())
}

/// Sector sum
/// `Σ_J d_J e^{(β/n)J(J+1)} Σ_M e^{-(1-Δ)(β/n)M²} <J,M| e^{(h/n)Σ^(1)} |J,M>`
/// over the same sum at `h = 0`. For `Δ = 1` the inner trace is the closed
/// form `sinh(h(2J+1)/2n) / sinh(h/2n)`.
pub fn heisenberg_expectation_with(
    n: u32,
    two_s: u32,
    beta: f64,
    delta: f64,
    h: Complex64,
    opts: ExactOptions,
) -> Result<GibbsValue> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be finite and nonnegative, got {beta}")));
    }
    if !(-1.0..=1.0).contains(&delta) {
        return Err(Error::domain(format!("delta must lie in [-1, 1], got {delta}")));
    }
    let size = u64::from(n) * u64::from(two_s);
    let isotropic = delta == 1.0;
    if !isotropic && size > ANISOTROPIC_CAP {
        return Err(Error::SizeCap { what: "n*2S (anisotropic)", value: size, cap: ANISOTROPIC_CAP });
    }
    let ln_d = ln_degeneracies(n, two_s)?;
    let min_two_j = size % 2;
    let nf = f64::from(n);
    let hn = h / nf;
    let aniso = (1.0 - delta) * beta / nf;

    // (log weight of the sector at h = 0, ratio of traces h / h=0)
    let sector = |i: usize| -> (f64, Complex64) {
        let two_j = min_two_j + 2 * i as u64;
        let j = two_j as f64 / 2.0;
        let base = ln_d[i] + beta / nf * j * (j + 1.0);
        if !base.is_finite() {
            return (base, Complex64::new(0.0, 0.0));
        }
        if isotropic {
            (base + ((two_j + 1) as f64).ln(), isotropic_ratio(two_j, hn))
        } else {
            let (ln_tr0, ratio) = anisotropic_sector(two_j, hn, aniso);
            (base + ln_tr0, ratio)
        }
    };
    let terms: Vec<(f64, Complex64)> = if isotropic {
        (0..ln_d.len()).map(sector).collect()
    } else {
        (0..ln_d.len()).into_par_iter().map(sector).collect()
    };

    let max = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for &(lw, ratio) in &terms {
        if let Some(cut) = opts.j_cutoff {
            if lw < max - cut {
                continue;
            }
        }
        let w = (lw - max).exp();
        num += ratio * w;
        den += w;
    }
    let value = num / den;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NumericOverflow(format!(
            "non-finite Gibbs value at n={n}, 2S={two_s}, beta={beta}, h={h}"
        )));
    }
    Ok(GibbsValue { value, n, two_s, beta, delta, h })
}

/// `(1/(2J+1)) Σ_{M=-J}^{J} e^{x M}`.
fn isotropic_ratio(two_j: u64, x: Complex64) -> Complex64 {
    let dim = (two_j + 1) as f64;
    let half = x / 2.0;
    if half.norm() < 1e-6 {
        let j = two_j as f64 / 2.0;
        let sum: Complex64 = (0..=two_j).map(|k| (x * (k as f64 - j)).exp()).sum();
        return sum / dim;
    }
    (half * dim).sinh() / half.sinh() / dim
}

/// For one spin-`J` block: `ln Σ_M e^{-c M²}` and the ratio
/// `Σ_M e^{-c M²} (e^{x Σ^(1)})_{MM} / Σ_M e^{-c M²}`.
fn anisotropic_sector(two_j: u64, x: Complex64, c: f64) -> (f64, Complex64) {
    let dim = two_j as usize + 1;
    let j = two_j as f64 / 2.0;
    let m_of = |k: usize| k as f64 - j;
    let m_min = if two_j % 2 == 0 { 0.0 } else { 0.5 };
    let weights: Vec<f64> = (0..dim).map(|k| (-c * (m_of(k).powi(2) - m_min * m_min)).exp()).collect();
    let wsum: f64 = weights.iter().sum();
    let ln_tr0 = wsum.ln() - c * m_min * m_min;

    let mut sigma1 = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..dim - 1 {
        let m = m_of(k);
        let off = 0.5 * (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        sigma1[(k, k + 1)] = off;
        sigma1[(k + 1, k)] = off;
    }
    let eig = SymmetricEigen::new(sigma1);
    let phases: Vec<Complex64> = eig.eigenvalues.iter().map(|&l| (x * l).exp()).collect();
    let v = &eig.eigenvectors;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let diag: Complex64 = (0..dim).map(|a| phases[a] * v[(k, a)].powi(2)).sum();
        acc += diag * w;
    }
    (ln_tr0, acc / wsum)
}
