//! Log-log least squares for power laws `y ~ t^a` as `t -> 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of smallest-`t` samples entering a fit.
pub const FIT_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// The `(t, y)` pairs actually used.
    pub sample_points: Vec<(f64, f64)>,
}

/// Fits `log y = intercept + exponent · log t` to the four samples with the
/// smallest `t`.
pub fn fit_exponent(samples: &[(f64, f64)]) -> Result<ExponentFit> {
    if samples.len() < FIT_POINTS {
        return Err(Error::domain(format!("need at least {FIT_POINTS} samples, got {}", samples.len())));
    }
    if samples.iter().any(|&(t, y)| !(t > 0.0 && y > 0.0)) {
        return Err(Error::domain("exponent fits need positive parameters and observables"));
    }
    let mut pts = samples.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.truncate(FIT_POINTS);
    let logs: Vec<(f64, f64)> = pts.iter().map(|&(t, y)| (t.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("exponent fit needs distinct parameter values"));
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    Ok(ExponentFit { exponent, intercept, r_squared, sample_points: pts })
}
