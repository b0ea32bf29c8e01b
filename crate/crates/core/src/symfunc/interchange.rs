//! Exact finite-`n` expectations for the interchange model through the
//! character expansion of `θ^{#cycles}`-weighted random transposition walks.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::characters::{dimension, partitions, transposition_ratio};
use super::schur::{schur_at_ones, schur_eval};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::pd::r_function;
use crate::special::big_ln;

/// Largest `n` accepted by [`interchange_expectation_exact`].
pub const INTERCHANGE_MAX_N: u32 = 60;

/// `E_{n,β,θ}[∏_i q_h(ℓ_i/n)]` for the interchange model with `θ = hvec.len()`.
///
/// Sums over `λ ⊢ n` with at most `θ` rows, each weighted by
/// `d_λ exp{(β/n) C(n,2) (r(λ) - 1)} s_λ(1^θ)` and contributing the Schur ratio
/// `s_λ(e^{h/n}) / s_λ(1^θ)`. Weights are normalised in log space.
pub fn interchange_expectation_exact(n: u32, beta: f64, hvec: &[Complex64]) -> Result<Complex64> {
    let theta = hvec.len();
    if n < 2 || n > INTERCHANGE_MAX_N {
        return Err(Error::domain(format!("n must lie in 2..={INTERCHANGE_MAX_N}, got {n}")));
    }
    if theta == 0 {
        return Err(Error::domain("field vector must be non-empty"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!("beta must be finite and non-negative, got {beta}")));
    }
    let nf = f64::from(n);
    let pairs = nf * (nf - 1.0) / 2.0;
    let x: Vec<Complex64> = hvec.iter().map(|h| (h / nf).exp()).collect();
    let lambdas: Vec<Partition> = partitions(n, Some(theta)).collect();
    let terms: Vec<(f64, Complex64)> = lambdas
        .par_iter()
        .map(|lam| -> Result<(f64, Complex64)> {
            let ones = schur_at_ones(lam, theta)?;
            let r = transposition_ratio(lam)?.to_f64().expect("small rational");
            let log_w = big_ln(&dimension(lam)) + beta / nf * pairs * (r - 1.0) + ones.ln();
            Ok((log_w, schur_eval(lam, &x)? / ones))
        })
        .collect::<Result<_>>()?;
    let top = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
    for (log_w, ratio) in terms {
        let w = (log_w - top).exp();
        num += ratio * w;
        den += w;
    }
    let value = num / den;
    if !value.is_finite() {
        return Err(Error::NumericOverflow(format!("interchange expectation at n={n}, beta={beta}")));
    }
    Ok(value)
}

#[derive(Debug, Clone, Serialize)]
pub struct SchurRatioPoint {
    pub n: u64,
    pub ratio: Complex64,
    pub distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchurRatioReport {
    pub limit: Complex64,
    pub points: Vec<SchurRatioPoint>,
}

/// Tracks `s_λ(e^{h/n}) / s_λ(1^θ)` along a sequence of partitions whose
/// rescaled rows approach `target`, against `R(h; target)`.
pub fn schur_ratio_limit_check(sequence: &[Partition], target: &[f64], hvec: &[Complex64]) -> Result<SchurRatioReport> {
    let theta = hvec.len();
    if target.len() != theta {
        return Err(Error::domain("target and field vector must have equal length"));
    }
    if target.windows(2).any(|w| w[0] < w[1]) || (target.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::domain("target must be weakly decreasing and sum to 1"));
    }
    let limit = r_function(hvec, target)?;
    let points = sequence
        .iter()
        .map(|lam| {
            let n = lam.size();
            let x: Vec<Complex64> = hvec.iter().map(|h| (h / n as f64).exp()).collect();
            let ratio = schur_eval(lam, &x)? / schur_at_ones(lam, theta)?;
            Ok(SchurRatioPoint { n, ratio, distance: (ratio - limit).norm() })
        })
        .collect::<Result<_>>()?;
    Ok(SchurRatioReport { limit, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::{q_eval, FieldVector};
    use crate::spectra::heisenberg_expectation_exact;

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&a| Complex64::new(a, 0.0)).collect()
    }

    #[test]
    fn zero_field_is_one() {
        let v = interchange_expectation_exact(9, 2.5, &c(&[0.0; 3])).unwrap();
        assert!((v - 1.0).norm() < 1e-13);
    }

    #[test]
    fn beta_zero_is_identity_permutation() {
        let h = c(&[1.0, -0.3, 0.4]);
        let n = 7;
        let v = interchange_expectation_exact(n, 0.0, &h).unwrap();
        let expect = q_eval(&FieldVector::new(h).unwrap(), 1.0 / n as f64).powu(n);
        assert!((v - expect).norm() < 1e-13);
    }

    #[test]
    fn spin_half_heisenberg_equivalence() {
        for beta in [0.3, 1.0, 2.7, 6.0] {
            let v = interchange_expectation_exact(4, beta, &c(&[0.5, -0.5])).unwrap();
            let g = heisenberg_expectation_exact(4, 1, beta, 1.0, Complex64::new(1.0, 0.0)).unwrap();
            assert!((v - g.value).norm() < 1e-9, "beta {beta}: {v} vs {}", g.value);
        }
        let v = interchange_expectation_exact(10, 1.9, &c(&[1.5, -1.5])).unwrap();
        let g = heisenberg_expectation_exact(10, 1, 1.9, 1.0, Complex64::new(3.0, 0.0)).unwrap();
        assert!((v - g.value).norm() < 1e-10);
    }

    #[test]
    fn single_row_sequence_converges() {
        let h = c(&[1.0, 0.0, -0.5]);
        let seq: Vec<Partition> = [10u32, 40, 160, 640].iter().map(|&n| Partition::new(vec![n]).unwrap()).collect();
        let report = schur_ratio_limit_check(&seq, &[1.0, 0.0, 0.0], &h).unwrap();
        let d: Vec<f64> = report.points.iter().map(|p| p.distance).collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
        assert!(d[3] < 5e-3, "{d:?}");
    }

    #[test]
    fn uniform_rows_hit_confluent_limit() {
        let h = c(&[0.7, -0.2, 0.1]);
        let seq: Vec<Partition> = [2u32, 5, 20].iter().map(|&k| Partition::new(vec![k; 3]).unwrap()).collect();
        let report = schur_ratio_limit_check(&seq, &[1.0 / 3.0; 3], &h).unwrap();
        for p in &report.points {
            assert!(p.distance < 1e-9, "{p:?}");
        }
        let zero = schur_ratio_limit_check(&seq, &[1.0 / 3.0; 3], &c(&[0.0; 3])).unwrap();
        assert!(zero.points.iter().all(|p| (p.ratio - 1.0).norm() < 1e-13));
    }
}
