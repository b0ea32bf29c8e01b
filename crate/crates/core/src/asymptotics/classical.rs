//! Large-spin limit: free energy of a classical unit spin.

use super::eta::{langevin, langevin_prime, ln_sinhc};
use super::free_energy::{MaximizerResult, GRID_POINTS, TIE_TOLERANCE};
use crate::error::{Error, Result};
use crate::optimize::{bisect_newton, grid_golden_max};

/// Solution of `coth x - 1/x = μ` for `|μ| < 1`.
pub fn langevin_inverse(mu: f64) -> Result<f64> {
    if !(mu.abs() < 1.0) {
        return Err(Error::domain(format!("Langevin inverse needs |mu| < 1, got {mu}")));
    }
    if mu == 0.0 {
        return Ok(0.0);
    }
    let target = mu.abs();
    let mut hi = 1.0;
    while langevin(hi) <= target {
        hi *= 2.0;
    }
    let x = bisect_newton(|x| langevin(x) - target, langevin_prime, 0.0, hi, 1e-16)?;
    Ok(mu.signum() * x)
}

/// Maximiser over `μ ∈ [0, 1)` of `log(sinh x/x) - μx + βμ²` with `x = x(μ)`.
/// Positive exactly when `β > 3/2`.
pub fn classical_maximizer(beta: f64) -> Result<MaximizerResult> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    let top = 1.0 - 1e-12;
    let objective = |mu: f64| match langevin_inverse(mu) {
        Ok(x) => ln_sinhc(x) - mu * x + beta * mu * mu,
        Err(_) => f64::NEG_INFINITY,
    };
    let stationary = |mu: f64| 2.0 * beta * mu - langevin_inverse(mu).unwrap_or(f64::INFINITY);
    let curvature = |mu: f64| 2.0 * beta - 1.0 / langevin_prime(langevin_inverse(mu).unwrap_or(0.0));
    let at_zero = objective(0.0);
    let coarse = grid_golden_max(&objective, 0.0, top, GRID_POINTS, 1e-12);
    if coarse.value - at_zero < TIE_TOLERANCE {
        return Ok(MaximizerResult {
            location: 0.0,
            value: at_zero,
            second_derivative: curvature(0.0),
            converged: true,
            iterations: coarse.iterations,
        });
    }
    let cell = top / (GRID_POINTS - 1) as f64;
    let mut lo = (coarse.x - 2.0 * cell).max(0.0);
    let mut hi = (coarse.x + 2.0 * cell).min(top);
    let mut widen = 0;
    while !(stationary(lo) >= 0.0 && stationary(hi) <= 0.0) && widen < 60 {
        lo = (lo - cell).max(0.0);
        hi = (hi + cell).min(top);
        widen += 1;
    }
    let mu = bisect_newton(stationary, curvature, lo, hi, 1e-15).unwrap_or(coarse.x);
    Ok(MaximizerResult {
        location: mu,
        value: objective(mu),
        second_derivative: curvature(mu),
        converged: stationary(mu).abs() < 1e-10,
        iterations: coarse.iterations + widen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_at_three_halves() {
        assert_eq!(classical_maximizer(1.4).unwrap().location, 0.0);
        let r = classical_maximizer(1.6).unwrap();
        assert!(r.location > 0.0 && r.converged);
        let x = langevin_inverse(r.location).unwrap();
        assert!((2.0 * 1.6 * r.location - x).abs() < 1e-10);
    }

    #[test]
    fn langevin_inverse_residual() {
        for mu in [-0.9, -1e-5, 1e-8, 0.3, 0.99] {
            let x = langevin_inverse(mu).unwrap();
            assert!((langevin(x) - mu).abs() < 1e-12);
        }
        assert!(langevin_inverse(1.0).is_err());
    }

    #[test]
    fn matches_fine_scan() {
        let beta = 2.5;
        let best = (1..100_000)
            .map(|i| i as f64 / 100_000.0)
            .map(|mu| {
                let x = langevin_inverse(mu).unwrap();
                (mu, ln_sinhc(x) - mu * x + beta * mu * mu)
            })
            .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        let r = classical_maximizer(beta).unwrap();
        assert!((r.location - best.0).abs() < 1e-4);
        assert!(r.value >= best.1 - 1e-15);
    }
}
