//! The interchange-model functional
//! `φ_β(x) = (β/2)(Σ x_i² - 1) - Σ x_i log x_i` on the simplex.

use serde::{Deserialize, Serialize};

use super::eta::SpinContext;
use super::free_energy::{MaximizerResult, GRID_POINTS, TIE_TOLERANCE};
use crate::error::{Error, Result};
use crate::optimize::{bisect_newton, grid_golden_max};

/// `φ_β(x)` for a point of the probability simplex (any order).
pub fn phi_beta(x: &[f64], beta: f64) -> Result<f64> {
    if x.iter().any(|&v| !(v >= 0.0)) {
        return Err(Error::domain("simplex coordinates must be nonnegative"));
    }
    let total: f64 = x.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::domain(format!("simplex coordinates must sum to 1, got {total}")));
    }
    Ok(phi_unchecked(x, beta))
}

fn phi_unchecked(x: &[f64], beta: f64) -> f64 {
    let sq: f64 = x.iter().map(|v| v * v).sum();
    let ent: f64 = x.iter().filter(|&&v| v > 0.0).map(|v| v * v.ln()).sum();
    beta / 2.0 * (sq - 1.0) - ent
}

/// Transition point `β_c(S) = 4S/(2S-1) log(2S)`, continued to 2 at `S = 1/2`.
pub fn interchange_beta_c(ctx: SpinContext) -> f64 {
    if ctx.two_s == 1 {
        return 2.0;
    }
    let two_s = f64::from(ctx.two_s);
    2.0 * two_s / (two_s - 1.0) * two_s.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterchangeMaximum {
    /// Location is the largest coordinate `x_1*`.
    pub result: MaximizerResult,
    /// `x_1* - x_2*`.
    pub z_star: f64,
}

impl InterchangeMaximum {
    /// The maximising point `(x_1*, x_2*, ..., x_2*)`.
    pub fn point(&self, ctx: SpinContext) -> Vec<f64> {
        let th = ctx.theta as usize;
        let x1 = self.result.location;
        let rest = (1.0 - x1) / (th - 1) as f64;
        std::iter::once(x1).chain(std::iter::repeat_n(rest, th - 1)).collect()
    }
}

/// Maximiser of `φ_β` over the family `(t, (1-t)/(θ-1), ...)`, `t ∈ [1/θ, 1)`.
pub fn interchange_maximizer(beta: f64, ctx: SpinContext) -> Result<InterchangeMaximum> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    let th = f64::from(ctx.theta);
    let family = |t: f64| {
        let rest = (1.0 - t) / (th - 1.0);
        let sq = t * t + (th - 1.0) * rest * rest;
        let ent = xlogx(t) + (th - 1.0) * xlogx(rest);
        beta / 2.0 * (sq - 1.0) - ent
    };
    let slope = |t: f64| beta * (th * t - 1.0) / (th - 1.0) - (t * (th - 1.0) / (1.0 - t)).ln();
    let curvature = |t: f64| beta * th / (th - 1.0) - 1.0 / t - 1.0 / (1.0 - t);
    let uniform = 1.0 / th;
    let at_uniform = family(uniform);
    let coarse = grid_golden_max(&family, uniform, 1.0, GRID_POINTS, 1e-12);
    let mut iterations = coarse.iterations;

    let (location, converged) = if coarse.value - at_uniform < TIE_TOLERANCE {
        (uniform, true)
    } else {
        let cell = (1.0 - uniform) / (GRID_POINTS - 1) as f64;
        let mut lo = (coarse.x - 2.0 * cell).max(uniform + 1e-15);
        let mut hi = (coarse.x + 2.0 * cell).min(1.0 - 1e-15);
        let mut widen = 0;
        while !(slope(lo) >= 0.0 && slope(hi) <= 0.0) && widen < 60 {
            lo = (lo - cell).max(uniform + 1e-15);
            hi = 1.0 - (1.0 - hi) / 2.0;
            widen += 1;
        }
        iterations += widen;
        let t = bisect_newton(slope, curvature, lo, hi, 1e-15).unwrap_or(coarse.x);
        (t, slope(t).abs() < 1e-9)
    };
    let result = MaximizerResult {
        location,
        value: family(location),
        second_derivative: curvature(location),
        converged,
        iterations,
    };
    Ok(InterchangeMaximum { result, z_star: (th * location - 1.0) / (th - 1.0) })
}

fn xlogx(v: f64) -> f64 {
    if v > 0.0 {
        v * v.ln()
    } else {
        0.0
    }
}
