//! Scalar root finding and maximisation.

use crate::error::{Error, Result};

/// Bracketed root of a monotone-or-sign-changing `f` on `[lo, hi]`: bisection
/// until the bracket is below `bisect_tol`, then Newton steps that are only
/// accepted while they stay inside the bracket.
pub fn bisect_newton<F, D>(f: F, df: D, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoConvergence(format!(
            "root not bracketed on [{lo}, {hi}]: f = ({flo}, {fhi})"
        )));
    }
    let bisect_tol = 1e-6 * (hi - lo).abs().max(1e-300);
    while (hi - lo).abs() > bisect_tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x);
        let mut next = x - fx / d;
        if !next.is_finite() || next <= lo.min(hi) || next >= lo.max(hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= tol * (1.0 + x.abs()) {
            return Ok(x);
        }
    }
    Ok(x)
}

/// Outcome of a scalar maximisation.
#[derive(Debug, Clone, Copy)]
pub struct ScalarMax {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> ScalarMax {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while (b - a).abs() > tol && iterations < 500 {
        iterations += 1;
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    ScalarMax { x, value: f(x), iterations }
}

/// Coarse grid over `[a, b]` (both endpoints included) followed by golden
/// section in the cell around the best grid point. Copes with bimodal `f`
/// as long as the grid resolves the basins.
pub fn grid_golden_max<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n_grid: usize, tol: f64) -> ScalarMax {
    let n_grid = n_grid.max(2);
    let step = (b - a) / (n_grid - 1) as f64;
    let (mut best_i, mut best_v) = (0usize, f64::NEG_INFINITY);
    for i in 0..n_grid {
        let v = f(a + step * i as f64);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = a + step * best_i.saturating_sub(1) as f64;
    let hi = (a + step * (best_i + 1) as f64).min(b);
    let refined = golden_section_max(f, lo, hi, tol);
    if refined.value >= best_v {
        ScalarMax { iterations: refined.iterations + n_grid, ..refined }
    } else {
        ScalarMax { x: a + step * best_i as f64, value: best_v, iterations: refined.iterations + n_grid }
    }
}
