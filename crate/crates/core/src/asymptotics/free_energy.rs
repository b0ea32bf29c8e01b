//! Mean-field free energy `g_β(m)` of the spin-`S` Heisenberg model, its
//! maximiser, and the thermodynamic quantities derived from it.

use serde::{Deserialize, Serialize};

use super::eta::{eta, eta_prime, eta_second, SpinContext};
use crate::error::{Error, Result};
use crate::optimize::{bisect_newton, grid_golden_max};

/// Grid resolution for the coarse stage of every maximisation.
pub const GRID_POINTS: usize = 512;
/// Interior and boundary maxima closer than this count as a tie.
pub const TIE_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximizerResult {
    pub location: f64,
    pub value: f64,
    pub second_derivative: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Solution of `η'(x) = m` for `|m| < S`.
pub fn x_star(m: f64, ctx: SpinContext) -> Result<f64> {
    let s = ctx.spin();
    if !(m.abs() < s) {
        return Err(Error::domain(format!("x*(m) needs |m| < S = {s}, got {m}")));
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    let target = m.abs();
    let mut hi = 1.0;
    while eta_prime(hi, ctx) <= target {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::NoConvergence(format!("x*({m}) beyond bracket")));
        }
    }
    let root = bisect_newton(
        |x| eta_prime(x, ctx) - target,
        |x| eta_second(x, ctx),
        0.0,
        hi,
        1e-16,
    )?;
    Ok(m.signum() * root)
}

/// `g_β(m) = η(x*(m)) - m x*(m) + βm²` on `[0, S]`, with the value at `m = S`
/// taken as the limit `βS²`.
pub fn g_beta(m: f64, beta: f64, ctx: SpinContext) -> Result<f64> {
    let s = ctx.spin();
    if !(0.0..=s).contains(&m) {
        return Err(Error::domain(format!("g_beta defined on [0, S], got m = {m}")));
    }
    if s - m < 1e-15 * s {
        return Ok(beta * s * s);
    }
    let x = x_star(m, ctx)?;
    Ok(eta(x, ctx) - m * x + beta * m * m)
}

/// `g_β'(m) = 2βm - x*(m)`.
pub fn g_beta_prime(m: f64, beta: f64, ctx: SpinContext) -> Result<f64> {
    Ok(2.0 * beta * m - x_star(m, ctx)?)
}

/// `g_β''(m) = 2β - 1/η''(x*(m))`.
pub fn g_beta_second(m: f64, beta: f64, ctx: SpinContext) -> Result<f64> {
    Ok(2.0 * beta - 1.0 / eta_second(x_star(m, ctx)?, ctx))
}

/// Maximiser of `g_β(m) + hm` on `[0, S)` for `h ≥ 0`.
fn maximize_with_field(beta: f64, h: f64, ctx: SpinContext) -> Result<MaximizerResult> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    if !(h >= 0.0) || !h.is_finite() {
        return Err(Error::domain(format!("field must be nonnegative, got {h}")));
    }
    let s = ctx.spin();
    let objective = |m: f64| g_beta(m, beta, ctx).map(|g| g + h * m).unwrap_or(f64::NEG_INFINITY);
    let at_zero = objective(0.0);
    let coarse = grid_golden_max(&objective, 0.0, s, GRID_POINTS, 1e-12);
    let mut iterations = coarse.iterations;

    if h == 0.0 && coarse.value - at_zero < TIE_TOLERANCE {
        return Ok(MaximizerResult {
            location: 0.0,
            value: at_zero,
            second_derivative: g_beta_second(0.0, beta, ctx)?,
            converged: true,
            iterations,
        });
    }

    // polish on the stationarity condition 2βm - x*(m) + h = 0
    let stationary = |m: f64| 2.0 * beta * m - x_star(m, ctx).unwrap_or(f64::INFINITY) + h;
    let slope = |m: f64| g_beta_second(m, beta, ctx).unwrap_or(f64::NAN);
    let cell = s / (GRID_POINTS - 1) as f64;
    let mut lo = (coarse.x - 2.0 * cell).max(0.0);
    let mut hi = (coarse.x + 2.0 * cell).min(s * (1.0 - 1e-15));
    let mut widen = 0;
    while !(stationary(lo) >= 0.0 && stationary(hi) <= 0.0) && widen < 60 {
        lo = (lo - cell).max(0.0);
        hi = s - (s - hi) / 2.0;
        widen += 1;
    }
    let location = match bisect_newton(stationary, slope, lo, hi, 1e-15) {
        Ok(m) => m,
        Err(_) => coarse.x,
    };
    iterations += widen;
    let converged = stationary(location).abs() < 1e-9;
    Ok(MaximizerResult {
        location,
        value: objective(location),
        second_derivative: g_beta_second(location, beta, ctx)?,
        converged,
        iterations,
    })
}

/// `m*(β)`, the maximiser of `g_β` on `[0, S)`. Exactly 0 when the interior
/// maximum does not beat `g_β(0)` by more than [`TIE_TOLERANCE`].
pub fn m_star(beta: f64, ctx: SpinContext) -> Result<MaximizerResult> {
    maximize_with_field(beta, 0.0, ctx)
}

/// `p(β, h) = max_{0≤m≤S} (g_β(m) + hm)`.
pub fn pressure(beta: f64, h: f64, ctx: SpinContext) -> Result<f64> {
    Ok(maximize_with_field(beta, h, ctx)?.value)
}

/// `m(β, h)`, the maximiser of `g_β(m) + hm`, which solves
/// `2βm - x*(m) + h = 0` for `h > 0`.
pub fn magnetization(beta: f64, h: f64, ctx: SpinContext) -> Result<f64> {
    Ok(maximize_with_field(beta, h, ctx)?.location)
}

/// `χ(β) = 1/(2(β_c - β))` for `β < β_c`.
pub fn susceptibility(beta: f64, ctx: SpinContext) -> Result<f64> {
    let bc = ctx.beta_c();
    if !(beta < bc) {
        return Err(Error::domain(format!("susceptibility closed form needs beta < beta_c = {bc}")));
    }
    Ok(0.5 / (bc - beta))
}

/// `m(β, dh)/dh`, a finite-difference estimate of `χ(β)`.
pub fn susceptibility_fd(beta: f64, dh: f64, ctx: SpinContext) -> Result<f64> {
    Ok(magnetization(beta, dh, ctx)? / dh)
}

/// Log of the saddle-point approximation to `L_{mn,n} - L_{mn+1,n}`:
/// `log[(1 - e^{-x*})/sqrt(2π η''(x*) n)] + n(η(x*) - m x*)`.
pub fn saddle_multiplicity(n: u32, m: f64, ctx: SpinContext) -> Result<f64> {
    if !(m > 0.0 && m < ctx.spin()) {
        return Err(Error::domain(format!(
            "saddle-point form needs 0 < m < S (the prefactor vanishes at m = 0), got {m}"
        )));
    }
    let x = x_star(m, ctx)?;
    let nf = f64::from(n);
    let prefactor = (-(-x).exp_m1()).ln() - 0.5 * (2.0 * std::f64::consts::PI * eta_second(x, ctx) * nf).ln();
    Ok(prefactor + nf * (eta(x, ctx) - m * x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{irrep_spectrum, multiplicity_table};
    use crate::special::big_ln;
    use proptest::prelude::*;

    fn half() -> SpinContext {
        SpinContext::new(1).unwrap()
    }

    #[test]
    fn x_star_basics() {
        for two_s in 1..4 {
            let c = SpinContext::new(two_s).unwrap();
            let s = c.spin();
            assert_eq!(x_star(0.0, c).unwrap(), 0.0);
            let d = 1e-7;
            let slope = (x_star(d, c).unwrap() - x_star(-d, c).unwrap()) / (2.0 * d);
            assert!((slope - 3.0 / (s * s + s)).abs() < 1e-6);
            assert!(x_star(s, c).is_err());
            assert!(x_star(-s - 0.1, c).is_err());
        }
    }

    #[test]
    fn spin_half_closed_form() {
        // η'(x) = tanh(x/2)/2 for S = 1/2, so x*(m) = 2 artanh(2m)
        for m in [0.01, 0.2, 0.45, 0.4999] {
            assert!((x_star(m, half()).unwrap() - 2.0 * (2.0 * m).atanh()).abs() < 1e-10);
        }
    }

    #[test]
    fn g_at_origin() {
        for two_s in 1..4 {
            let c = SpinContext::new(two_s).unwrap();
            assert!((g_beta(0.0, 1.0, c).unwrap() - f64::from(two_s + 1).ln()).abs() < 1e-15);
            assert_eq!(g_beta_prime(0.0, 1.0, c).unwrap(), 0.0);
        }
    }

    #[test]
    fn spin_half_transition_at_two() {
        assert_eq!(half().beta_c(), 2.0);
        assert_eq!(m_star(1.8, half()).unwrap().location, 0.0);
        let r = m_star(2.2, half()).unwrap();
        assert!(r.location > 0.0 && r.converged);
        assert!(g_beta_prime(r.location, 2.2, half()).unwrap().abs() < 1e-10);
        assert!(r.second_derivative < 0.0);
    }

    #[test]
    fn m_star_beats_dense_scan() {
        // independent scan of g on a fine grid
        let (beta, c) = (2.2, half());
        let scan = (1..200_000)
            .map(|i| i as f64 * 0.5 / 200_000.0)
            .map(|m| (m, g_beta(m, beta, c).unwrap()))
            .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        let r = m_star(beta, c).unwrap();
        assert!(r.value >= scan.1 - 1e-15);
        assert!((r.location - scan.0).abs() < 1e-4);
    }

    #[test]
    fn zero_field_pressure_is_max_of_g() {
        let c = SpinContext::new(2).unwrap();
        for beta in [0.5, 1.0, 2.0] {
            assert_eq!(pressure(beta, 0.0, c).unwrap(), m_star(beta, c).unwrap().value);
        }
    }

    #[test]
    fn susceptibility_closed_form_and_difference() {
        assert!((susceptibility(1.5, half()).unwrap() - 1.0).abs() < 1e-15);
        assert!(susceptibility(2.0, half()).is_err());
        let fd = susceptibility_fd(1.5, 1e-6, half()).unwrap();
        assert!((fd - 1.0).abs() < 1e-5);
    }

    #[test]
    fn pressure_derivative_is_magnetization() {
        let c = half();
        for (beta, h) in [(1.0, 0.3), (2.5, 0.1), (3.0, 1.0)] {
            let d = 1e-5;
            let fd = (pressure(beta, h + d, c).unwrap() - pressure(beta, h - d, c).unwrap()) / (2.0 * d);
            assert!((fd - magnetization(beta, h, c).unwrap()).abs() < 1e-4);
        }
    }

    #[test]
    fn magnetization_satisfies_stationarity() {
        let c = SpinContext::new(2).unwrap();
        for (beta, h) in [(0.5, 0.2), (0.75, 1e-6), (2.0, 3.0), (1.0, 8.0)] {
            let m = magnetization(beta, h, c).unwrap();
            assert!(m > 0.0 && m < 1.0);
            let res = 2.0 * beta * m - x_star(m, c).unwrap() + h;
            assert!(res.abs() < 1e-8, "β={beta} h={h} residual {res}");
        }
    }

    #[test]
    fn saddle_against_exact_multiplicity() {
        let c = half();
        let mut last = f64::INFINITY;
        for n in [100u32, 200, 400] {
            let j = (0.2 * f64::from(n)).floor() as u64;
            let exact = big_ln(&irrep_spectrum(&multiplicity_table(n, 1).unwrap()).degeneracy(2 * j));
            let err = (exact - saddle_multiplicity(n, j as f64 / f64::from(n), c).unwrap()).exp_m1().abs();
            assert!(err < last);
            last = err;
        }
        assert!(last < 0.03);
        assert!(saddle_multiplicity(10, 0.0, c).is_err());
    }

    proptest! {
        #[test]
        fn x_star_inverts_eta_prime(frac in -0.999f64..0.999, two_s in 1u32..=3) {
            let c = SpinContext::new(two_s).unwrap();
            let m = frac * c.spin();
            let x = x_star(m, c).unwrap();
            prop_assert!((eta_prime(x, c) - m).abs() < 1e-12);
            prop_assert_eq!(x.signum() * m.signum() >= 0.0, true);
            prop_assert!((x_star(-m, c).unwrap() + x).abs() < 1e-12 * (1.0 + x.abs()));
        }

        #[test]
        fn saddle_exponent_identity(m_frac in 0.05f64..0.95, beta in 0.1f64..5.0) {
            let c = half();
            let m = m_frac * 0.5;
            let x = x_star(m, c).unwrap();
            let lhs = eta(x, c) - m * x;
            prop_assert!((lhs - (g_beta(m, beta, c).unwrap() - beta * m * m)).abs() < 1e-12);
        }
    }
}
