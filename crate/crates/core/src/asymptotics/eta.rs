//! `η(x) = log Σ_{σ=-S}^{S} e^{σx}` and the Langevin-type functions of the
//! classical spin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this `|x|` the η family uses its power series.
const SERIES_SWITCH: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinContext {
    pub two_s: u32,
    pub theta: u32,
}

impl SpinContext {
    pub fn new(two_s: u32) -> Result<Self> {
        if two_s == 0 {
            return Err(Error::domain("2S must be at least 1"));
        }
        Ok(SpinContext { two_s, theta: two_s + 1 })
    }

    /// Context for `θ = 2S + 1` colours.
    pub fn from_theta(theta: u32) -> Result<Self> {
        if theta < 2 {
            return Err(Error::domain("theta must be at least 2"));
        }
        Self::new(theta - 1)
    }

    pub fn spin(&self) -> f64 {
        f64::from(self.two_s) / 2.0
    }

    /// `(3/2) / (S² + S)`.
    pub fn beta_c(&self) -> f64 {
        let s = self.spin();
        1.5 / (s * s + s)
    }
}

/// Tilted moments of `a ∈ {0..2S}` under weights `e^{-a|x|}`:
/// `(log Σ w, mean, variance)`.
fn tilted(x: f64, two_s: u32) -> (f64, f64, f64) {
    let t = x.abs();
    let (mut z, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for a in 0..=two_s {
        let a = f64::from(a);
        let w = (-a * t).exp();
        z += w;
        m1 += a * w;
        m2 += a * a * w;
    }
    let mean = m1 / z;
    (z.ln(), mean, (m2 / z - mean * mean).max(0.0))
}

/// `log(sinh y / y)`.
pub fn ln_sinhc(y: f64) -> f64 {
    let y = y.abs();
    if y < 1.0 {
        // sinh y / y - 1 = Σ_{k≥1} y^{2k}/(2k+1)!
        let y2 = y * y;
        let (mut term, mut sum) = (1.0, 0.0);
        for k in 1..40 {
            term *= y2 / ((2 * k) as f64 * (2 * k + 1) as f64);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        sum.ln_1p()
    } else {
        y + (-(-2.0 * y).exp()).ln_1p() - (2.0 * y).ln()
    }
}

/// Langevin function `coth y - 1/y`, the derivative of [`ln_sinhc`].
pub fn langevin(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    if y.abs() < 1.0 {
        // (y cosh y - sinh y) / (y sinh y) with the numerator as a series
        let y2 = y * y;
        let (mut pow, mut fact, mut num) = (y, 1.0, 0.0);
        for k in 1..40 {
            pow *= y2;
            fact *= (2 * k) as f64 * (2 * k + 1) as f64;
            let term = (2 * k) as f64 * pow / fact;
            num += term;
            if term.abs() < 1e-18 * num.abs() {
                break;
            }
        }
        num / (y * y * (1.0 + sinh_series_tail(y2)))
    } else {
        1.0 / y.tanh() - 1.0 / y
    }
}

/// `sinh y / y - 1`.
fn sinh_series_tail(y2: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 0.0);
    for k in 1..40 {
        term *= y2 / ((2 * k) as f64 * (2 * k + 1) as f64);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// `1/y² - 1/sinh² y`, the derivative of [`langevin`].
pub fn langevin_prime(y: f64) -> f64 {
    let y = y.abs();
    if y == 0.0 {
        return 1.0 / 3.0;
    }
    if y < 1.0 {
        // (sinh² y - y²) / (y² sinh² y); sinh² y - y² = Σ_{k≥2} (2y)^{2k} / (2 (2k)!)
        let (mut pow, mut fact) = ((2.0 * y).powi(2), 2.0);
        let mut num = 0.0;
        for k in 2..40 {
            pow *= (2.0 * y).powi(2);
            fact *= (2 * k - 1) as f64 * (2 * k) as f64;
            let term = pow / (2.0 * fact);
            num += term;
            if term < 1e-18 * num {
                break;
            }
        }
        let sinhc = 1.0 + sinh_series_tail(y * y);
        num / (y.powi(4) * sinhc * sinhc)
    } else {
        1.0 / (y * y) - 1.0 / y.sinh().powi(2)
    }
}

/// `η(x)`, with `η(0) = log(2S+1)`.
pub fn eta(x: f64, ctx: SpinContext) -> f64 {
    let th = f64::from(ctx.theta);
    if x.abs() < SERIES_SWITCH {
        return th.ln() + ln_sinhc(th * x / 2.0) - ln_sinhc(x / 2.0);
    }
    let (ln_z, _, _) = tilted(x, ctx.two_s);
    ctx.spin() * x.abs() + ln_z
}

/// `η'(x)`, odd with limits `±S`.
pub fn eta_prime(x: f64, ctx: SpinContext) -> f64 {
    let th = f64::from(ctx.theta);
    if x.abs() < SERIES_SWITCH {
        return th / 2.0 * langevin(th * x / 2.0) - 0.5 * langevin(x / 2.0);
    }
    let (_, mean, _) = tilted(x, ctx.two_s);
    x.signum() * (ctx.spin() - mean)
}

/// `η''(x) > 0`, with `η''(0) = (S² + S)/3`.
pub fn eta_second(x: f64, ctx: SpinContext) -> f64 {
    let th = f64::from(ctx.theta);
    if x.abs() < SERIES_SWITCH {
        return th * th / 4.0 * langevin_prime(th * x / 2.0) - 0.25 * langevin_prime(x / 2.0);
    }
    tilted(x, ctx.two_s).2
}
