//! `R(h; x) = det[e^{h_i x_j}] ∏_{i<j} (j-i) / ((h_i-h_j)(x_i-x_j))`,
//! continued to coincident arguments.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{factorial, sinhc};

/// Arguments closer than this (relative to their scale) count as equal.
pub const CONFLUENCE_TOL: f64 = 1e-6;
/// The raw determinant is only trusted when every pair of `h` and of `x`
/// is at least this far apart; closer pairs go through divided differences.
pub const GENERIC_GAP: f64 = 0.1;

/// Evaluation path chosen by [`r_function`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RRoute {
    /// Equally spaced `h`: a product of `sinh(u)/u` factors.
    ArithmeticField,
    /// `h = (a, b, ..., b)` and `x = (x, y, ..., y)`.
    Projector,
    /// `x = (x, y, ..., y)` with well separated `h`.
    ConfluentPoints,
    /// All arguments well separated.
    Generic,
    /// Anything else, via the matrix exponential of a Kronecker product of
    /// bidiagonal matrices.
    DividedDifference,
}

/// `∏_{k=1}^{θ-1} k!` = `∏_{i<j} (j - i)`.
fn superfactorial(theta: usize) -> f64 {
    (1..theta as u32).map(factorial).product()
}

pub fn r_function(h: &[Complex64], x: &[f64]) -> Result<Complex64> {
    r_function_routed(h, x).map(|(v, _)| v)
}

/// [`r_function`] together with the evaluation path it took.
pub fn r_function_routed(h: &[Complex64], x: &[f64]) -> Result<(Complex64, RRoute)> {
    let theta = h.len();
    if theta == 0 || x.len() != theta {
        return Err(Error::domain(format!(
            "R needs equal nonempty lengths, got {} and {}",
            theta,
            x.len()
        )));
    }
    if x.iter().any(|v| !v.is_finite()) || h.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::domain("R arguments must be finite"));
    }
    if theta == 1 {
        return Ok(((h[0] * x[0]).exp(), RRoute::Generic));
    }
    if let Some(d) = arithmetic_step(h) {
        return Ok((arithmetic_field(h, d, x), RRoute::ArithmeticField));
    }
    let x_c: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let x_split = outlier_split(&x_c);
    if let (Some((xo, y)), Some((a, b))) = (x_split, outlier_split(h)) {
        let sum_x: f64 = x.iter().sum();
        return Ok((projector_form(theta, a, b, xo.re, y.re, sum_x), RRoute::Projector));
    }
    let h_apart = min_gap(h) >= GENERIC_GAP * scale(h);
    if let Some((xo, y)) = x_split {
        if h_apart && (xo - y).norm() >= GENERIC_GAP * scale(&x_c) {
            return Ok((confluent_points(h, xo.re, y.re), RRoute::ConfluentPoints));
        }
    }
    if h_apart && min_gap(&x_c) >= GENERIC_GAP * scale(&x_c) {
        return Ok((generic(h, x), RRoute::Generic));
    }
    Ok((divided_difference(h, x), RRoute::DividedDifference))
}

fn scale(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

fn min_gap(v: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            gap = gap.min((v[i] - v[j]).norm());
        }
    }
    gap
}

/// Common step `d` when `h_i = h_1 + (i-1) d` to rounding accuracy.
fn arithmetic_step(h: &[Complex64]) -> Option<Complex64> {
    let k = h.len();
    let d = (h[k - 1] - h[0]) / (k - 1) as f64;
    let tol = 1e-13 * scale(h);
    h.iter()
        .enumerate()
        .all(|(i, &hi)| (hi - h[0] - d * i as f64).norm() <= tol)
        .then_some(d)
}

/// `e^{mean(h) Σx} ∏_{i<j} sinhc(d (x_j - x_i)/2)`.
fn arithmetic_field(h: &[Complex64], d: Complex64, x: &[f64]) -> Complex64 {
    let mean = h.iter().sum::<Complex64>() / h.len() as f64;
    let mut out = (mean * x.iter().sum::<f64>()).exp();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            out *= sinhc(d * ((x[j] - x[i]) / 2.0));
        }
    }
    out
}

/// If all but one entry agree to [`CONFLUENCE_TOL`], returns
/// `(outlier, mean of the rest)`. A fully clustered vector also qualifies.
fn outlier_split(v: &[Complex64]) -> Option<(Complex64, Complex64)> {
    let tol = CONFLUENCE_TOL * scale(v);
    (0..v.len()).find_map(|skip| {
        let rest: Vec<Complex64> = v.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &z)| z).collect();
        let mean = rest.iter().sum::<Complex64>() / rest.len() as f64;
        rest.iter().all(|z| (z - mean).norm() <= tol).then_some((v[skip], mean))
    })
}

/// `R(a, b..b; x, y..y) = e^{b Σx} e^{(a-b)y} (θ-1)! w^{-(θ-1)} Σ_{j≥θ-1} w^j/j!`
/// with `w = (a-b)(x-y)`.
fn projector_form(theta: usize, a: Complex64, b: Complex64, x: f64, y: f64, sum_x: f64) -> Complex64 {
    let w = (a - b) * (x - y);
    (b * sum_x + (a - b) * y).exp() * normalised_exp_tail(theta - 1, w)
}

/// `k! w^{-k} (e^w - Σ_{j<k} w^j/j!)`, equal to 1 at `w = 0`.
fn normalised_exp_tail(k: usize, w: Complex64) -> Complex64 {
    if w.norm() <= 2.0 {
        // Σ_{j≥0} w^j k!/(j+k)!
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for j in 1..200 {
            term *= w / (j + k) as f64;
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        return sum;
    }
    let mut partial = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for j in 0..k {
        partial += term;
        term *= w / (j + 1) as f64;
    }
    (w.exp() - partial) * factorial(k as u32) / w.powu(k as u32)
}

/// `x = (x, y, ..., y)`:
/// `(θ-1)! e^{yΣh} (x-y)^{-(θ-1)} det[h_i^0 .. h_i^{θ-2} | e^{h_i(x-y)}] / ∏_{i<j}(h_j-h_i)`.
fn confluent_points(h: &[Complex64], x: f64, y: f64) -> Complex64 {
    let theta = h.len();
    let z = x - y;
    let m = DMatrix::from_fn(theta, theta, |i, j| {
        if j + 1 == theta {
            (h[i] * z).exp()
        } else {
            h[i].powu(j as u32)
        }
    });
    let mut vandermonde = Complex64::new(1.0, 0.0);
    for i in 0..theta {
        for j in i + 1..theta {
            vandermonde *= h[j] - h[i];
        }
    }
    let sum_h: Complex64 = h.iter().sum();
    (sum_h * y).exp() * factorial(theta as u32 - 1) / z.powi(theta as i32 - 1) * m.determinant() / vandermonde
}

fn generic(h: &[Complex64], x: &[f64]) -> Complex64 {
    let theta = h.len();
    let m = DMatrix::from_fn(theta, theta, |i, j| (h[i] * x[j]).exp());
    let mut denom = Complex64::new(1.0, 0.0);
    for i in 0..theta {
        for j in i + 1..theta {
            denom *= (h[i] - h[j]) * ((x[i] - x[j]) / (j - i) as f64);
        }
    }
    m.determinant() / denom
}

/// `∏ k! · det[e^{hx}[h_1..h_i; x_1..x_j]]`. The bivariate divided
/// differences are the first row of `exp(H ⊗ X)` with `H`, `X` upper
/// bidiagonal (nodes on the diagonal, ones above).
fn divided_difference(h: &[Complex64], x: &[f64]) -> Complex64 {
    let theta = h.len();
    let hb = DMatrix::from_fn(theta, theta, |i, j| {
        if i == j {
            h[i]
        } else if j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let xb = DMatrix::from_fn(theta, theta, |i, j| {
        if i == j {
            Complex64::new(x[i], 0.0)
        } else if j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let e = hb.kronecker(&xb).exp();
    let m = DMatrix::from_fn(theta, theta, |i, j| e[(0, i * theta + j)]);
    m.determinant() * superfactorial(theta)
}
