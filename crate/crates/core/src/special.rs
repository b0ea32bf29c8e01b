//! Small special functions shared across the crate.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// `log(sum(exp(v)))` with the maximum subtracted first. Returns `-inf` for an
/// empty or all `-inf` input.
pub fn log_sum_exp<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let v: Vec<f64> = values.into_iter().collect();
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + v.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// `ln(1 - exp(x))` for `x <= 0`.
pub fn ln_1m_exp(x: f64) -> f64 {
    debug_assert!(x <= 0.0);
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// Natural logarithm of a big unsigned integer; `-inf` for zero.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `sinh(z) / z`, equal to 1 at the origin.
pub fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        Complex64::new(1.0, 0.0) + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// Modified Bessel function `I_0(z) = sum_k (z/2)^{2k} / (k!)^2`.
pub fn bessel_i0(z: Complex64) -> Complex64 {
    let q = z * z / 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..500 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// `ln(n!)` by direct summation; exact enough for the small arguments used here.
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn factorial(n: u32) -> f64 {
    (2..=n).map(f64::from).product()
}
