//! Fixed-point arithmetic with 400 fractional bits and the generic
//! determinant form of `R(h; x)` evaluated in it. Used as an oracle for the
//! confluent limits, which double precision cannot reach through the
//! generic formula.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

const FRAC_BITS: u32 = 400;
/// `exp` halves its argument this many times before summing the series.
const EXP_HALVINGS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn from_int(v: i64) -> Self {
        Fixed(BigInt::from(v) << FRAC_BITS)
    }

    /// Exact conversion of a finite double, rounded toward `-inf` below
    /// `2^-400`.
    pub fn from_f64(v: f64) -> Self {
        let r = BigRational::from_float(v).expect("finite input");
        Fixed((r.numer() << FRAC_BITS) / r.denom())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("in range") / 2f64.powi(FRAC_BITS as i32)
    }

    pub fn abs(&self) -> Self {
        Fixed(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn div(&self, other: &Fixed) -> Fixed {
        Fixed((&self.0 << FRAC_BITS) / &other.0)
    }

    fn div_int(&self, k: u64) -> Fixed {
        Fixed(&self.0 / BigInt::from(k))
    }

    pub fn exp(&self) -> Fixed {
        let y = Fixed(&self.0 >> EXP_HALVINGS);
        let mut term = Fixed::from_int(1);
        let mut sum = term.clone();
        for k in 1.. {
            term = (&term * &y).div_int(k);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        for _ in 0..EXP_HALVINGS {
            sum = &sum * &sum;
        }
        sum
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 + &o.0)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, o: &Fixed) -> Fixed {
        Fixed(&self.0 - &o.0)
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, o: &Fixed) -> Fixed {
        Fixed((&self.0 * &o.0) >> FRAC_BITS)
    }
}

/// Gaussian elimination with partial pivoting.
pub fn determinant(mut a: Vec<Vec<Fixed>>) -> Fixed {
    let n = a.len();
    let mut det = Fixed::from_int(1);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs())).unwrap();
        if a[pivot][col].is_zero() {
            return Fixed::from_int(0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = &Fixed::from_int(0) - &det;
        }
        det = &det * &a[col][col];
        for row in col + 1..n {
            let factor = a[row][col].div(&a[col][col]);
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[row][k] = &a[row][k] - &delta;
            }
        }
    }
    det
}

fn vandermonde(v: &[Fixed]) -> Fixed {
    let mut p = Fixed::from_int(1);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            p = &p * &(&v[j] - &v[i]);
        }
    }
    p
}

/// `∏_{k<θ} k! · det[e^{h_i x_j}] / (Δ(h) Δ(x))` for distinct entries.
pub fn r_generic(h: &[Fixed], x: &[Fixed]) -> Fixed {
    let theta = h.len();
    let m: Vec<Vec<Fixed>> = h.iter().map(|hi| x.iter().map(|xj| (hi * xj).exp()).collect()).collect();
    let mut superfactorial = 1i64;
    let mut fact = 1i64;
    for k in 1..theta as i64 {
        fact *= k;
        superfactorial *= fact;
    }
    let num = &determinant(m) * &Fixed::from_int(superfactorial);
    num.div(&(&vandermonde(h) * &vandermonde(x)))
}

/// `R(h + εa; x + εb)` at `ε = eps0 / 2^j`, `j = 0..levels`, extrapolated to
/// `ε = 0` by repeated Richardson elimination of the powers `ε, ε², ...`.
pub fn r_richardson(h: &[f64], x: &[f64], a: &[f64], b: &[f64], eps0: f64, levels: usize) -> f64 {
    let shifted = |base: &[f64], dir: &[f64], eps: f64| -> Vec<Fixed> {
        let e = Fixed::from_f64(eps);
        base.iter().zip(dir).map(|(&v, &d)| &Fixed::from_f64(v) + &(&e * &Fixed::from_f64(d))).collect()
    };
    let mut table: Vec<Fixed> = (0..levels)
        .map(|j| {
            let eps = eps0 / 2f64.powi(j as i32);
            r_generic(&shifted(h, a, eps), &shifted(x, b, eps))
        })
        .collect();
    for k in 1..levels {
        let scale = Fixed::from_int(1 << k);
        let denom = Fixed::from_int((1 << k) - 1);
        for j in (k..levels).rev() {
            let lifted = &(&scale * &table[j]) - &table[j - 1];
            table[j] = lifted.div(&denom);
        }
    }
    table[levels - 1].to_f64()
}

