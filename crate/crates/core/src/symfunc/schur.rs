//! Schur and power-sum polynomials evaluated at explicit points.
//!
//! Two routes for `s_λ(x_1..x_r)`: the bialternant quotient when the points
//! are well separated, and a division-free divided-difference form otherwise.
//! Row `i` of the divided-difference matrix holds `x^{m_j}[x_1..x_{i+1}] =
//! h_{m_j - i}(x_1..x_{i+1})`, so coincident points need no special casing.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Relative gap below which the divided-difference route is used.
pub const CONFLUENCE_GAP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurRoute {
    Bialternant,
    DividedDifference,
}

pub fn schur_eval(lambda: &Partition, x: &[Complex64]) -> Result<Complex64> {
    schur_eval_routed(lambda, x).map(|(v, _)| v)
}

pub fn schur_eval_routed(lambda: &Partition, x: &[Complex64]) -> Result<(Complex64, SchurRoute)> {
    check_length(lambda, x.len())?;
    let scale = x.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut min_gap = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            min_gap = min_gap.min((x[i] - x[j]).norm());
        }
    }
    if min_gap < CONFLUENCE_GAP * scale {
        Ok((schur_divided_difference(lambda, x, |z| z.norm()), SchurRoute::DividedDifference))
    } else {
        Ok((schur_bialternant(lambda, x), SchurRoute::Bialternant))
    }
}

/// Exact evaluation at rational points.
pub fn schur_eval_exact(lambda: &Partition, x: &[BigRational]) -> Result<BigRational> {
    check_length(lambda, x.len())?;
    Ok(schur_divided_difference(lambda, x, |q| q.abs().to_f64().unwrap_or(f64::MAX)))
}

/// `s_λ(1,..,1)` with `r` ones, by the product formula.
pub fn schur_at_ones(lambda: &Partition, r: usize) -> Result<f64> {
    check_length(lambda, r)?;
    let l = |i: usize| lambda.part(i) as f64;
    let mut v = 1.0;
    for i in 0..r {
        for j in i + 1..r {
            v *= (l(i) - l(j) + (j - i) as f64) / (j - i) as f64;
        }
    }
    Ok(v)
}

pub fn power_sum_eval(mu: &Partition, x: &[Complex64]) -> Complex64 {
    mu.parts().iter().map(|&m| x.iter().map(|z| z.powu(m)).sum::<Complex64>()).product()
}

pub fn power_sum_eval_exact(mu: &Partition, x: &[BigRational]) -> BigRational {
    mu.parts()
        .iter()
        .map(|&m| x.iter().fold(BigRational::zero(), |acc, q| acc + num_traits::pow(q.clone(), m as usize)))
        .fold(BigRational::one(), |acc, p| acc * p)
}

fn check_length(lambda: &Partition, r: usize) -> Result<()> {
    if lambda.len() > r {
        return Err(Error::domain(format!(
            "s_{lambda} vanishes identically in {r} variables (length {} > {r})",
            lambda.len()
        )));
    }
    Ok(())
}

fn exponents(lambda: &Partition, r: usize) -> Vec<usize> {
    (0..r).map(|j| lambda.part(j) as usize + r - 1 - j).collect()
}

fn schur_bialternant(lambda: &Partition, x: &[Complex64]) -> Complex64 {
    let r = x.len();
    let m = exponents(lambda, r);
    let a: Vec<Vec<Complex64>> = x.iter().map(|xi| m.iter().map(|&mj| xi.powu(mj as u32)).collect()).collect();
    let mut vandermonde = Complex64::one();
    for i in 0..r {
        for j in i + 1..r {
            vandermonde *= x[i] - x[j];
        }
    }
    determinant(a, |z| z.norm()) / vandermonde
}

fn schur_divided_difference<T, F>(lambda: &Partition, x: &[T], magnitude: F) -> T
where
    T: Num + Clone,
    F: Fn(&T) -> f64,
{
    let r = x.len();
    if r == 0 {
        return T::one();
    }
    let m = exponents(lambda, r);
    let top = m[0];
    // h[i][k] = h_k(x_1..x_{i+1})
    let mut h: Vec<Vec<T>> = Vec::with_capacity(r);
    for (i, xi) in x.iter().enumerate() {
        let mut row: Vec<T> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let prev = if i == 0 {
                if k == 0 { T::one() } else { T::zero() }
            } else {
                h[i - 1][k].clone()
            };
            let v = if k == 0 { prev } else { prev + xi.clone() * row[k - 1].clone() };
            row.push(v);
        }
        h.push(row);
    }
    let dd: Vec<Vec<T>> = (0..r)
        .map(|i| m.iter().map(|&mj| if mj >= i { h[i][mj - i].clone() } else { T::zero() }).collect())
        .collect();
    let det = determinant(dd, magnitude);
    if (r * (r - 1) / 2) % 2 == 1 {
        T::zero() - det
    } else {
        det
    }
}

/// Gaussian elimination with partial pivoting on `magnitude`.
pub(crate) fn determinant<T, F>(mut a: Vec<Vec<T>>, magnitude: F) -> T
where
    T: Num + Clone,
    F: Fn(&T) -> f64,
{
    let n = a.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| magnitude(&a[i][col]).total_cmp(&magnitude(&a[j][col])))
            .expect("non-empty range");
        if a[pivot][col].is_zero() {
            return T::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = T::zero() - det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for row in col + 1..n {
            let factor = a[row][col].clone() / p.clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let v = a[row][k].clone() - factor.clone() * a[col][k].clone();
                a[row][k] = v;
            }
        }
    }
    det
}
