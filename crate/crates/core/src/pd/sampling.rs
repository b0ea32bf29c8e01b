//! Stick-breaking samples of PD(θ) and Ewens permutations.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

pub const DEFAULT_TRUNCATION: f64 = 1e-12;

/// Ordered random partition of `[0, 1]`; `residual` is the unbroken stick.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PDSample {
    pub parts: Vec<f64>,
    pub residual: f64,
    pub theta: f64,
}

impl PDSample {
    pub fn largest(&self) -> f64 {
        self.parts.first().copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.parts.iter().sum::<f64>() + self.residual
    }
}

/// Sticks `Y_k = B_k ∏_{i<k}(1 - B_i)` in breaking order with Beta(1,θ)
/// `B_k = 1 - U^{1/θ}`, stopping once the remainder drops below `truncation`.
/// Returns the sticks and the remainder.
pub fn stick_breaking_sticks<R: Rng + ?Sized>(theta: f64, rng: &mut R, truncation: f64) -> Result<(Vec<f64>, f64)> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::domain(format!("theta must be positive, got {theta}")));
    }
    if !(truncation > 0.0 && truncation < 1.0) {
        return Err(Error::domain(format!("truncation must lie in (0, 1), got {truncation}")));
    }
    let inv = 1.0 / theta;
    let mut remaining = 1.0;
    let mut sticks = Vec::new();
    while remaining >= truncation {
        let u: f64 = 1.0 - rng.random::<f64>();
        let keep = u.powf(inv);
        let next = remaining * keep;
        sticks.push(remaining - next);
        remaining = next;
    }
    Ok((sticks, remaining))
}

/// A PD(θ) sample: stick-breaking sorted by size, empty sticks dropped.
pub fn stick_breaking_sample<R: Rng + ?Sized>(theta: f64, rng: &mut R, truncation: f64) -> Result<PDSample> {
    let (mut parts, residual) = stick_breaking_sticks(theta, rng, truncation)?;
    parts.retain(|&p| p > 0.0);
    parts.sort_by(|a, b| b.total_cmp(a));
    Ok(PDSample { parts, residual, theta })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EwensPermutation {
    pub n: usize,
    pub cycle_type: Partition,
}

/// Cycle type of an Ewens(θ) permutation of `n` by the Chinese restaurant
/// process: customer `i` opens a new table with probability `θ/(θ+i)` and
/// otherwise sits next to a uniformly chosen earlier customer.
pub fn ewens_sample<R: Rng + ?Sized>(n: usize, theta: f64, rng: &mut R) -> Result<EwensPermutation> {
    if n == 0 {
        return Err(Error::domain("Ewens sample needs n >= 1"));
    }
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::domain(format!("theta must be positive, got {theta}")));
    }
    let mut table_of = Vec::with_capacity(n);
    let mut sizes: Vec<u32> = Vec::new();
    for i in 0..n {
        let table = if rng.random::<f64>() * (theta + i as f64) < theta {
            sizes.push(0);
            sizes.len() - 1
        } else {
            table_of[rng.random_range(0..i)]
        };
        sizes[table] += 1;
        table_of.push(table);
    }
    Ok(EwensPermutation { n, cycle_type: Partition::from_unsorted(sizes) })
}
