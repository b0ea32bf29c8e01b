//! Counts of product states by total `S^(3)` eigenvalue and the resulting
//! irrep degeneracies.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::special::{big_ln, ln_1m_exp, log_sum_exp};

/// Default bound on `n * two_s` for exact big-integer tables.
pub const DEFAULT_EXACT_CAP: u64 = 10_000;

/// Bound on `n * two_s` for the floating-point log-space tables.
pub const LOG_MODE_CAP: u64 = 40_000;

/// Above this `n * two_s` the log-space convolution replaces the exact table
/// when only logarithms are needed; big-integer work grows cubically.
const EXACT_FOR_LOGS_LIMIT: u64 = 4096;

/// `L_{M,n}`: number of `(σ_1..σ_n) ∈ {-S..S}^n` with `Σσ = M`.
///
/// Stored densely by `k = M + nS`, so `two_m = 2k - n*two_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub n: u32,
    pub two_s: u32,
    counts: Vec<BigUint>,
}

impl MultiplicityTable {
    /// `n * 2S`, the largest value of `2M`.
    pub fn max_two_m(&self) -> i64 {
        i64::from(self.n) * i64::from(self.two_s)
    }

    /// Count for total magnetisation `two_m / 2`; zero off the lattice.
    pub fn count(&self, two_m: i64) -> BigUint {
        let top = self.max_two_m();
        if two_m.abs() > top || (two_m + top) % 2 != 0 {
            return BigUint::zero();
        }
        self.counts[((two_m + top) / 2) as usize].clone()
    }

    /// `(two_m, count)` pairs in increasing `two_m`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        let top = self.max_two_m();
        self.counts.iter().enumerate().map(move |(k, c)| (2 * k as i64 - top, c))
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

fn check_args(n: u32, two_s: u32) -> Result<()> {
    if n == 0 || two_s == 0 {
        return Err(Error::domain("n and 2S must be positive"));
    }
    Ok(())
}

/// Exact table with the default cap.
pub fn multiplicity_table(n: u32, two_s: u32) -> Result<MultiplicityTable> {
    multiplicity_table_capped(n, two_s, DEFAULT_EXACT_CAP)
}

/// Exact table by iterated convolution with the uniform `(2S+1)`-point
/// distribution; `cap` bounds `n * two_s`.
pub fn multiplicity_table_capped(n: u32, two_s: u32, cap: u64) -> Result<MultiplicityTable> {
    check_args(n, two_s)?;
    let size = u64::from(n) * u64::from(two_s);
    if size > cap {
        return Err(Error::SizeCap { what: "n*2S", value: size, cap });
    }
    let theta = two_s as usize + 1;
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let len = row.len() + two_s as usize;
        let mut next = Vec::with_capacity(len);
        let mut window = BigUint::zero();
        for k in 0..len {
            if k < row.len() {
                window += &row[k];
            }
            if k >= theta {
                window -= &row[k - theta];
            }
            next.push(window.clone());
        }
        row = next;
    }
    Ok(MultiplicityTable { n, two_s, counts: row })
}

/// `ln L_{M,n}` by log-sum-exp convolution, indexed like the exact table.
pub fn log_multiplicity_table(n: u32, two_s: u32) -> Result<Vec<f64>> {
    check_args(n, two_s)?;
    let size = u64::from(n) * u64::from(two_s);
    if size > LOG_MODE_CAP {
        return Err(Error::SizeCap { what: "n*2S", value: size, cap: LOG_MODE_CAP });
    }
    let theta = two_s as usize + 1;
    let mut row = vec![0.0f64];
    for _ in 0..n {
        let len = row.len() + two_s as usize;
        let next = (0..len)
            .map(|k| {
                let lo = k.saturating_sub(theta - 1);
                let hi = k.min(row.len() - 1);
                log_sum_exp(row[lo..=hi].iter().copied())
            })
            .collect();
        row = next;
    }
    Ok(row)
}

/// Degeneracies `d_J = L_{J,n} - L_{J+1,n}` of the spin-`J` irreps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepSpectrum {
    pub n: u32,
    pub two_s: u32,
    /// Indexed by `i` with `two_j = min_two_j + 2i`.
    degeneracies: Vec<BigUint>,
}

impl IrrepSpectrum {
    /// Smallest `2J`: 0 or 1 by the parity of `n * 2S`.
    pub fn min_two_j(&self) -> u64 {
        u64::from(self.n) * u64::from(self.two_s) % 2
    }

    pub fn degeneracy(&self, two_j: u64) -> BigUint {
        let min = self.min_two_j();
        if two_j < min || (two_j - min) % 2 != 0 {
            return BigUint::zero();
        }
        self.degeneracies
            .get(((two_j - min) / 2) as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// `(two_j, d_J)` pairs in increasing `J`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> + '_ {
        let min = self.min_two_j();
        self.degeneracies.iter().enumerate().map(move |(i, d)| (min + 2 * i as u64, d))
    }

    /// `Σ_J (2J+1) d_J`, which must equal `(2S+1)^n`.
    pub fn dimension(&self) -> BigUint {
        self.iter().map(|(tj, d)| d * BigUint::from(tj + 1)).sum()
    }
}

pub fn irrep_spectrum(table: &MultiplicityTable) -> IrrepSpectrum {
    let top = table.max_two_m();
    let min = top % 2;
    let degeneracies = (min..=top)
        .step_by(2)
        .map(|two_j| {
            let here = table.count(two_j);
            let above = table.count(two_j + 2);
            here - above
        })
        .collect();
    IrrepSpectrum { n: table.n, two_s: table.two_s, degeneracies }
}

/// `ln d_J` for `two_j = min_two_j + 2i`, `-inf` where `d_J = 0`. Exact
/// big integers for moderate sizes, log-space convolution beyond.
pub fn ln_degeneracies(n: u32, two_s: u32) -> Result<Vec<f64>> {
    check_args(n, two_s)?;
    let size = u64::from(n) * u64::from(two_s);
    if size <= EXACT_FOR_LOGS_LIMIT {
        let spec = irrep_spectrum(&multiplicity_table(n, two_s)?);
        return Ok(spec.degeneracies.iter().map(big_ln).collect());
    }
    let ln_l = log_multiplicity_table(n, two_s)?;
    let top = size as usize;
    let min = top % 2;
    Ok((min..=top)
        .step_by(2)
        .map(|two_j| {
            let k = (two_j + top) / 2;
            let here = ln_l[k];
            match ln_l.get(k + 1) {
                None => here,
                Some(&above) if above >= here => f64::NEG_INFINITY,
                Some(&above) => here + ln_1m_exp(above - here),
            }
        })
        .collect())
}
