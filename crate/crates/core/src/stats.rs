//! Monte Carlo error bars and the two-sample Kolmogorov-Smirnov test.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl Estimate {
    /// Number of standard errors separating the estimate from `target`.
    pub fn z_score(&self, target: f64) -> f64 {
        if self.std_error == 0.0 {
            if self.mean == target { 0.0 } else { f64::INFINITY }
        } else {
            (self.mean - target).abs() / self.std_error
        }
    }

    pub fn within(&self, target: f64, n_se: f64) -> bool {
        self.z_score(target) <= n_se
    }
}

/// Mean and naive standard error for independent samples.
pub fn mean_se(xs: &[f64]) -> Estimate {
    let n = xs.len();
    if n == 0 {
        return Estimate { mean: f64::NAN, std_error: f64::NAN, samples: 0 };
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Estimate { mean, std_error: f64::INFINITY, samples: 1 };
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Estimate { mean, std_error: (var / n as f64).sqrt(), samples: n }
}

/// Mean with a batch-means standard error for a correlated series. Uses
/// `n_batches` contiguous batches (trailing remainder dropped from the error
/// estimate but kept in the mean).
pub fn batch_means(xs: &[f64], n_batches: usize) -> Estimate {
    let n = xs.len();
    let n_batches = n_batches.max(2);
    if n < 2 * n_batches {
        return mean_se(xs);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let size = n / n_batches;
    let batch: Vec<f64> = xs
        .chunks_exact(size)
        .take(n_batches)
        .map(|c| c.iter().sum::<f64>() / size as f64)
        .collect();
    let bm = batch.iter().sum::<f64>() / n_batches as f64;
    let var = batch.iter().map(|b| (b - bm).powi(2)).sum::<f64>() / (n_batches - 1) as f64;
    Estimate { mean, std_error: (var / n_batches as f64).sqrt(), samples: n }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
}

impl KsTest {
    /// Critical value of the statistic at level `alpha` (asymptotic).
    pub fn critical_value(&self, alpha: f64) -> f64 {
        let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
        let (a, b) = (self.n1 as f64, self.n2 as f64);
        c * ((a + b) / (a * b)).sqrt()
    }

    pub fn passes(&self, alpha: f64) -> bool {
        self.statistic <= self.critical_value(alpha)
    }
}

/// Two-sample Kolmogorov-Smirnov statistic with the asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsTest {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (n1, n2) = (x.len(), y.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n1 && j < n2 {
        let t = x[i].min(y[j]);
        while i < n1 && x[i] <= t {
            i += 1;
        }
        while j < n2 && y[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n1 as f64 - j as f64 / n2 as f64).abs());
    }
    let en = ((n1 * n2) as f64 / (n1 + n2) as f64).sqrt();
    let lambda = (en + 0.12 + 0.11 / en) * d;
    KsTest { statistic: d, p_value: kolmogorov_survival(lambda), n1, n2 }
}

/// `P(K > lambda)` for the Kolmogorov distribution.
fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=200 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}
