//! Brute-force matrices on the full `(2S+1)^n` product space. Independent of
//! the total-spin decomposition and used to validate it.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gibbs::GibbsValue;
use crate::error::{Error, Result};

/// Largest Hilbert-space dimension the dense routines accept.
pub const DENSE_DIM_CAP: usize = 6561;

fn dimension(n: u32, two_s: u32) -> Result<usize> {
    if n == 0 || two_s == 0 {
        return Err(Error::domain("n and 2S must be positive"));
    }
    let dim = (two_s as u64 + 1).checked_pow(n).unwrap_or(u64::MAX);
    if dim > DENSE_DIM_CAP as u64 {
        return Err(Error::SizeCap { what: "(2S+1)^n", value: dim, cap: DENSE_DIM_CAP as u64 });
    }
    Ok(dim as usize)
}

/// Product basis with local states `m = S - a`, `a = 0..2S`.
struct ProductSpace {
    n: usize,
    theta: usize,
    dim: usize,
    s: f64,
}

impl ProductSpace {
    fn new(n: u32, two_s: u32) -> Result<Self> {
        Ok(ProductSpace { n: n as usize, theta: two_s as usize + 1, dim: dimension(n, two_s)?, s: f64::from(two_s) / 2.0 })
    }

    fn digits(&self, mut code: usize) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for slot in d.iter_mut() {
            *slot = code % self.theta;
            code /= self.theta;
        }
        d
    }

    fn stride(&self, site: usize) -> usize {
        self.theta.pow(site as u32)
    }

    fn m(&self, a: usize) -> f64 {
        self.s - a as f64
    }

    /// `<m+1| S^+ |m>`.
    fn raise(&self, m: f64) -> f64 {
        (self.s * (self.s + 1.0) - m * (m + 1.0)).sqrt()
    }

    /// `-(2/n) Σ_{i<j} (S1S1 + S2S2 + Δ S3S3)` with the transverse part written
    /// as `(S+S- + S-S+)/2`.
    fn pair_hamiltonian(&self, delta: f64) -> DMatrix<f64> {
        let coupling = -2.0 / self.n as f64;
        let mut h = DMatrix::<f64>::zeros(self.dim, self.dim);
        for code in 0..self.dim {
            let d = self.digits(code);
            for i in 0..self.n {
                for j in i + 1..self.n {
                    let (mi, mj) = (self.m(d[i]), self.m(d[j]));
                    h[(code, code)] += coupling * delta * mi * mj;
                    // S+_i S-_j: a_i decreases, a_j increases
                    if d[i] > 0 && d[j] + 1 < self.theta {
                        let amp = 0.5 * self.raise(mi) * self.raise(mj - 1.0);
                        let to = code - self.stride(i) + self.stride(j);
                        h[(to, code)] += coupling * amp;
                    }
                    if d[j] > 0 && d[i] + 1 < self.theta {
                        let amp = 0.5 * self.raise(mj) * self.raise(mi - 1.0);
                        let to = code - self.stride(j) + self.stride(i);
                        h[(to, code)] += coupling * amp;
                    }
                }
            }
        }
        h
    }

    /// Eigen-decomposition of the total `S^(1)` as the Kronecker power of the
    /// single-site one.
    fn field_eigenbasis(&self) -> (Vec<f64>, DMatrix<f64>) {
        let mut site = DMatrix::<f64>::zeros(self.theta, self.theta);
        for a in 1..self.theta {
            let amp = 0.5 * self.raise(self.m(a));
            site[(a - 1, a)] = amp;
            site[(a, a - 1)] = amp;
        }
        let local = SymmetricEigen::new(site);
        let mut vectors = DMatrix::<f64>::identity(1, 1);
        for _ in 0..self.n {
            vectors = vectors.kronecker(&local.eigenvectors);
        }
        let values = (0..self.dim).map(|code| self.digits(code).iter().map(|&b| local.eigenvalues[b]).sum()).collect();
        (values, vectors)
    }

    /// `Σ_i (S+_i ± S-_i)/2`: total `S^(1)` for `+`, and the real
    /// antisymmetric `K` with `Σ S^(2) = -iK` for `-`.
    fn ladder_sum(&self, sign: f64) -> DMatrix<f64> {
        let mut out = DMatrix::<f64>::zeros(self.dim, self.dim);
        for code in 0..self.dim {
            let d = self.digits(code);
            for i in 0..self.n {
                if d[i] > 0 {
                    let amp = 0.5 * self.raise(self.m(d[i]));
                    let to = code - self.stride(i);
                    out[(to, code)] += amp;
                    out[(code, to)] += sign * amp;
                }
            }
        }
        out
    }
}

/// Which operator the dense oracle diagonalises.
///
/// The two differ by `(1/n)(1-Δ) Σ_i (S3_i)²`, a constant only for spin 1/2
/// or `Δ = 1`. The sector evaluator works with the collective form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HamiltonianForm {
    /// `-(1/n) Σ⃗² + (1/n)(1-Δ)(Σ^(3))²`.
    #[default]
    Collective,
    /// `-(2/n) Σ_{i<j} (S1S1 + S2S2 + Δ S3S3)`.
    Pairwise,
}

/// `Tr(e^{(h/n)ΣS^(1)} e^{-βH}) / Tr(e^{-βH})` for the collective XXZ
/// Hamiltonian, by diagonalising both operators.
pub fn dense_gibbs_oracle(n: u32, two_s: u32, beta: f64, delta: f64, h: Complex64) -> Result<GibbsValue> {
    dense_gibbs_oracle_with(HamiltonianForm::Collective, n, two_s, beta, delta, h)
}

pub fn dense_gibbs_oracle_with(
    form: HamiltonianForm,
    n: u32,
    two_s: u32,
    beta: f64,
    delta: f64,
    h: Complex64,
) -> Result<GibbsValue> {
    let space = ProductSpace::new(n, two_s)?;
    let mut ham = space.pair_hamiltonian(delta);
    if form == HamiltonianForm::Collective {
        // built pairwise, then shifted by the on-site term so Σ⃗² is never formed
        for code in 0..space.dim {
            let onsite: f64 = space.digits(code).iter().map(|&a| space.m(a).powi(2)).sum();
            ham[(code, code)] += (1.0 - delta) * onsite / n as f64;
        }
    }
    let ham = SymmetricEigen::new(ham);
    let (field_values, field_vectors) = space.field_eigenbasis();
    let overlap = field_vectors.transpose() * &ham.eigenvectors;
    let e_min = ham.eigenvalues.min();
    let boltz: Vec<f64> = ham.eigenvalues.iter().map(|&e| (-beta * (e - e_min)).exp()).collect();
    let z: f64 = boltz.iter().sum();
    let hn = h / f64::from(n);
    let mut num = Complex64::new(0.0, 0.0);
    for a in 0..space.dim {
        let phase = (hn * field_values[a]).exp();
        let row: f64 = (0..space.dim).map(|k| boltz[k] * overlap[(a, k)].powi(2)).sum();
        num += phase * row;
    }
    Ok(GibbsValue { value: num / z, n, two_s, beta, delta, h })
}

/// Members of the inequality chain `χ⊥ ≥ M/(βh) ≥ lower bound` together
/// with the quantities they are built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FalkBruch {
    /// `<𝓜²>` with `𝓜 = n^{-1/2} Σ S^(2)`.
    pub chi_perp: f64,
    /// Magnetisation per site over `βh`.
    pub m_over_bh: f64,
    /// `χ⊥ - ½ √β √(χ⊥ <[𝓜,[H,𝓜]]>)`.
    pub lower_bound: f64,
    /// `χ⊥ - ½ β √h √(χ⊥ <[𝓜,[H,𝓜]]>)`, the variant with the field inside
    /// the square root.
    pub lower_bound_field_scaled: f64,
    pub magnetization: f64,
    /// Duhamel two-point function `(𝓜, 𝓜)`.
    pub duhamel: f64,
    pub double_commutator: f64,
}

/// Ward/Falk-Bruch quantities for
/// `H = -(1/n) Σ_{i≠j} (S_i·S_j - u S3_i S3_j) - h Σ S^(1)` at inverse
/// temperature `β`.
pub fn falk_bruch_check(n: u32, two_s: u32, beta: f64, h: f64, u: f64) -> Result<FalkBruch> {
    if !(h > 0.0) {
        return Err(Error::domain(format!("field must be positive, got {h}")));
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("u must lie in [0, 1], got {u}")));
    }
    if !(beta > 0.0) {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    if n > 6 {
        return Err(Error::SizeCap { what: "n (Falk-Bruch)", value: u64::from(n), cap: 6 });
    }
    let space = ProductSpace::new(n, two_s)?;
    let sigma1 = space.ladder_sum(1.0);
    let ham = space.pair_hamiltonian(1.0 - u) - &sigma1 * h;
    let eig = SymmetricEigen::new(ham);
    let e = &eig.eigenvalues;
    let v = &eig.eigenvectors;
    let e_min = e.min();
    let boltz: Vec<f64> = e.iter().map(|&x| (-beta * (x - e_min)).exp()).collect();
    let z: f64 = boltz.iter().sum();
    let p: Vec<f64> = boltz.iter().map(|b| b / z).collect();

    let s1 = v.transpose() * &sigma1 * v;
    let magnetization = (0..space.dim).map(|m| p[m] * s1[(m, m)]).sum::<f64>() / f64::from(n);

    // |𝓜_mk|² = |K_mk|²/n in the energy eigenbasis
    let k = v.transpose() * space.ladder_sum(-1.0) * v;
    let nf = f64::from(n);
    let (mut chi_perp, mut duhamel, mut dc) = (0.0, 0.0, 0.0);
    for m in 0..space.dim {
        for j in 0..space.dim {
            let a2 = k[(m, j)].powi(2) / nf;
            if a2 == 0.0 {
                continue;
            }
            let gap = e[j] - e[m];
            chi_perp += p[m] * a2;
            duhamel += p[m] * a2 * duhamel_kernel(beta * gap);
            dc += 2.0 * p[m] * a2 * gap;
        }
    }
    let root = (chi_perp * dc.max(0.0)).sqrt();
    Ok(FalkBruch {
        chi_perp,
        m_over_bh: magnetization / (beta * h),
        lower_bound: chi_perp - 0.5 * beta.sqrt() * root,
        lower_bound_field_scaled: chi_perp - 0.5 * beta * h.sqrt() * root,
        magnetization,
        duhamel,
        double_commutator: dc,
    })
}

/// `∫_0^1 e^{-tx} dt = (1 - e^{-x})/x`, equal to 1 at `x = 0`.
fn duhamel_kernel(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x / 2.0
    } else {
        -(-x).exp_m1() / x
    }
}
