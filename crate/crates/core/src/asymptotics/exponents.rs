//! Critical-exponent tables generated from the variational formulas.

use serde::{Deserialize, Serialize};

use super::eta::SpinContext;
use super::fit::{fit_exponent, ExponentFit};
use super::free_energy::{m_star, magnetization, susceptibility, susceptibility_fd};
use crate::error::Result;

/// Inverse temperature used for the ordered-phase transverse susceptibility, in units of `β_c`.
pub const ORDERED_BETA_RATIO: f64 = 1.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriticalExponent {
    /// `m*(β) ~ (β - β_c)^{1/2}`.
    Magnetization,
    /// `χ(β) ~ (β_c - β)^{-1}`.
    Susceptibility,
    /// `m(β_c, h) ~ h^{1/3}`.
    CriticalIsotherm,
    /// `m(β_c, h)/h ~ h^{-2/3}`.
    TransverseCritical,
    /// `m(β, h)/h ~ h^{-1}` for `β > β_c`.
    TransverseOrdered,
}

impl CriticalExponent {
    pub const ALL: [CriticalExponent; 5] = [
        CriticalExponent::Magnetization,
        CriticalExponent::Susceptibility,
        CriticalExponent::CriticalIsotherm,
        CriticalExponent::TransverseCritical,
        CriticalExponent::TransverseOrdered,
    ];

    pub fn target(self) -> f64 {
        match self {
            CriticalExponent::Magnetization => 0.5,
            CriticalExponent::Susceptibility => -1.0,
            CriticalExponent::CriticalIsotherm => 1.0 / 3.0,
            CriticalExponent::TransverseCritical => -2.0 / 3.0,
            CriticalExponent::TransverseOrdered => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CriticalExponent::Magnetization => "magnetization",
            CriticalExponent::Susceptibility => "susceptibility",
            CriticalExponent::CriticalIsotherm => "critical-isotherm",
            CriticalExponent::TransverseCritical => "transverse-critical",
            CriticalExponent::TransverseOrdered => "transverse-ordered",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExponentReport {
    pub kind: CriticalExponent,
    pub two_s: u32,
    pub target: f64,
    pub fit: ExponentFit,
    /// Largest relative gap between the closed-form susceptibility and its
    /// finite-difference estimate; only for [`CriticalExponent::Susceptibility`].
    pub fd_max_relative_gap: Option<f64>,
}

/// Half-decade grid of distances `t`: `|β - β_c|` from `10^{-1}` to `10^{-4}`
/// for the temperature exponents, field strengths from `10^{-2}` to `10^{-6}`
/// for the field exponents.
pub fn exponent_grid(kind: CriticalExponent) -> Vec<f64> {
    let (first, last) = match kind {
        CriticalExponent::Magnetization | CriticalExponent::Susceptibility => (2, 8),
        _ => (4, 12),
    };
    (first..=last).map(|k| 10f64.powf(-f64::from(k) / 2.0)).collect()
}

pub fn critical_exponent_fit(kind: CriticalExponent, ctx: SpinContext) -> Result<ExponentReport> {
    let bc = ctx.beta_c();
    let grid = exponent_grid(kind);
    let mut fd_gap = None;
    let samples: Vec<(f64, f64)> = match kind {
        CriticalExponent::Magnetization => {
            grid.iter().map(|&d| Ok((d, m_star(bc + d, ctx)?.location))).collect::<Result<_>>()?
        }
        CriticalExponent::Susceptibility => {
            let mut gap: f64 = 0.0;
            let s = grid
                .iter()
                .map(|&d| {
                    let chi = susceptibility(bc - d, ctx)?;
                    let dh = 1e-4 * d * d;
                    let fd = susceptibility_fd(bc - d, dh, ctx)?;
                    gap = gap.max(((fd - chi) / chi).abs());
                    Ok((d, chi))
                })
                .collect::<Result<_>>()?;
            fd_gap = Some(gap);
            s
        }
        CriticalExponent::CriticalIsotherm => {
            grid.iter().map(|&h| Ok((h, magnetization(bc, h, ctx)?))).collect::<Result<_>>()?
        }
        CriticalExponent::TransverseCritical => {
            grid.iter().map(|&h| Ok((h, magnetization(bc, h, ctx)? / h))).collect::<Result<_>>()?
        }
        CriticalExponent::TransverseOrdered => grid
            .iter()
            .map(|&h| Ok((h, magnetization(ORDERED_BETA_RATIO * bc, h, ctx)? / h)))
            .collect::<Result<_>>()?,
    };
    Ok(ExponentReport {
        kind,
        two_s: ctx.two_s,
        target: kind.target(),
        fit: fit_exponent(&samples)?,
        fd_max_relative_gap: fd_gap,
    })
}
