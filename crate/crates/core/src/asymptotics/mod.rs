//! Variational formulas for the `n -> infinity` limits: `η`, `x*`, `g_β` and
//! its maximiser, thermodynamic derivatives, the interchange functional, the
//! classical-spin limit and critical-exponent fits.

mod classical;
mod eta;
mod exponents;
mod fit;
mod free_energy;
mod interchange;

pub use classical::{classical_maximizer, langevin_inverse};
pub use eta::{eta, eta_prime, eta_second, langevin, langevin_prime, ln_sinhc, SpinContext};
pub use exponents::{critical_exponent_fit, exponent_grid, CriticalExponent, ExponentReport, ORDERED_BETA_RATIO};
pub use fit::{fit_exponent, ExponentFit};
pub use free_energy::{
    g_beta, g_beta_prime, g_beta_second, m_star, magnetization, pressure, saddle_multiplicity, susceptibility,
    susceptibility_fd, x_star, MaximizerResult, GRID_POINTS, TIE_TOLERANCE,
};
pub use interchange::{interchange_beta_c, interchange_maximizer, phi_beta, InterchangeMaximum};
