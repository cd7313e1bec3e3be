//! Fractional-operator discretizations and the special functions behind them.

pub mod constants;
pub mod l1;
pub mod special;

pub use constants::{
    caputo_power, l1_error_constant, l1_error_limit, l1_literature_bound, rho_n, rho_tilde_n,
};
pub use l1::{
    caputo_l1, caputo_l1_coefficients, caputo_l1_scale, frac_integral_l0, l1_weight, l1_weights,
    L1Coefficients, L1WeightTable, ScalarHistory, TimeGrid,
};
pub use special::{gamma_fn, zeta_fn};
