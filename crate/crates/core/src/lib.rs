//! Solver for quasilinear time-fractional subdiffusion
//!
//! `∂ᵅu = (D(u)u_x)_x + f(x, t, u)` on `(0, 1) × (0, T)`, `u = 0` at both ends,
//!
//! with the L1 scheme in time, a modal Legendre Galerkin method in space, and
//! the nonlinear coefficients frozen at a linear extrapolation from the two
//! previous levels.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

pub mod error;
pub mod experiments;
pub mod fracops;
pub mod scalar;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

pub type TimeGrid64 = fracops::TimeGrid<f64>;
pub type ScalarHistory64 = fracops::ScalarHistory<f64>;
pub type QuadratureRule64 = spectral::QuadratureRule<f64>;
pub type ModalBasis64 = spectral::ModalBasis<f64>;
pub type DenseMatrix64 = spectral::DenseMatrix<f64>;
pub type MassMatrix64 = spectral::MassMatrix<f64>;
pub type ProblemSpec64 = solver::ProblemSpec<f64>;
pub type SolverConfig64 = solver::SolverConfig<f64>;
pub type StepperState64 = solver::StepperState<f64>;
pub type SolutionRecord64 = solver::SolutionRecord<f64>;
pub type ExperimentCase64 = experiments::ExperimentCase<f64>;
pub type OrderReport64 = experiments::OrderReport<f64>;
