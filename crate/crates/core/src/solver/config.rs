use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::Parallelism;

/// Discretization and nonlinear-solver settings.
#[derive(Debug, Clone)]
pub struct SolverConfig<T> {
    /// Basis dimension `N`.
    pub dim: usize,
    /// Number of time steps `M`.
    pub steps: usize,
    /// Quadrature order; `None` selects `N + 8`.
    pub quad_order: Option<usize>,
    /// First-step fixed-point tolerance on the L² distance of successive iterates.
    pub nonlinear_tol: T,
    pub nonlinear_max_iter: usize,
    pub parallelism: Parallelism,
}

impl<T: Real> SolverConfig<T> {
    pub fn new(dim: usize, steps: usize) -> Self {
        Self {
            dim,
            steps,
            quad_order: None,
            nonlinear_tol: T::lit(1e-12),
            nonlinear_max_iter: 100,
            parallelism: Parallelism::Serial,
        }
    }

    pub fn with_quad_order(mut self, q: usize) -> Self {
        self.quad_order = Some(q);
        self
    }

    pub fn with_parallelism(mut self, par: Parallelism) -> Self {
        self.parallelism = par;
        self
    }

    pub fn with_nonlinear(mut self, tol: T, max_iter: usize) -> Self {
        self.nonlinear_tol = tol;
        self.nonlinear_max_iter = max_iter;
        self
    }

    pub fn effective_quad_order(&self) -> usize {
        self.quad_order.unwrap_or(self.dim + 8)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter("basis dimension N must be ≥ 1".into()));
        }
        if self.steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "need M ≥ 2 time steps for the two-level extrapolation, got {}",
                self.steps
            )));
        }
        let q = self.effective_quad_order();
        if q < self.dim + 2 {
            return Err(Error::InvalidParameter(format!(
                "quadrature order {q} is below N + 2 = {}",
                self.dim + 2
            )));
        }
        if !(self.nonlinear_tol > T::zero()) || self.nonlinear_max_iter == 0 {
            return Err(Error::InvalidParameter(
                "nonlinear tolerance and iteration cap must be positive".into(),
            ));
        }
        Ok(())
    }
}
