use crate::error::{Error, Result};
use crate::fracops::TimeGrid;
use crate::scalar::Real;

/// Which time levels a run keeps.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Snapshots<T> {
    /// Every level `0..=M`.
    #[default]
    All,
    /// Only the final level.
    Final,
    /// The listed times, each of which must be a grid node.
    Times(Vec<T>),
}

/// Output of [`run`](crate::solver::run): coefficient snapshots plus per-step norms.
#[derive(Debug, Clone)]
pub struct SolutionRecord<T> {
    pub grid: TimeGrid<T>,
    pub dim: usize,
    pub quad_order: usize,
    /// Step indices of the stored snapshots, ascending.
    pub steps: Vec<usize>,
    pub coeffs: Vec<Vec<T>>,
    /// `‖Uⁿ‖` for every `n = 0..=M`.
    pub norms: Vec<T>,
    pub first_step_iterations: usize,
}

impl<T: Real> SolutionRecord<T> {
    pub fn at_step(&self, n: usize) -> Result<&[T]> {
        self.steps
            .binary_search(&n)
            .map(|k| self.coeffs[k].as_slice())
            .map_err(|_| Error::MissingSnapshot(n))
    }

    pub fn at_time(&self, t: T) -> Result<&[T]> {
        let n = self.grid.index_of(t).ok_or(Error::OffGrid(t.as_f64()))?;
        self.at_step(n)
    }

    pub fn final_coeffs(&self) -> &[T] {
        self.coeffs.last().expect("a record always holds the final level")
    }

    pub fn max_norm(&self) -> T {
        self.norms.iter().fold(T::zero(), |m, &v| m.max(v))
    }
}
