use crate::error::{Error, Result};
use crate::fracops::{caputo_l1_scale, l1_weights, L1WeightTable, TimeGrid};
use crate::scalar::Real;
use crate::solver::config::SolverConfig;
use crate::solver::problem::ProblemSpec;
use crate::solver::record::{Snapshots, SolutionRecord};
use crate::spectral::{
    assemble_load, assemble_mass, assemble_stiffness, gauss_legendre, l2_norm, project_l2,
    DenseMatrix, MassMatrix, ModalBasis, Parallelism,
};

/// Diffusivity values at or below this floor abort the run.
pub const ELLIPTICITY_FLOOR: f64 = 1e-14;

/// `ŷⁿ = 2yⁿ⁻¹ − yⁿ⁻²`.
pub fn extrapolate<T: Real>(y_prev: &[T], y_prev2: &[T]) -> Result<Vec<T>> {
    if y_prev.len() != y_prev2.len() {
        return Err(Error::DimensionMismatch {
            expected: y_prev.len(),
            got: y_prev2.len(),
        });
    }
    let two = T::lit(2.0);
    Ok(y_prev
        .iter()
        .zip(y_prev2)
        .map(|(&a, &b)| two * a - b)
        .collect())
}

/// Solver state for one run: coefficient history and everything cached across steps.
#[derive(Debug)]
pub struct StepperState<T> {
    grid: TimeGrid<T>,
    basis: ModalBasis<T>,
    mass: MassMatrix<T>,
    /// `b_j(1−α)`, `j = 1..=M`.
    weights: L1WeightTable<T>,
    /// `d_j = b_j(1−α) − b_{j+1}(1−α)`, stored at index `j − 1`.
    weight_diffs: Vec<T>,
    /// `hᵅΓ(2−α)`.
    kappa: T,
    frozen_stiffness: Option<DenseMatrix<T>>,
    par: Parallelism,
    tol: T,
    max_iter: usize,
    history: Vec<Vec<T>>,
}

impl<T: Real> StepperState<T> {
    /// Builds the basis and caches and stores `y⁰ = P_N φ`.
    pub fn new(spec: &ProblemSpec<T>, cfg: &SolverConfig<T>) -> Result<Self> {
        spec.validate()?;
        cfg.validate()?;
        let grid = TimeGrid::new(spec.horizon, cfg.steps)?;
        let quad = gauss_legendre(cfg.effective_quad_order())?;
        let basis = ModalBasis::new(cfg.dim, quad)?;
        let mass = assemble_mass(&basis);
        let weights = l1_weights(T::one() - spec.alpha, cfg.steps)?;
        let weight_diffs = (1..cfg.steps)
            .map(|j| weights.get(j) - weights.get(j + 1))
            .collect();
        let kappa = caputo_l1_scale(spec.alpha, grid.step())?.recip();
        let phi: Vec<T> = basis
            .quadrature()
            .nodes()
            .iter()
            .map(|&x| (spec.initial.func())(x))
            .collect();
        let y0 = project_l2(&basis, &mass, &phi)?;
        let mut state = Self {
            grid,
            basis,
            mass,
            weights,
            weight_diffs,
            kappa,
            frozen_stiffness: None,
            par: cfg.parallelism.clone(),
            tol: cfg.nonlinear_tol,
            max_iter: cfg.nonlinear_max_iter,
            history: vec![y0],
        };
        if spec.diffusivity_is_constant {
            let y0 = state.history[0].clone();
            state.frozen_stiffness = Some(state.stiffness_at(spec, &y0)?);
        }
        Ok(state)
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn basis(&self) -> &ModalBasis<T> {
        &self.basis
    }

    pub fn mass(&self) -> &MassMatrix<T> {
        &self.mass
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn history(&self) -> &[Vec<T>] {
        &self.history
    }

    /// Index of the last computed level.
    pub fn current_step(&self) -> usize {
        self.history.len() - 1
    }

    pub fn norm(&self, coeffs: &[T]) -> Result<T> {
        l2_norm(&self.mass, coeffs)
    }

    /// `bₙ(1−α)·y⁰ + Σ_{i=1}^{n−1} d_{n−i}·yⁱ`, needing `y⁰..yⁿ⁻¹`.
    pub fn history_sum(&self, n: usize) -> Result<Vec<T>> {
        if n == 0 || n > self.history.len() || n > self.weights.len() {
            return Err(Error::IndexOutOfRange {
                n,
                len: self.history.len().min(self.weights.len()),
            });
        }
        let bn = self.weights.get(n);
        let mut acc: Vec<T> = self.history[0].iter().map(|&v| bn * v).collect();
        for i in 1..n {
            let d = self.weight_diffs[n - i - 1];
            for (a, &v) in acc.iter_mut().zip(&self.history[i]) {
                *a += d * v;
            }
        }
        Ok(acc)
    }

    fn stiffness_at(&self, spec: &ProblemSpec<T>, u: &[T]) -> Result<DenseMatrix<T>> {
        let u_nodes = self.basis.values_at_nodes(u)?;
        let d = spec.diffusivity.func();
        let d_nodes: Vec<T> = u_nodes.iter().map(|&v| d(v)).collect();
        let floor = T::lit(ELLIPTICITY_FLOOR);
        let nodes = self.basis.quadrature().nodes();
        if let Some((x, v)) = nodes.iter().zip(&d_nodes).find(|(_, &v)| !(v > floor)) {
            return Err(Error::Ellipticity {
                x: x.as_f64(),
                value: v.as_f64(),
            });
        }
        assemble_stiffness(&self.basis, &d_nodes, &self.par)
    }

    fn load_at(&self, spec: &ProblemSpec<T>, t: T, u: &[T]) -> Result<Vec<T>> {
        let u_nodes = self.basis.values_at_nodes(u)?;
        let nodes = self.basis.quadrature().nodes();
        let f = spec.source.func();
        let f_nodes = self.par.map_indices(nodes.len(), |q| f(nodes[q], t, u_nodes[q]));
        assemble_load(&self.basis, &f_nodes, &self.par)
    }

    fn stiffness_for(&self, spec: &ProblemSpec<T>, u: &[T]) -> Result<DenseMatrix<T>> {
        match &self.frozen_stiffness {
            Some(a) => Ok(a.clone()),
            None => self.stiffness_at(spec, u),
        }
    }

    /// Solves `(M + κA)y = M·hist + κ·load`.
    fn solve_system(&self, a: &DenseMatrix<T>, m_hist: &[T], load: &[T]) -> Result<Vec<T>> {
        let n = self.basis.dim();
        let mut s = a.scaled(self.kappa);
        for i in 0..n {
            for j in [i.wrapping_sub(2), i, i + 2] {
                if j < n {
                    s.set(i, j, s.get(i, j) + self.mass.get(i, j));
                }
            }
        }
        let rhs: Vec<T> = m_hist
            .iter()
            .zip(load)
            .map(|(&h, &f)| h + self.kappa * f)
            .collect();
        s.cholesky_solve(&rhs)
    }

    /// Nonlinear first level by fixed-point iteration from `y⁰`; returns the iteration count.
    pub fn first_step(&mut self, spec: &ProblemSpec<T>) -> Result<usize> {
        if self.history.len() != 1 {
            return Err(Error::InvalidParameter(
                "first_step needs a history holding only y⁰".into(),
            ));
        }
        let t1 = self.grid.node(1);
        let m_hist = self.mass.mul_vec(&self.history_sum(1)?);
        let fixed_load = if spec.source_independent_of_u {
            Some(self.load_at(spec, t1, &self.history[0])?)
        } else {
            None
        };
        let mut y = self.history[0].clone();
        let mut residual = T::infinity();
        for it in 1..=self.max_iter {
            let a = self.stiffness_for(spec, &y)?;
            let load = match &fixed_load {
                Some(l) => l.clone(),
                None => self.load_at(spec, t1, &y)?,
            };
            let next = self.solve_system(&a, &m_hist, &load)?;
            let diff: Vec<T> = next.iter().zip(&y).map(|(&a, &b)| a - b).collect();
            residual = l2_norm(&self.mass, &diff)?;
            y = next;
            if !residual.is_finite() {
                break;
            }
            if residual < self.tol {
                self.history.push(y);
                return Ok(it);
            }
        }
        Err(Error::NonConvergence {
            iterations: self.max_iter,
            residual: residual.as_f64(),
        })
    }

    /// One linearized level `n ≥ 2` with the nonlinearities frozen at the extrapolation.
    pub fn step(&mut self, spec: &ProblemSpec<T>) -> Result<&[T]> {
        let n = self.history.len();
        if n < 2 {
            return Err(Error::InvalidParameter("step needs y⁰ and y¹; call first_step".into()));
        }
        if n > self.grid.steps() {
            return Err(Error::IndexOutOfRange {
                n,
                len: self.grid.steps(),
            });
        }
        let y_hat = extrapolate(&self.history[n - 1], &self.history[n - 2])?;
        let a = self.stiffness_for(spec, &y_hat)?;
        let load = self.load_at(spec, self.grid.node(n), &y_hat)?;
        let m_hist = self.mass.mul_vec(&self.history_sum(n)?);
        let y = self.solve_system(&a, &m_hist, &load)?;
        self.history.push(y);
        Ok(&self.history[n])
    }
}

/// Full run: projection, nonlinear first level, then levels `2..=M`.
pub fn run<T: Real>(
    spec: &ProblemSpec<T>,
    cfg: &SolverConfig<T>,
    snapshots: &Snapshots<T>,
) -> Result<SolutionRecord<T>> {
    let mut state = StepperState::new(spec, cfg)?;
    let keep: Vec<usize> = match snapshots {
        Snapshots::All => (0..=cfg.steps).collect(),
        Snapshots::Final => vec![cfg.steps],
        Snapshots::Times(ts) => {
            let mut idx = ts
                .iter()
                .map(|&t| state.grid().index_of(t).ok_or(Error::OffGrid(t.as_f64())))
                .collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            idx.dedup();
            idx
        }
    };
    let first_step_iterations = state.first_step(spec)?;
    for _ in 2..=cfg.steps {
        state.step(spec)?;
    }
    let norms = state
        .history()
        .iter()
        .map(|y| state.norm(y))
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = norms.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(n));
    }
    let coeffs = keep.iter().map(|&n| state.history()[n].clone()).collect();
    Ok(SolutionRecord {
        grid: *state.grid(),
        dim: cfg.dim,
        quad_order: cfg.effective_quad_order(),
        steps: keep,
        coeffs,
        norms,
        first_step_iterations,
    })
}
