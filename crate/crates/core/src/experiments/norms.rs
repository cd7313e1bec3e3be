use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::solver::{FieldFn, SolutionRecord};
use crate::spectral::{gauss_legendre, modal_values};

/// Basis values tabulated at a fixed Gauss–Legendre grid, for comparing
/// fields of different dimensions on common nodes.
#[derive(Debug, Clone)]
pub struct NodeSampler<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    /// Row `q` holds `Φ_1..Φ_dim` at node `q`.
    table: Vec<Vec<T>>,
}

impl<T: Real> NodeSampler<T> {
    pub fn new(dim: usize, quad_order: usize) -> Result<Self> {
        let quad = gauss_legendre::<T>(quad_order)?;
        let table = quad
            .nodes()
            .iter()
            .map(|&x| modal_values(dim, x).0)
            .collect();
        Ok(Self {
            nodes: quad.nodes().to_vec(),
            weights: quad.weights().to_vec(),
            table,
        })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// `U(x_q)` for a coefficient vector of length at most the tabulated dimension.
    pub fn sample(&self, coeffs: &[T]) -> Result<Vec<T>> {
        let dim = self.table.first().map_or(0, Vec::len);
        if coeffs.len() > dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: coeffs.len(),
            });
        }
        Ok(self
            .table
            .iter()
            .map(|row| row.iter().zip(coeffs).map(|(&p, &c)| p * c).sum())
            .collect())
    }

    /// Discrete L² norm of nodal values.
    pub fn norm(&self, values: &[T]) -> T {
        self.weights
            .iter()
            .zip(values)
            .map(|(&w, &v)| w * v * v)
            .sum::<T>()
            .sqrt()
    }

    pub fn distance(&self, a: &[T], b: &[T]) -> Result<T> {
        let (ua, ub) = (self.sample(a)?, self.sample(b)?);
        let diff: Vec<T> = ua.iter().zip(&ub).map(|(&x, &y)| x - y).collect();
        Ok(self.norm(&diff))
    }

    pub fn distance_to(&self, coeffs: &[T], exact: impl Fn(T) -> T) -> Result<T> {
        let u = self.sample(coeffs)?;
        let diff: Vec<T> = u
            .iter()
            .zip(&self.nodes)
            .map(|(&v, &x)| exact(x) - v)
            .collect();
        Ok(self.norm(&diff))
    }
}

/// `‖u(·, t) − U(·, t)‖` by quadrature at the record's order.
pub fn error_l2<T: Real>(exact: &FieldFn<T>, record: &SolutionRecord<T>, t: T) -> Result<T> {
    let sampler = NodeSampler::new(record.dim, record.quad_order)?;
    let coeffs = record.at_time(t)?;
    sampler.distance_to(coeffs, |x| (exact.func())(x, t))
}

/// `max_{n ≥ 1} ‖u(·, t_n) − U(·, t_n)‖` over every stored level.
pub fn max_error_l2<T: Real>(exact: &FieldFn<T>, record: &SolutionRecord<T>) -> Result<T> {
    let sampler = NodeSampler::new(record.dim, record.quad_order)?;
    let mut worst = T::zero();
    for (&n, coeffs) in record.steps.iter().zip(&record.coeffs) {
        if n == 0 {
            continue;
        }
        let t = record.grid.node(n);
        worst = worst.max(sampler.distance_to(coeffs, |x| (exact.func())(x, t))?);
    }
    Ok(worst)
}

/// `‖U_a(·, t) − U_b(·, t)‖` on the quadrature grid of the larger record.
pub fn difference_l2<T: Real>(a: &SolutionRecord<T>, b: &SolutionRecord<T>, t: T) -> Result<T> {
    let (dim, q) = shared_grid(a, b);
    NodeSampler::new(dim, q)?.distance(a.at_time(t)?, b.at_time(t)?)
}

/// `max_n ‖U_coarse(t_n) − U_fine(t_n)‖` over the nodes `t_n`, `n ≥ 1`, of the coarse grid.
pub fn max_difference_l2<T: Real>(
    coarse: &SolutionRecord<T>,
    fine: &SolutionRecord<T>,
) -> Result<T> {
    let (dim, q) = shared_grid(coarse, fine);
    let sampler = NodeSampler::new(dim, q)?;
    let mut worst = T::zero();
    for (&n, coeffs) in coarse.steps.iter().zip(&coarse.coeffs) {
        if n == 0 {
            continue;
        }
        let other = fine.at_time(coarse.grid.node(n))?;
        worst = worst.max(sampler.distance(coeffs, other)?);
    }
    Ok(worst)
}

fn shared_grid<T>(a: &SolutionRecord<T>, b: &SolutionRecord<T>) -> (usize, usize) {
    (a.dim.max(b.dim), a.quad_order.max(b.quad_order))
}
