//! Galerkin mass, stiffness and load objects for the modal basis.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::basis::ModalBasis;
use crate::spectral::linalg::{DenseMatrix, Pentadiagonal2};
use crate::spectral::parallel::Parallelism;

/// `M_ij = (Φ_i, Φ_j)`; nonzero only for `|i − j| ∈ {0, 2}`.
pub type MassMatrix<T> = Pentadiagonal2<T>;

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Quadrature mass matrix; only the offsets that can be nonzero are integrated.
pub fn assemble_mass<T: Real>(basis: &ModalBasis<T>) -> MassMatrix<T> {
    let n = basis.dim();
    let w = basis.quadrature().weights();
    let weighted = |i: usize| -> Vec<T> {
        w.iter()
            .zip(basis.values(i))
            .map(|(&wq, &p)| wq * p)
            .collect()
    };
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(2));
    for i in 1..=n {
        let wi = weighted(i);
        diag.push(dot(&wi, basis.values(i)));
        if i + 2 <= n {
            off.push(dot(&wi, basis.values(i + 2)));
        }
    }
    Pentadiagonal2::new(diag, off).expect("band lengths are consistent")
}

/// `A_ij = Σ_q w_q D_q Φ_i'(x_q) Φ_j'(x_q)` from diffusivity values `D_q` at the nodes.
///
/// Rows are independent and may be computed on a thread pool; the upper
/// triangle is computed and mirrored, so `A` is exactly symmetric.
pub fn assemble_stiffness<T: Real>(
    basis: &ModalBasis<T>,
    diffusivity_at_nodes: &[T],
    par: &Parallelism,
) -> Result<DenseMatrix<T>> {
    let quad = basis.quadrature();
    if diffusivity_at_nodes.len() != quad.order() {
        return Err(Error::DimensionMismatch {
            expected: quad.order(),
            got: diffusivity_at_nodes.len(),
        });
    }
    if let Some((x, d)) = quad
        .nodes()
        .iter()
        .zip(diffusivity_at_nodes)
        .find(|(_, &d)| !(d > T::zero()))
    {
        return Err(Error::Ellipticity {
            x: x.as_f64(),
            value: d.as_f64(),
        });
    }
    let n = basis.dim();
    let wd: Vec<T> = quad
        .weights()
        .iter()
        .zip(diffusivity_at_nodes)
        .map(|(&w, &d)| w * d)
        .collect();
    let rows = par.map_indices(n, |i| {
        let scaled: Vec<T> = wd
            .iter()
            .zip(basis.derivs(i + 1))
            .map(|(&a, &b)| a * b)
            .collect();
        (i..n)
            .map(|j| dot(&scaled, basis.derivs(j + 1)))
            .collect::<Vec<T>>()
    });
    let mut a = DenseMatrix::zeros(n);
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    Ok(a)
}

/// `f_i = Σ_q w_q f_q Φ_i(x_q)` from source values `f_q` at the nodes.
pub fn assemble_load<T: Real>(
    basis: &ModalBasis<T>,
    source_at_nodes: &[T],
    par: &Parallelism,
) -> Result<Vec<T>> {
    let quad = basis.quadrature();
    if source_at_nodes.len() != quad.order() {
        return Err(Error::DimensionMismatch {
            expected: quad.order(),
            got: source_at_nodes.len(),
        });
    }
    let wf: Vec<T> = quad
        .weights()
        .iter()
        .zip(source_at_nodes)
        .map(|(&w, &f)| w * f)
        .collect();
    Ok(par.map_indices(basis.dim(), |i| dot(&wf, basis.values(i + 1))))
}

/// L² projection onto the span of the basis: solves `M y = (φ, Φ_i)`.
pub fn project_l2<T: Real>(
    basis: &ModalBasis<T>,
    mass: &MassMatrix<T>,
    function_at_nodes: &[T],
) -> Result<Vec<T>> {
    let load = assemble_load(basis, function_at_nodes, &Parallelism::Serial)?;
    mass.solve(&load)
}

/// `‖U‖ = √(yᵀ M y)`.
pub fn l2_norm<T: Real>(mass: &MassMatrix<T>, coeffs: &[T]) -> Result<T> {
    if coeffs.len() != mass.dim() {
        return Err(Error::DimensionMismatch {
            expected: mass.dim(),
            got: coeffs.len(),
        });
    }
    let q = dot(&mass.mul_vec(coeffs), coeffs);
    Ok(q.max(T::zero()).sqrt())
}
