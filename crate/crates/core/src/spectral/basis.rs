use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::legendre::legendre_all;
use crate::spectral::quadrature::QuadratureRule;

/// Boundary-vanishing modal Legendre basis on `[0, 1]`.
///
/// Indexing is 1-based, `k = 1..=N`:
///
/// `Φ_k(x) = L_{k−1}(2x−1) − L_{k+1}(2x−1)`,
///
/// so `Φ_1 = 6x(1−x)` and `Φ_k(0) = Φ_k(1) = 0`. Values and derivatives are
/// tabulated once at the quadrature nodes.
#[derive(Debug, Clone)]
pub struct ModalBasis<T> {
    dim: usize,
    quad: QuadratureRule<T>,
    // row k−1 holds Φ_k at every node
    values: Vec<T>,
    derivs: Vec<T>,
}

/// `(Φ_k(x), Φ_k'(x))` for `k = 1..=dim`.
pub fn modal_values<T: Real>(dim: usize, x: T) -> (Vec<T>, Vec<T>) {
    let xi = T::lit(2.0) * x - T::one();
    let mut l = vec![T::zero(); dim + 2];
    let mut dl = vec![T::zero(); dim + 2];
    legendre_all(xi, &mut l, &mut dl);
    let two = T::lit(2.0);
    let vals = (1..=dim).map(|k| l[k - 1] - l[k + 1]).collect();
    let ders = (1..=dim).map(|k| two * (dl[k - 1] - dl[k + 1])).collect();
    (vals, ders)
}

impl<T: Real> ModalBasis<T> {
    /// Needs `quad.order() ≥ dim + 2` so that the mass matrix is integrated exactly.
    pub fn new(dim: usize, quad: QuadratureRule<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("basis dimension must be ≥ 1".into()));
        }
        if quad.order() < dim + 2 {
            return Err(Error::InvalidParameter(format!(
                "quadrature order {} is below N + 2 = {}",
                quad.order(),
                dim + 2
            )));
        }
        let q = quad.order();
        let mut values = vec![T::zero(); dim * q];
        let mut derivs = vec![T::zero(); dim * q];
        for (j, &x) in quad.nodes().iter().enumerate() {
            let (v, d) = modal_values(dim, x);
            for k in 0..dim {
                values[k * q + j] = v[k];
                derivs[k * q + j] = d[k];
            }
        }
        Ok(Self {
            dim,
            quad,
            values,
            derivs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn quadrature(&self) -> &QuadratureRule<T> {
        &self.quad
    }

    /// `Φ_k` at every quadrature node (`k` is 1-based).
    pub fn values(&self, k: usize) -> &[T] {
        let q = self.quad.order();
        &self.values[(k - 1) * q..k * q]
    }

    /// `Φ_k'` at every quadrature node (`k` is 1-based).
    pub fn derivs(&self, k: usize) -> &[T] {
        let q = self.quad.order();
        &self.derivs[(k - 1) * q..k * q]
    }

    /// `Σ_k y_k Φ_k(x_q)` at every quadrature node.
    pub fn values_at_nodes(&self, coeffs: &[T]) -> Result<Vec<T>> {
        self.check_len(coeffs)?;
        let q = self.quad.order();
        let mut out = vec![T::zero(); q];
        for (k, &c) in coeffs.iter().enumerate() {
            for (o, &v) in out.iter_mut().zip(&self.values[k * q..(k + 1) * q]) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    pub(crate) fn check_len(&self, coeffs: &[T]) -> Result<()> {
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: coeffs.len(),
            });
        }
        Ok(())
    }
}

/// `U(x) = Σ_k y_k Φ_k(x)` at arbitrary points of `[0, 1]`; the basis size is `coeffs.len()`.
pub fn evaluate<T: Real>(coeffs: &[T], points: &[T]) -> Result<Vec<T>> {
    points
        .iter()
        .map(|&x| {
            if !(x >= T::zero() && x <= T::one()) {
                return Err(Error::InvalidParameter(format!(
                    "evaluation point {x} outside [0, 1]"
                )));
            }
            let (vals, _) = modal_values(coeffs.len(), x);
            Ok(vals.iter().zip(coeffs).map(|(&p, &c)| p * c).sum())
        })
        .collect()
}
