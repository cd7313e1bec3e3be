//! Gauss–Legendre rules mapped to the unit interval.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::legendre::legendre_eval;

const NEWTON_MAX_ITER: usize = 100;

/// `Q`-point Gauss–Legendre rule on `(0, 1)`; nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `Σ_q w_q g(x_q)`.
    pub fn integrate(&self, g: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// Builds the `Q`-point rule by Newton iteration on `L_Q` from Chebyshev
/// initial guesses; nodes are computed on one half and mirrored.
pub fn gauss_legendre<T: Real>(q: usize) -> Result<QuadratureRule<T>> {
    if q == 0 {
        return Err(Error::InvalidParameter("quadrature order must be ≥ 1".into()));
    }
    let tol = T::lit(1e-15).max(T::epsilon() * T::lit(4.0));
    let half = T::lit(0.5);
    let qf = T::from_usize_lossy(q);
    let mut nodes = vec![T::zero(); q];
    let mut weights = vec![T::zero(); q];

    // roots ξ_1 > ξ_2 > … in (−1, 1); only the non-negative half is iterated
    for i in 0..q.div_ceil(2) {
        let mut xi = (T::PI() * (T::from_usize_lossy(i) + T::lit(0.75)) / (qf + half)).cos();
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, dp) = legendre_eval(q, xi);
            let dx = p / dp;
            xi = xi - dx;
            if dx.abs() <= tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::QuadratureNotConverged(q));
        }
        if 2 * i + 1 == q {
            xi = T::zero();
        }
        let (_, dp) = legendre_eval(q, xi);
        // (2 / ((1 − ξ²) L_Q'(ξ)²)) scaled by 1/2 for the map to (0, 1)
        let w = ((T::one() - xi * xi) * dp * dp).recip();
        let hi = (T::one() + xi) * half;
        let lo = (T::one() - xi) * half;
        nodes[q - 1 - i] = hi;
        weights[q - 1 - i] = w;
        nodes[i] = lo;
        weights[i] = w;
    }
    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_is_midpoint() {
        let r = gauss_legendre::<f64>(1).unwrap();
        assert_eq!(r.nodes(), &[0.5]);
        assert!((r.weights()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_rule() {
        let r = gauss_legendre::<f64>(2).unwrap();
        let d = 0.5 / 3f64.sqrt();
        assert!((r.nodes()[0] - (0.5 - d)).abs() < 1e-15);
        assert!((r.nodes()[1] - (0.5 + d)).abs() < 1e-15);
        assert!((r.weights()[0] - 0.5).abs() < 1e-15);
        assert!((r.weights()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sixteen_points_integrate_x30() {
        let r = gauss_legendre::<f64>(16).unwrap();
        let got = r.integrate(|x| x.powi(30));
        assert!((got - 1.0 / 31.0).abs() < 1e-13);
    }

    #[test]
    fn structure_up_to_200() {
        for q in [3, 17, 64, 131, 200] {
            let r = gauss_legendre::<f64>(q).unwrap();
            let total: f64 = r.weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-13, "Q = {q}");
            assert!(r.weights().iter().all(|&w| w > 0.0));
            for i in 0..q {
                if i + 1 < q {
                    assert!(r.nodes()[i] < r.nodes()[i + 1]);
                }
                assert!((r.nodes()[i] + r.nodes()[q - 1 - i] - 1.0).abs() < 1e-15);
                assert!(r.nodes()[i] > 0.0 && r.nodes()[i] < 1.0);
            }
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(gauss_legendre::<f64>(0).is_err());
    }
}
