//! Small dense and banded solvers for the per-step systems.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn from_rows(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `xᵀ A x`
    pub fn quadratic_form(&self, x: &[T]) -> T {
        self.mul_vec(x).iter().zip(x).map(|(&a, &b)| a * b).sum()
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * c).collect(),
        }
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    /// Solves `A x = b` for symmetric positive definite `A` by Cholesky.
    pub fn cholesky_solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        // lower factor, row-major
        let mut l = vec![T::zero(); n * n];
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > T::zero()) {
                return Err(Error::NotPositiveDefinite {
                    pivot: j,
                    value: d.as_f64(),
                });
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let t = l[i * n + k] * y[k];
                y[i] -= t;
            }
            y[i] /= l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let t = l[k * n + i] * y[k];
                y[i] -= t;
            }
            y[i] /= l[i * n + i];
        }
        Ok(y)
    }
}

/// Symmetric matrix whose only nonzeros lie on offsets `0` and `±2`.
///
/// Such a matrix splits into two independent tridiagonal systems, one per
/// index parity.
#[derive(Debug, Clone, PartialEq)]
pub struct Pentadiagonal2<T> {
    diag: Vec<T>,
    /// `off[i] = A[i][i+2]`
    off: Vec<T>,
}

impl<T: Real> Pentadiagonal2<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        let n = diag.len();
        if off.len() != n.saturating_sub(2) {
            return Err(Error::DimensionMismatch {
                expected: n.saturating_sub(2),
                got: off.len(),
            });
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match i.abs_diff(j) {
            0 => self.diag[i],
            2 => self.off[i.min(j)],
            _ => T::zero(),
        }
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diag
    }

    pub fn second_offdiagonal(&self) -> &[T] {
        &self.off
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i >= 2 {
                    s += self.off[i - 2] * x[i - 2];
                }
                if i + 2 < n {
                    s += self.off[i] * x[i + 2];
                }
                s
            })
            .collect()
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let n = self.dim();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, self.diag[i]);
            if i + 2 < n {
                m.set(i, i + 2, self.off[i]);
                m.set(i + 2, i, self.off[i]);
            }
        }
        m
    }

    /// Thomas algorithm on each parity chain.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut x = vec![T::zero(); n];
        for start in 0..2.min(n) {
            let idx: Vec<usize> = (start..n).step_by(2).collect();
            let m = idx.len();
            let mut c = vec![T::zero(); m];
            let mut d = vec![T::zero(); m];
            for (k, &i) in idx.iter().enumerate() {
                let sub = if k > 0 { self.off[i - 2] } else { T::zero() };
                let sup = if k + 1 < m { self.off[i] } else { T::zero() };
                let denom = self.diag[i] - if k > 0 { sub * c[k - 1] } else { T::zero() };
                if !(denom > T::zero()) {
                    return Err(Error::NotPositiveDefinite {
                        pivot: i,
                        value: denom.as_f64(),
                    });
                }
                c[k] = sup / denom;
                let prev = if k > 0 { sub * d[k - 1] } else { T::zero() };
                d[k] = (b[i] - prev) / denom;
            }
            for k in (0..m).rev() {
                let next = if k + 1 < m { c[k] * x[idx[k + 1]] } else { T::zero() };
                x[idx[k]] = d[k] - next;
            }
        }
        Ok(x)
    }
}
