//! Property checks shared by the proptest suite and the acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use subdiff::fracops::{
    caputo_l1, caputo_l1_coefficients, caputo_l1_scale, frac_integral_l0, gamma_fn,
    ScalarHistory, TimeGrid,
};
use subdiff::solver::{run, zero_problem, Snapshots, SolverConfig};
use subdiff::spectral::{
    assemble_mass, assemble_stiffness, gauss_legendre, ModalBasis, Parallelism,
};

pub fn alpha() -> impl Strategy<Value = f64> {
    0.01..0.99_f64
}

fn close(a: f64, b: f64, rel: f64) -> Result<(), TestCaseError> {
    let tol = rel * a.abs().max(b.abs()).max(1.0);
    prop_assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
    Ok(())
}

/// L1 is exact on `a + b·t`: `δᵅy(t_n) = b·t_n^{1−α}/Γ(2−α)`.
pub fn affine_exactness(alpha: f64, a: f64, b: f64, h: f64, n: usize) -> Result<(), TestCaseError> {
    let grid = TimeGrid::new(h * n as f64, n).unwrap();
    let hist = ScalarHistory::sample(grid, |t| a + b * t);
    let got = caputo_l1(&hist, alpha, n).unwrap();
    let want = b * (h * n as f64).powf(1.0 - alpha) / gamma_fn(2.0 - alpha).unwrap();
    close(got, want, 1e-11)
}

/// The increment form and the rearranged form agree.
pub fn rearranged_form(alpha: f64, ys: &[f64], h: f64) -> Result<(), TestCaseError> {
    let n = ys.len() - 1;
    let grid = TimeGrid::new(h * n as f64, n).unwrap();
    let hist = ScalarHistory::new(grid, ys.to_vec()).unwrap();
    let inc = caputo_l1(&hist, alpha, n).unwrap();
    let c = caputo_l1_coefficients(alpha, n).unwrap();
    let re = caputo_l1_scale(alpha, h).unwrap() * c.apply(ys);
    let scale = caputo_l1_scale(alpha, h).unwrap() * ys.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    prop_assert!((inc - re).abs() <= 1e-12 * scale.max(1.0), "{inc} vs {re}");
    Ok(())
}

/// The product-rectangle fractional integral is exact on constants.
pub fn frac_integral_constant(alpha: f64, c: f64, h: f64, n: usize) -> Result<(), TestCaseError> {
    let grid = TimeGrid::new(h * n as f64, n).unwrap();
    let hist = ScalarHistory::sample(grid, |_| c);
    let got = frac_integral_l0(&hist, alpha, n).unwrap();
    let want = c * (h * n as f64).powf(alpha) / gamma_fn(1.0 + alpha).unwrap();
    close(got, want, 1e-12)
}

/// `(δᵅyⁿ, yⁿ) ≥ ½ δᵅ‖yⁿ‖²` for vector-valued sequences.
pub fn scalar_product_inequality(alpha: f64, seq: &[Vec<f64>]) -> Result<(), TestCaseError> {
    let n = seq.len() - 1;
    let c = caputo_l1_coefficients(alpha, n).unwrap();
    let dim = seq[0].len();
    let comp = |k: usize| -> Vec<f64> { seq.iter().map(|y| y[k]).collect() };
    let lhs: f64 = (0..dim).map(|k| c.apply(&comp(k)) * seq[n][k]).sum();
    let sq: Vec<f64> = seq.iter().map(|y| y.iter().map(|v| v * v).sum()).collect();
    let rhs = 0.5 * c.apply(&sq);
    let mag: f64 = sq.iter().sum::<f64>().max(1.0);
    prop_assert!(lhs >= rhs - 1e-12 * mag, "{lhs} < {rhs}");
    Ok(())
}

/// Gauss–Legendre with `Q` nodes integrates `x^k` exactly for `k ≤ 2Q − 1`.
pub fn quadrature_exactness(q: usize, k: usize) -> Result<(), TestCaseError> {
    let rule = gauss_legendre::<f64>(q).unwrap();
    let got = rule.integrate(|x| x.powi(k as i32));
    close(got, 1.0 / (k as f64 + 1.0), 1e-13)
}

/// The quadrature Gram matrix is symmetric and vanishes off the offsets 0, ±2.
pub fn mass_structure(n: usize) -> Result<(), TestCaseError> {
    let basis = ModalBasis::new(n, gauss_legendre::<f64>(n + 8).unwrap()).unwrap();
    let mass = assemble_mass(&basis);
    let w = basis.quadrature().weights();
    for i in 1..=n {
        for j in 1..=n {
            let g: f64 = w
                .iter()
                .zip(basis.values(i).iter().zip(basis.values(j)))
                .map(|(&wq, (&a, &b))| wq * a * b)
                .sum();
            let d = i.abs_diff(j);
            if d == 0 || d == 2 {
                close(g, mass.get(i - 1, j - 1), 1e-14)?;
            } else {
                prop_assert!(g.abs() < 1e-14, "M[{i}][{j}] = {g}");
            }
            prop_assert_eq!(mass.get(i - 1, j - 1), mass.get(j - 1, i - 1));
        }
    }
    Ok(())
}

/// Stiffness assembly is bit-identical for every thread count, and
/// `D ≥ d_min` implies `xᵀA(D)x ≥ d_min·xᵀA(1)x`.
pub fn stiffness_determinism_and_ellipticity(
    n: usize,
    d_nodes_seed: &[f64],
    x: &[f64],
) -> Result<(), TestCaseError> {
    let q = n + 8;
    let basis = ModalBasis::new(n, gauss_legendre::<f64>(q).unwrap()).unwrap();
    let d: Vec<f64> = (0..q).map(|i| d_nodes_seed[i % d_nodes_seed.len()]).collect();
    let serial = assemble_stiffness(&basis, &d, &Parallelism::Serial).unwrap();
    for threads in [2, 3, 4] {
        let par = Parallelism::with_threads(threads).unwrap();
        let pooled = assemble_stiffness(&basis, &d, &par).unwrap();
        prop_assert!(serial == pooled, "threads = {threads}");
    }
    let ones = assemble_stiffness(&basis, &vec![1.0; q], &Parallelism::Serial).unwrap();
    let d_min = d.iter().copied().fold(f64::INFINITY, f64::min);
    let x = &x[..n];
    let lhs = serial.quadratic_form(x);
    let rhs = d_min * ones.quadratic_form(x);
    prop_assert!(lhs >= rhs - 1e-12 * lhs.abs().max(1.0), "{lhs} < {rhs}");
    for i in 0..n {
        for j in 0..n {
            prop_assert_eq!(serial.get(i, j), serial.get(j, i));
        }
    }
    Ok(())
}

/// Zero data gives the zero solution, exactly.
pub fn zero_preservation(alpha: f64, n: usize, m: usize) -> Result<(), TestCaseError> {
    let rec = run(&zero_problem(alpha, 1.0), &SolverConfig::new(n, m), &Snapshots::All).unwrap();
    prop_assert!(rec.coeffs.iter().flatten().all(|&v| v == 0.0));
    Ok(())
}

pub fn sequence(max_len: usize, dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0..10.0_f64, dim), 2..=max_len)
}
