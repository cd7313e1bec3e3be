//! L1 discretization of the Caputo derivative and the companion
//! product-rectangle rule for the Riemann–Liouville fractional integral.
//!
//! Weights are indexed from 1: `b_1(β) = 1` multiplies the newest interval.

use crate::error::{Error, Result};
use crate::fracops::special::gamma_fn;
use crate::scalar::Real;

/// Uniform temporal mesh `t_n = n·h`, `0 ≤ n ≤ M`, with `M·h = T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T> {
    step: T,
    steps: usize,
    horizon: T,
}

impl<T: Real> TimeGrid<T> {
    /// Mesh with `steps` intervals covering `[0, horizon]`.
    pub fn new(horizon: T, steps: usize) -> Result<Self> {
        if !(horizon > T::zero()) || !horizon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "horizon must be positive and finite, got {horizon}"
            )));
        }
        if steps == 0 {
            return Err(Error::InvalidParameter("need at least one time step".into()));
        }
        Ok(Self {
            step: horizon / T::from_usize_lossy(steps),
            steps,
            horizon,
        })
    }

    /// Mesh from a step size; `horizon / step` must be an integer to 1e-12 relative.
    pub fn from_step(step: T, horizon: T) -> Result<Self> {
        if !(step > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "time step must be positive, got {step}"
            )));
        }
        let ratio = horizon / step;
        let steps = ratio.round();
        if steps < T::one() || (steps * step - horizon).abs() > T::lit(1e-12) * horizon {
            return Err(Error::InvalidParameter(format!(
                "horizon {horizon} is not an integer multiple of step {step}"
            )));
        }
        let steps = steps.to_usize().ok_or_else(|| {
            Error::InvalidParameter(format!("step count {steps} is not representable"))
        })?;
        Ok(Self {
            step,
            steps,
            horizon,
        })
    }

    pub fn step(&self) -> T {
        self.step
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn horizon(&self) -> T {
        self.horizon
    }

    /// `t_n = n·h`.
    pub fn node(&self, n: usize) -> T {
        T::from_usize_lossy(n) * self.step
    }

    /// Index `n` with `t_n = t` (to 1e-9 of a step), if any.
    pub fn index_of(&self, t: T) -> Option<usize> {
        let r = t / self.step;
        let n = r.round();
        if n < T::zero() || (r - n).abs() > T::lit(1e-9) {
            return None;
        }
        let n = n.to_usize()?;
        (n <= self.steps).then_some(n)
    }
}

/// `b_j(β) = j^β − (j−1)^β` for `j = 1..=len`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1WeightTable<T> {
    beta: T,
    weights: Vec<T>,
}

impl<T: Real> L1WeightTable<T> {
    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `b_j`, 1-based. Panics for `j = 0` or `j > len`.
    pub fn get(&self, j: usize) -> T {
        assert!(j >= 1, "L1 weights are indexed from 1");
        self.weights[j - 1]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.weights
    }
}

/// Single weight `j^β − (j−1)^β`, computed as `j^β·(1 − (1 − 1/j)^β)` through
/// `expm1`/`ln1p` so that it stays accurate when the two powers nearly cancel.
pub fn l1_weight<T: Real>(beta: T, j: usize) -> T {
    debug_assert!(j >= 1);
    if j == 1 {
        return T::one();
    }
    let jf = T::from_usize_lossy(j);
    -jf.powf(beta) * (beta * (-jf.recip()).ln_1p()).exp_m1()
}

/// Builds the weight table `b_1(β)..b_count(β)`.
pub fn l1_weights<T: Real>(beta: T, count: usize) -> Result<L1WeightTable<T>> {
    if !(beta > T::zero() && beta <= T::one()) {
        return Err(Error::InvalidParameter(format!(
            "weight exponent must lie in (0, 1], got {beta}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("weight table needs count ≥ 1".into()));
    }
    Ok(L1WeightTable {
        beta,
        weights: (1..=count).map(|j| l1_weight(beta, j)).collect(),
    })
}

/// Samples `y(t_0), …, y(t_n)` on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarHistory<T> {
    values: Vec<T>,
    grid: TimeGrid<T>,
}

impl<T: Real> ScalarHistory<T> {
    pub fn new(grid: TimeGrid<T>, values: Vec<T>) -> Result<Self> {
        if values.is_empty() || values.len() > grid.steps() + 1 {
            return Err(Error::InvalidParameter(format!(
                "history length {} must lie in 1..={}",
                values.len(),
                grid.steps() + 1
            )));
        }
        Ok(Self { values, grid })
    }

    /// Samples `y` at every node of `grid`.
    pub fn sample(grid: TimeGrid<T>, y: impl Fn(T) -> T) -> Self {
        let values = (0..=grid.steps()).map(|n| y(grid.node(n))).collect();
        Self { values, grid }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 || n >= self.values.len() {
            return Err(Error::IndexOutOfRange {
                n,
                len: self.values.len(),
            });
        }
        Ok(())
    }
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "fractional order must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// `h^{−α} / Γ(2−α)`, the common prefactor of the L1 formula.
pub fn caputo_l1_scale<T: Real>(alpha: T, step: T) -> Result<T> {
    check_alpha(alpha)?;
    Ok(step.powf(-alpha) / gamma_fn(T::lit(2.0) - alpha)?)
}

/// L1 approximation of the Caputo derivative at `t_n` in the increment form
///
/// `δᵅy(t_n) = h^{−α}/Γ(2−α) · Σ_{i=0}^{n−1} b_{n−i}(1−α) (y_{i+1} − y_i)`.
pub fn caputo_l1<T: Real>(history: &ScalarHistory<T>, alpha: T, n: usize) -> Result<T> {
    check_alpha(alpha)?;
    history.check_index(n)?;
    let y = history.values();
    let beta = T::one() - alpha;
    let sum: T = (0..n)
        .map(|i| l1_weight(beta, n - i) * (y[i + 1] - y[i]))
        .sum();
    Ok(caputo_l1_scale(alpha, history.grid().step())? * sum)
}

/// Multipliers of the rearranged L1 formula
///
/// `δᵅy(t_n) = scale · (self_coeff·y_n − init_coeff·y_0 − Σ_{i=1}^{n−1} history[i−1]·y_i)`
///
/// with `init_coeff = b_n(1−α)` and `history[i−1] = b_{n−i}(1−α) − b_{n−i+1}(1−α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Coefficients<T> {
    pub self_coeff: T,
    pub init_coeff: T,
    /// Entry `i − 1` multiplies `y_i`, `i = 1..n−1`.
    pub history: Vec<T>,
}

impl<T: Real> L1Coefficients<T> {
    /// `self_coeff·y_n − init_coeff·y_0 − Σ history·y_i` for scalar samples `y_0..y_n`.
    pub fn apply(&self, y: &[T]) -> T {
        let n = self.history.len() + 1;
        debug_assert_eq!(y.len(), n + 1);
        let past: T = self
            .history
            .iter()
            .zip(&y[1..n])
            .map(|(&c, &v)| c * v)
            .sum();
        self.self_coeff * y[n] - self.init_coeff * y[0] - past
    }
}

pub fn caputo_l1_coefficients<T: Real>(alpha: T, n: usize) -> Result<L1Coefficients<T>> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::InvalidParameter("L1 coefficients need n ≥ 1".into()));
    }
    let table = l1_weights(T::one() - alpha, n)?;
    let history = (1..n)
        .map(|i| table.get(n - i) - table.get(n - i + 1))
        .collect();
    Ok(L1Coefficients {
        self_coeff: T::one(),
        init_coeff: table.get(n),
        history,
    })
}

/// Product-rectangle discretization of the fractional integral,
///
/// `Jᵅy(t_n) = hᵅ/Γ(1+α) · Σ_{i=1}^{n} b_{n−i+1}(α)·y_i`,
///
/// where `b_{n−i+1}(α)·hᵅ/α` is the exact kernel mass on `[t_{i−1}, t_i]`.
pub fn frac_integral_l0<T: Real>(history: &ScalarHistory<T>, alpha: T, n: usize) -> Result<T> {
    check_alpha(alpha)?;
    history.check_index(n)?;
    let y = history.values();
    let sum: T = (1..=n).map(|i| l1_weight(alpha, n - i + 1) * y[i]).sum();
    let h = history.grid().step();
    Ok(h.powf(alpha) / gamma_fn(T::one() + alpha)? * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(h: f64, m: usize) -> TimeGrid<f64> {
        TimeGrid::new(h * m as f64, m).unwrap()
    }

    #[test]
    fn time_grid_validation() {
        let g = TimeGrid::from_step(0.25, 1.0).unwrap();
        assert_eq!(g.steps(), 4);
        assert_eq!(g.node(4), 1.0);
        assert_eq!(g.index_of(0.5), Some(2));
        assert_eq!(g.index_of(0.3), None);
        assert!(TimeGrid::from_step(0.3, 1.0).is_err());
        assert!(TimeGrid::<f64>::new(1.0, 0).is_err());
        assert!(TimeGrid::<f64>::new(-1.0, 3).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(l1_weights(0.5, 1).unwrap().as_slice(), &[1.0]);
        let w = l1_weights(1.0_f64, 3).unwrap();
        for &b in w.as_slice() {
            assert!((b - 1.0).abs() < 1e-15);
        }
        let w = l1_weights(0.5_f64, 3).unwrap();
        let want = [1.0, 2f64.sqrt() - 1.0, 3f64.sqrt() - 2f64.sqrt()];
        for (got, want) in w.as_slice().iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn weight_rejects_bad_input() {
        assert!(l1_weights(0.0, 3).is_err());
        assert!(l1_weights(1.5, 3).is_err());
        assert!(l1_weights(0.5, 0).is_err());
    }

    #[test]
    fn large_index_weights_match_high_precision() {
        // mpmath at 40 digits
        let b = l1_weight(0.3_f64, 1_000_001);
        assert!(((b - 1.892_871_370_935_743_5e-5) / b).abs() < 1e-13);
        let b = l1_weight(0.3_f64, 1_000_000_000);
        assert!(((b - 1.503_561_701_408_063_4e-7) / b).abs() < 1e-13);
    }

    #[test]
    fn constant_history_has_zero_derivative() {
        let h = ScalarHistory::sample(grid(0.1, 10), |_| 3.7);
        for n in 1..=10 {
            assert_eq!(caputo_l1(&h, 0.4, n).unwrap(), 0.0);
        }
    }

    #[test]
    fn affine_history_is_exact() {
        let h = ScalarHistory::sample(grid(0.1, 4), |t| t);
        let got = caputo_l1(&h, 0.5, 4).unwrap();
        // t_4^{1/2} / Γ(3/2), mpmath
        assert!((got - 0.713_649_646_461_108_4).abs() < 1e-14);
    }

    #[test]
    fn caputo_index_errors() {
        let h = ScalarHistory::sample(grid(0.1, 4), |t| t);
        assert!(matches!(caputo_l1(&h, 0.5, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(caputo_l1(&h, 0.5, 5), Err(Error::IndexOutOfRange { .. })));
        assert!(caputo_l1(&h, 1.0, 2).is_err());
        assert!(frac_integral_l0(&h, 0.5, 5).is_err());
    }

    #[test]
    fn one_step_coefficients() {
        let c = caputo_l1_coefficients(0.5, 1).unwrap();
        assert_eq!(c.self_coeff, 1.0);
        assert_eq!(c.init_coeff, 1.0);
        assert!(c.history.is_empty());
    }

    #[test]
    fn coefficients_telescope_to_one() {
        for n in [2, 5, 40, 333] {
            let c = caputo_l1_coefficients(0.37, n).unwrap();
            assert!(c.history.iter().all(|&v| v > 0.0));
            let total: f64 = c.init_coeff + c.history.iter().sum::<f64>();
            assert!((total - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn coefficients_match_regrouped_increment_form() {
        // Regroup the increment form by feeding unit histories through it:
        // the coefficient of y_i is the increment-form value on e_i.
        let (alpha, n) = (0.3, 5);
        let g = grid(1.0, n);
        let scale = caputo_l1_scale(alpha, 1.0).unwrap();
        let c = caputo_l1_coefficients(alpha, n).unwrap();
        for i in 0..=n {
            let mut e = vec![0.0; n + 1];
            e[i] = 1.0;
            let h = ScalarHistory::new(g, e).unwrap();
            let regrouped = caputo_l1(&h, alpha, n).unwrap() / scale;
            let from_table = match i {
                0 => -c.init_coeff,
                i if i == n => c.self_coeff,
                i => -c.history[i - 1],
            };
            assert!((regrouped - from_table).abs() < 1e-14, "i = {i}");
        }
    }

    #[test]
    fn frac_integral_of_constants() {
        let alpha = 0.5_f64;
        let g = grid(0.125, 8);
        let h = ScalarHistory::sample(g, |_| 1.0);
        for n in 1..=8 {
            let got = frac_integral_l0(&h, alpha, n).unwrap();
            let want = g.node(n).powf(alpha) / gamma_fn(1.0 + alpha).unwrap();
            assert!(((got - want) / want).abs() < 1e-14);
        }
        let zero = ScalarHistory::sample(g, |_| 0.0);
        assert_eq!(frac_integral_l0(&zero, alpha, 8).unwrap(), 0.0);
    }
}
