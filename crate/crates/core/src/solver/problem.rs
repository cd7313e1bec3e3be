use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A named, shareable scalar map.
pub struct Named<F: ?Sized> {
    name: String,
    func: Arc<F>,
}

impl<F: ?Sized> Named<F> {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn func(&self) -> &F {
        &self.func
    }
}

impl<F: ?Sized> Clone for Named<F> {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            func: Arc::clone(&self.func),
        }
    }
}

impl<F: ?Sized> fmt::Debug for Named<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// `u ↦ D(u)` or `x ↦ φ(x)`.
pub type ScalarFn<T> = Named<dyn Fn(T) -> T + Send + Sync>;
/// `(x, t) ↦ u(x, t)`.
pub type FieldFn<T> = Named<dyn Fn(T, T) -> T + Send + Sync>;
/// `(x, t, u) ↦ f(x, t, u)`.
pub type SourceFn<T> = Named<dyn Fn(T, T, T) -> T + Send + Sync>;

impl<T: Real> Named<dyn Fn(T) -> T + Send + Sync> {
    pub fn new(name: impl Into<String>, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            func: Arc::new(f),
        }
    }
}

impl<T: Real> Named<dyn Fn(T, T) -> T + Send + Sync> {
    pub fn new(name: impl Into<String>, f: impl Fn(T, T) -> T + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            func: Arc::new(f),
        }
    }
}

impl<T: Real> Named<dyn Fn(T, T, T) -> T + Send + Sync> {
    pub fn new(name: impl Into<String>, f: impl Fn(T, T, T) -> T + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            func: Arc::new(f),
        }
    }
}

/// One instance of `∂ᵅu = (D(u)u_x)_x + f(x, t, u)` on `(0, 1) × (0, T)`
/// with `u(·, 0) = φ` and homogeneous Dirichlet conditions.
#[derive(Clone, Debug)]
pub struct ProblemSpec<T> {
    pub alpha: T,
    pub horizon: T,
    pub diffusivity: ScalarFn<T>,
    pub source: SourceFn<T>,
    pub initial: ScalarFn<T>,
    /// `D` is the same constant for every argument; the stiffness matrix is
    /// then assembled once.
    pub diffusivity_is_constant: bool,
    /// `f` ignores its `u` argument; the first-step load is then assembled once.
    pub source_independent_of_u: bool,
}

impl<T: Real> ProblemSpec<T> {
    pub fn new(
        alpha: T,
        horizon: T,
        diffusivity: ScalarFn<T>,
        source: SourceFn<T>,
        initial: ScalarFn<T>,
    ) -> Self {
        Self {
            alpha,
            horizon,
            diffusivity,
            source,
            initial,
            diffusivity_is_constant: false,
            source_independent_of_u: false,
        }
    }

    pub fn with_constant_diffusivity(mut self, flag: bool) -> Self {
        self.diffusivity_is_constant = flag;
        self
    }

    pub fn with_source_independent_of_u(mut self, flag: bool) -> Self {
        self.source_independent_of_u = flag;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > T::zero() && self.alpha < T::one()) {
            return Err(Error::InvalidParameter(format!(
                "fractional order must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if !(self.horizon > T::zero()) || !self.horizon.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "horizon must be positive and finite, got {}",
                self.horizon
            )));
        }
        Ok(())
    }
}

/// The all-zero problem: `D ≡ 1`, `f ≡ 0`, `φ ≡ 0`.
pub fn zero_problem<T: Real>(alpha: T, horizon: T) -> ProblemSpec<T> {
    ProblemSpec::new(
        alpha,
        horizon,
        ScalarFn::new("one", |_| T::one()),
        SourceFn::new("zero", |_, _, _| T::zero()),
        ScalarFn::new("zero", |_| T::zero()),
    )
    .with_constant_diffusivity(true)
    .with_source_independent_of_u(true)
}
