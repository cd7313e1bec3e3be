use crate::error::{Error, Result};
use crate::fracops::caputo_power;
use crate::scalar::Real;
use crate::solver::{zero_problem, FieldFn, ProblemSpec, ScalarFn, SourceFn};

/// Initial profile of the engineered and Fisher–Kolmogorov cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `φ = sin πx`.
    Spatial,
    /// `φ = x(1−x)`, the first basis function up to a factor 6.
    Temporal,
}

impl Variant {
    fn profile<T: Real>(self) -> Profile<T> {
        match self {
            Variant::Spatial => Profile::sine(),
            Variant::Temporal => Profile::parabola(),
        }
    }
}

/// `φ`, `φ′`, `φ″` by hand.
#[derive(Clone, Copy)]
struct Profile<T> {
    name: &'static str,
    phi: fn(T) -> T,
    d1: fn(T) -> T,
    d2: fn(T) -> T,
}

impl<T: Real> Profile<T> {
    fn sine() -> Self {
        Self {
            name: "sin(pi x)",
            phi: |x| (T::PI() * x).sin(),
            d1: |x| T::PI() * (T::PI() * x).cos(),
            d2: |x| -T::PI() * T::PI() * (T::PI() * x).sin(),
        }
    }

    fn parabola() -> Self {
        Self {
            name: "x(1-x)",
            phi: |x| x * (T::one() - x),
            d1: |x| T::one() - T::lit(2.0) * x,
            d2: |_| T::lit(-2.0),
        }
    }
}

/// How an engineered source depends on its `u` argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coupling {
    /// `F(x, t) = f(x, t, u_exact(x, t))`; the `u` argument is ignored.
    #[default]
    AlongExact,
    /// The closed-form `f(x, t, u)`.
    Closed,
}

/// A problem plus whatever is known about its solution.
#[derive(Debug, Clone)]
pub struct ExperimentCase<T> {
    pub name: String,
    pub spec: ProblemSpec<T>,
    pub exact: Option<FieldFn<T>>,
    /// Steady state the solution relaxes to.
    pub reference: Option<ScalarFn<T>>,
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!(
            "fractional order must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

fn one_plus_u<T: Real>() -> ScalarFn<T> {
    ScalarFn::new("1+u", |u: T| T::one() + u)
}

/// `∂ᵅu − ((1+u)u_x)_x − f` for `u = (1+t^μ)φ(x)`, evaluated analytically.
fn residual_at<T: Real>(
    mu: T,
    alpha: T,
    profile: Profile<T>,
    source: &SourceFn<T>,
    x: T,
    t: T,
) -> Result<T> {
    let g = T::one() + t.powf(mu);
    let (p, p1, p2) = ((profile.phi)(x), (profile.d1)(x), (profile.d2)(x));
    let u = g * p;
    let (ux, uxx) = (g * p1, g * p2);
    let flux_div = (T::one() + u) * uxx + ux * ux;
    Ok(caputo_power(mu, alpha, t)? * p - flux_div - (source.func())(x, t, u))
}

/// Largest absolute residual of the engineered solution over an interior sample grid.
pub fn engineered_residual<T: Real>(
    mu: T,
    alpha: T,
    variant: Variant,
    source: &SourceFn<T>,
) -> Result<T> {
    let profile = variant.profile();
    let mut worst = T::zero();
    for i in 1..20 {
        let x = T::from_usize_lossy(i) / T::lit(20.0);
        for j in 1..=8 {
            let t = T::from_usize_lossy(j) / T::lit(8.0);
            worst = worst.max(residual_at(mu, alpha, profile, source, x, t)?.abs());
        }
    }
    Ok(worst)
}

/// Residual of the engineered solution above which a source is rejected.
pub const RESIDUAL_TOL: f64 = 1e-10;

fn candidate_sources<T: Real>(mu: T, alpha: T, variant: Variant) -> Vec<SourceFn<T>> {
    let pi2 = T::PI() * T::PI();
    let phi = variant.profile::<T>().phi;
    let caputo = move |x: T, t: T| {
        caputo_power(mu, alpha, t).expect("parameters checked by the caller") * phi(x)
    };
    let g = move |t: T| T::one() + t.powf(mu);
    match variant {
        Variant::Spatial => vec![
            SourceFn::new("pi^2(u(1-2u)-g^2)+caputo", move |x, t, u| {
                caputo(x, t) + pi2 * (u * (T::one() - T::lit(2.0) * u) - g(t) * g(t))
            }),
            SourceFn::new("pi^2(u(1+2u)-g^2)+caputo", move |x, t, u| {
                caputo(x, t) + pi2 * (u * (T::one() + T::lit(2.0) * u) - g(t) * g(t))
            }),
        ],
        Variant::Temporal => vec![
            SourceFn::new("(1+t^2)(1-t^2+6u)+caputo", move |x, t, u| {
                let t2 = t * t;
                caputo(x, t) + (T::one() + t2) * (T::one() - t2 + T::lit(6.0) * u)
            }),
            SourceFn::new("g(1-t^mu+6u)+caputo", move |x, t, u| {
                caputo(x, t) + g(t) * (T::one() - t.powf(mu) + T::lit(6.0) * u)
            }),
        ],
    }
}

/// Engineered case with exact solution `u = (1+t^μ)φ(x)` and `D(u) = 1+u` on `[0, 1]`.
///
/// Two source formulas are on file for each profile; the first whose
/// residual against the exact solution is below [`RESIDUAL_TOL`] is used.
/// With [`Coupling::AlongExact`] the source is evaluated on the exact solution.
/// The closed form with `φ = sin πx` makes the exact solution linearly
/// unstable (growth rate about `2π²u`), so no run can follow it.
pub fn case_engineered<T: Real>(mu: T, alpha: T, variant: Variant) -> Result<ExperimentCase<T>> {
    case_engineered_with(mu, alpha, variant, Coupling::AlongExact)
}

pub fn case_engineered_with<T: Real>(
    mu: T,
    alpha: T,
    variant: Variant,
    coupling: Coupling,
) -> Result<ExperimentCase<T>> {
    check_alpha(alpha)?;
    if !(mu > T::zero()) {
        return Err(Error::InvalidParameter(format!("μ must be positive, got {mu}")));
    }
    let mut source = None;
    for cand in candidate_sources(mu, alpha, variant) {
        if engineered_residual(mu, alpha, variant, &cand)? < T::lit(RESIDUAL_TOL) {
            source = Some(cand);
            break;
        }
    }
    let source = source.ok_or_else(|| {
        Error::InvalidParameter(format!("no engineered source satisfies the equation for μ = {mu}"))
    })?;
    let profile = variant.profile::<T>();
    let phi = profile.phi;
    let u = move |x: T, t: T| (T::one() + t.powf(mu)) * phi(x);
    let exact = FieldFn::new(format!("(1+t^{mu}){}", profile.name), u);
    let source = match coupling {
        Coupling::Closed => source,
        Coupling::AlongExact => {
            let name = format!("{} at u = exact", source.name());
            let closed = source.clone();
            SourceFn::new(name, move |x, t, _| (closed.func())(x, t, u(x, t)))
        }
    };
    let tag = match variant {
        Variant::Spatial => "engineered-spatial",
        Variant::Temporal => "engineered-temporal",
    };
    let spec = ProblemSpec::new(alpha, T::one(), one_plus_u(), source, ScalarFn::new(profile.name, phi))
        .with_source_independent_of_u(coupling == Coupling::AlongExact);
    Ok(ExperimentCase {
        name: tag.into(),
        spec,
        exact: Some(exact),
        reference: None,
    })
}

/// Subdiffusive Fisher–Kolmogorov: `f = u(1−u)`, `D = 1+u` on `[0, 1]`.
pub fn case_fisher<T: Real>(alpha: T, variant: Variant) -> Result<ExperimentCase<T>> {
    check_alpha(alpha)?;
    let profile = variant.profile::<T>();
    Ok(ExperimentCase {
        name: "fisher".into(),
        spec: ProblemSpec::new(
            alpha,
            T::one(),
            one_plus_u(),
            SourceFn::new("u(1-u)", |_, _, u: T| u * (T::one() - u)),
            ScalarFn::new(profile.name, profile.phi),
        ),
        exact: None,
        reference: None,
    })
}

/// Source `π²(2u² + u − 1)` with `D = 1+u`; relaxes to `v = sin πx`.
pub fn case_longtime<T: Real>(alpha: T, horizon: T) -> Result<ExperimentCase<T>> {
    check_alpha(alpha)?;
    let p = Profile::<T>::parabola();
    Ok(ExperimentCase {
        name: "longtime".into(),
        spec: ProblemSpec::new(
            alpha,
            horizon,
            one_plus_u(),
            SourceFn::new("pi^2(2u^2+u-1)", |_, _, u: T| {
                T::PI() * T::PI() * (T::lit(2.0) * u * u + u - T::one())
            }),
            ScalarFn::new(p.name, p.phi),
        ),
        exact: None,
        reference: Some(ScalarFn::new("sin(pi x)", |x: T| (T::PI() * x).sin())),
    })
}

/// The long-time source evaluated on the steady state, `F(x) = π²(2v² + v − 1)`
/// with `v = sin πx`.
///
/// Shares the steady state of [`case_longtime`] but, unlike it, relaxes to
/// that state: with the closed-form source `sin πx` is linearly unstable and
/// solutions from `x(1−x)` head for the degenerate value `u = −1`.
pub fn case_longtime_frozen<T: Real>(alpha: T, horizon: T) -> Result<ExperimentCase<T>> {
    let mut case = case_longtime(alpha, horizon)?;
    case.name = "longtime-frozen".into();
    case.spec.source = SourceFn::new("pi^2(2v^2+v-1), v = sin(pi x)", |x: T, _, _| {
        let v = (T::PI() * x).sin();
        T::PI() * T::PI() * (T::lit(2.0) * v * v + v - T::one())
    });
    case.spec.source_independent_of_u = true;
    Ok(case)
}

pub fn case_zero<T: Real>(alpha: T, horizon: T) -> Result<ExperimentCase<T>> {
    check_alpha(alpha)?;
    Ok(ExperimentCase {
        name: "zero".into(),
        spec: zero_problem(alpha, horizon),
        exact: Some(FieldFn::new("zero", |_, _| T::zero())),
        reference: None,
    })
}

/// `−((1+v)v′)′ − π²(2v² + v − 1)` for `v = sin πx`.
pub fn steady_state_residual<T: Real>(x: T) -> T {
    let p = Profile::<T>::sine();
    let (v, v1, v2) = ((p.phi)(x), (p.d1)(x), (p.d2)(x));
    let pi2 = T::PI() * T::PI();
    -((T::one() + v) * v2 + v1 * v1) - pi2 * (T::lit(2.0) * v * v + v - T::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spatial_source_is_the_consistent_one() {
        let c = case_engineered_with(0.5_f64, 0.5, Variant::Spatial, Coupling::Closed).unwrap();
        assert_eq!(c.spec.source.name(), "pi^2(u(1+2u)-g^2)+caputo");
        let bad = &candidate_sources(0.5_f64, 0.5, Variant::Spatial)[0];
        assert!(engineered_residual(0.5, 0.5, Variant::Spatial, bad).unwrap() > 1.0);
    }

    #[test]
    fn temporal_source_depends_on_mu() {
        let c = case_engineered_with(2.0_f64, 0.5, Variant::Temporal, Coupling::Closed).unwrap();
        assert_eq!(c.spec.source.name(), "(1+t^2)(1-t^2+6u)+caputo");
        let c = case_engineered_with(0.7_f64, 0.7, Variant::Temporal, Coupling::Closed).unwrap();
        assert_eq!(c.spec.source.name(), "g(1-t^mu+6u)+caputo");
        assert!(engineered_residual(0.7, 0.7, Variant::Temporal, &c.spec.source).unwrap() < 1e-12);
    }

    #[test]
    fn engineered_source_oracle_values() {
        // independent evaluation of f(x, t, u(x, t)) for μ = 2, α = 0.5 at (0.3, 0.6)
        let c = case_engineered(2.0_f64, 0.5, Variant::Temporal).unwrap();
        let u = (c.exact.as_ref().unwrap().func())(0.3, 0.6);
        assert!((u - 0.2856).abs() < 1e-15);
        let f = (c.spec.source.func())(0.3, 0.6, u);
        assert!((f - 3.347_734_509_071_574_7).abs() < 1e-13, "{f}");
    }

    #[test]
    fn coupled_forms_agree_on_the_exact_solution() {
        for v in [Variant::Spatial, Variant::Temporal] {
            let closed = case_engineered_with(0.6_f64, 0.4, v, Coupling::Closed).unwrap();
            let along = case_engineered(0.6_f64, 0.4, v).unwrap();
            assert!(along.spec.source_independent_of_u && !closed.spec.source_independent_of_u);
            let u = closed.exact.as_ref().unwrap().func();
            for (x, t) in [(0.2, 0.3), (0.9, 1.0)] {
                let a = (closed.spec.source.func())(x, t, u(x, t));
                let b = (along.spec.source.func())(x, t, 123.0);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn frozen_long_time_source_matches_on_steady_state() {
        let closed = case_longtime(0.5_f64, 1.0).unwrap();
        let frozen = case_longtime_frozen(0.5_f64, 1.0).unwrap();
        for x in [0.1, 0.5, 0.8] {
            let v = (std::f64::consts::PI * x).sin();
            let a = (closed.spec.source.func())(x, 0.0, v);
            let b = (frozen.spec.source.func())(x, 7.0, -3.0);
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn exact_solution_starts_at_profile() {
        for v in [Variant::Spatial, Variant::Temporal] {
            let c = case_engineered(0.8_f64, 0.4, v).unwrap();
            for x in [0.1, 0.5, 0.77] {
                let u0 = (c.exact.as_ref().unwrap().func())(x, 0.0);
                assert_eq!(u0, (c.spec.initial.func())(x));
            }
        }
    }

    #[test]
    fn fisher_source_values() {
        let c = case_fisher(0.5_f64, Variant::Spatial).unwrap();
        let f = c.spec.source.func();
        assert_eq!(f(0.3, 0.1, 0.0), 0.0);
        assert_eq!(f(0.3, 0.1, 1.0), 0.0);
        assert_eq!(f(0.3, 0.1, 0.5), 0.25);
    }

    #[test]
    fn steady_state_solves_the_elliptic_problem() {
        for i in 0..100 {
            let x = (i as f64 + 0.5) / 100.0;
            assert!(steady_state_residual(x).abs() < 1e-12, "x = {x}");
        }
        let c = case_longtime(0.5_f64, 10.0).unwrap();
        assert!(((c.reference.unwrap().func())(0.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parameters_are_checked() {
        assert!(case_engineered(0.0_f64, 0.5, Variant::Spatial).is_err());
        assert!(case_engineered(1.0_f64, 1.5, Variant::Spatial).is_err());
        assert!(case_fisher(0.0_f64, Variant::Spatial).is_err());
    }
}
