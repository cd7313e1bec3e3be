use crate::error::{Error, Result};
use crate::scalar::Real;

/// How the errors of an [`OrderReport`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMethod {
    /// Against an exact solution.
    ExactError,
    /// Successive differences at the final time.
    AitkenFixed,
    /// Successive differences, maximum over the coarse time nodes.
    AitkenMax,
    /// Against a high-dimension reference, as a function of `N`.
    SpatialReference,
}

impl OrderMethod {
    pub fn label(self) -> &'static str {
        match self {
            OrderMethod::ExactError => "exact-error",
            OrderMethod::AitkenFixed => "aitken-fixed-t",
            OrderMethod::AitkenMax => "aitken-max-t",
            OrderMethod::SpatialReference => "spatial-reference",
        }
    }
}

/// Least-squares line `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
}

pub fn fit_line<T: Real>(xs: &[T], ys: &[T]) -> Result<LineFit<T>> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::DegenerateOrder("a line fit needs two points".into()));
    }
    let n = T::from_usize_lossy(xs.len());
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let sxx: T = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    let sxy: T = xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let syy: T = ys.iter().map(|&y| (y - my) * (y - my)).sum();
    if sxx == T::zero() {
        return Err(Error::DegenerateOrder("abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == T::zero() {
        T::one()
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(LineFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

/// `log₂(d_coarse / d_fine)` for successive differences `‖u_{h/2} − u_h‖`, `‖u_{h/4} − u_{h/2}‖`.
pub fn aitken_order<T: Real>(d_coarse: T, d_fine: T) -> Result<T> {
    if !(d_fine > T::zero()) || !(d_coarse > T::zero()) {
        return Err(Error::DegenerateOrder(format!(
            "differences {d_coarse}, {d_fine} are not positive; error floor reached"
        )));
    }
    Ok((d_coarse / d_fine).log2())
}

/// Errors per refinement level plus the orders they imply.
#[derive(Debug, Clone)]
pub struct OrderReport<T> {
    pub method: OrderMethod,
    /// `(h, error)` for time studies, `(N, error)` for spatial ones; coarse to fine.
    pub levels: Vec<(T, T)>,
    /// Order between consecutive levels; empty for spatial studies.
    pub pairwise: Vec<T>,
    /// Least-squares order over the three finest levels, or the semilog
    /// decay rate per unit `N` for spatial studies.
    pub fitted: T,
    /// Quality of the semilog fit in spatial studies.
    pub r_squared: Option<T>,
    /// Number of levels the fit used.
    pub fit_levels: usize,
    /// Spatial studies: the semilog fit over every level above the round-off floor.
    pub unfiltered: Option<LineFit<T>>,
    pub conclusive: bool,
}

/// Temporal report: pairwise `log₂` ratios and the log-log slope over the finest three levels.
pub fn temporal_report<T: Real>(method: OrderMethod, levels: Vec<(T, T)>) -> Result<OrderReport<T>> {
    if levels.len() < 2 {
        return Err(Error::DegenerateOrder("need at least two levels".into()));
    }
    let pairwise = levels
        .windows(2)
        .map(|w| Ok(aitken_order(w[0].1, w[1].1)? / (w[0].0 / w[1].0).log2()))
        .collect::<Result<Vec<T>>>()?;
    let tail = &levels[levels.len().saturating_sub(3)..];
    let fit_levels = tail.len();
    let xs: Vec<T> = tail.iter().map(|l| l.0.ln()).collect();
    let ys: Vec<T> = tail.iter().map(|l| l.1.ln()).collect();
    let fit = fit_line(&xs, &ys)?;
    Ok(OrderReport {
        method,
        levels,
        pairwise,
        fitted: fit.slope,
        r_squared: Some(fit.r_squared),
        fit_levels,
        unfiltered: None,
        conclusive: true,
    })
}

/// Errors below this are treated as the round-off floor in spatial fits.
pub const SPATIAL_FLOOR: f64 = 1e-14;

fn semilog_fit<T: Real>(levels: &[(T, T)]) -> Result<LineFit<T>> {
    if levels.len() < 3 {
        return Err(Error::DegenerateOrder(format!(
            "only {} levels above the error floor",
            levels.len()
        )));
    }
    let xs: Vec<T> = levels.iter().map(|l| l.0).collect();
    let ys: Vec<T> = levels.iter().map(|l| l.1.ln()).collect();
    fit_line(&xs, &ys)
}

/// Relative change below which consecutive spatial errors count as one level.
///
/// For solutions symmetric about `x = 1/2` every second basis function has a
/// zero coefficient, so `N = 2m−1` and `N = 2m` give the same error.
pub const REPEAT_TOL: f64 = 1e-6;

/// Spatial report: semilog fit of `ln e` against `N`.
///
/// The fit stops at the first level that is below [`SPATIAL_FLOOR`] or
/// flagged in `floored`, and skips levels repeating the previous error (see
/// [`REPEAT_TOL`]). `unfiltered` keeps the fit over every level above
/// [`SPATIAL_FLOOR`]. `fitted` is the negated slope, the exponential decay
/// rate per basis function.
pub fn spatial_report<T: Real>(levels: Vec<(T, T)>, floored: &[bool]) -> Result<OrderReport<T>> {
    let above = levels
        .iter()
        .position(|l| !(l.1 > T::lit(SPATIAL_FLOOR)))
        .unwrap_or(levels.len());
    let used = floored[..above.min(floored.len())]
        .iter()
        .position(|&f| f)
        .unwrap_or(above);
    let distinct: Vec<(T, T)> = levels[..used]
        .iter()
        .enumerate()
        .filter(|&(i, l)| i == 0 || (l.1 - levels[i - 1].1).abs() > T::lit(REPEAT_TOL) * l.1)
        .map(|(_, &l)| l)
        .collect();
    let fit = semilog_fit(&distinct)?;
    let unfiltered = semilog_fit(&levels[..above])?;
    Ok(OrderReport {
        method: OrderMethod::SpatialReference,
        levels,
        pairwise: Vec::new(),
        fitted: -fit.slope,
        r_squared: Some(fit.r_squared),
        fit_levels: distinct.len(),
        unfiltered: Some(unfiltered),
        conclusive: true,
    })
}
