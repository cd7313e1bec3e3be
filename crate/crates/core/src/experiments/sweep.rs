use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::solver::{run, Snapshots, SolutionRecord, SolverConfig};
use crate::spectral::Parallelism;

use super::cases::ExperimentCase;
use super::norms::{difference_l2, error_l2, max_difference_l2, max_error_l2};
use super::order::{spatial_report, temporal_report, OrderMethod, OrderReport};

/// Where in time a temporal error is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemporalMetric {
    /// At the final time.
    Fixed,
    /// Maximum over all grid times `t_n`, `n ≥ 1`.
    Max,
}

/// Below this order the max-in-time Aitken estimate is flagged as non-conclusive.
pub const SMALL_ALPHA: f64 = 0.3;

fn solve<T: Real>(
    case: &ExperimentCase<T>,
    dim: usize,
    steps: usize,
    snapshots: &Snapshots<T>,
) -> Result<SolutionRecord<T>> {
    run(&case.spec, &SolverConfig::new(dim, steps), snapshots)
}

/// A level whose error moves by more than this fraction when `h` is halved
/// is dominated by time discretization and ends the spatial fit.
pub const TIME_COUPLING_TOL: f64 = 0.25;

fn spatial_errors<T: Real>(
    case: &ExperimentCase<T>,
    dims: &[usize],
    steps: usize,
    reference_dim: usize,
    par: &Parallelism,
) -> Result<Vec<T>> {
    let horizon = case.spec.horizon;
    let reference = solve(case, reference_dim, steps, &Snapshots::Final)?;
    par.map_indices(dims.len(), |k| {
        let rec = solve(case, dims[k], steps, &Snapshots::Final)?;
        difference_l2(&rec, &reference, horizon)
    })
    .into_iter()
    .collect()
}

/// Error at the final time against a reference run of dimension `reference_dim`
/// with the same time grid, for every `N` in `dims`.
///
/// The sweep is repeated with `2·steps`; levels from the first one whose
/// error shifts by more than [`TIME_COUPLING_TOL`] are left out of the fit.
pub fn spatial_sweep<T: Real>(
    case: &ExperimentCase<T>,
    dims: &[usize],
    steps: usize,
    reference_dim: usize,
    par: &Parallelism,
) -> Result<OrderReport<T>> {
    if dims.len() < 3 {
        return Err(Error::InvalidParameter("a sweep needs at least three levels".into()));
    }
    let coarse = spatial_errors(case, dims, steps, reference_dim, par)?;
    let fine = spatial_errors(case, dims, 2 * steps, reference_dim, par)?;
    let floored: Vec<bool> = coarse
        .iter()
        .zip(&fine)
        .map(|(&e, &f)| (e - f).abs() > T::lit(TIME_COUPLING_TOL) * e)
        .collect();
    let levels = dims
        .iter()
        .zip(coarse)
        .map(|(&n, e)| (T::from_usize_lossy(n), e))
        .collect();
    spatial_report(levels, &floored)
}

/// Time-step study at fixed `N` over the step counts `steps` (ascending).
///
/// Uses the exact solution when the case has one; otherwise successive
/// differences, which requires each count to double the previous.
pub fn temporal_sweep<T: Real>(
    case: &ExperimentCase<T>,
    dim: usize,
    steps: &[usize],
    metric: TemporalMetric,
    par: &Parallelism,
) -> Result<OrderReport<T>> {
    if steps.len() < 3 {
        return Err(Error::InvalidParameter("a sweep needs at least three levels".into()));
    }
    if steps.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("step counts must increase".into()));
    }
    let horizon = case.spec.horizon;
    let h = |m: usize| horizon / T::from_usize_lossy(m);
    let snapshots = match metric {
        TemporalMetric::Fixed => Snapshots::Final,
        TemporalMetric::Max => Snapshots::All,
    };
    let records = par.map_indices(steps.len(), |k| solve(case, dim, steps[k], &snapshots));
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;

    if let Some(exact) = &case.exact {
        let levels = steps
            .iter()
            .zip(&records)
            .map(|(&m, rec)| {
                let e = match metric {
                    TemporalMetric::Fixed => error_l2(exact, rec, horizon)?,
                    TemporalMetric::Max => max_error_l2(exact, rec)?,
                };
                Ok((h(m), e))
            })
            .collect::<Result<Vec<_>>>()?;
        return temporal_report(OrderMethod::ExactError, levels);
    }

    if steps.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(Error::InvalidParameter(
            "difference-based orders need each step count to double the previous".into(),
        ));
    }
    let levels = records
        .windows(2)
        .zip(steps)
        .map(|(pair, &m)| {
            let d = match metric {
                TemporalMetric::Fixed => difference_l2(&pair[0], &pair[1], horizon)?,
                TemporalMetric::Max => max_difference_l2(&pair[0], &pair[1])?,
            };
            Ok((h(m), d))
        })
        .collect::<Result<Vec<_>>>()?;
    let method = match metric {
        TemporalMetric::Fixed => OrderMethod::AitkenFixed,
        TemporalMetric::Max => OrderMethod::AitkenMax,
    };
    let mut report = temporal_report(method, levels)?;
    report.conclusive = !(method == OrderMethod::AitkenMax && case.spec.alpha < T::lit(SMALL_ALPHA));
    Ok(report)
}

/// `|v(x) − Uⁿ(x)|` at a probe point for every level of a long run.
#[derive(Debug, Clone)]
pub struct DecayReport<T> {
    pub times: Vec<T>,
    pub deviation: Vec<T>,
    pub norms: Vec<T>,
    /// Log-log slope of the deviation over the fit window.
    pub slope: T,
}

pub fn longtime_decay<T: Real>(
    case: &ExperimentCase<T>,
    dim: usize,
    steps: usize,
    probe: T,
    window: (T, T),
) -> Result<DecayReport<T>> {
    let reference = case
        .reference
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter(format!("case {} has no steady state", case.name)))?;
    let rec = solve(case, dim, steps, &Snapshots::All)?;
    let v = (reference.func())(probe);
    let times: Vec<T> = rec.steps.iter().map(|&n| rec.grid.node(n)).collect();
    let deviation = rec
        .coeffs
        .iter()
        .map(|c| Ok((v - crate::spectral::evaluate(c, &[probe])?[0]).abs()))
        .collect::<Result<Vec<T>>>()?;
    let (xs, ys): (Vec<T>, Vec<T>) = times
        .iter()
        .zip(&deviation)
        .filter(|(&t, _)| t >= window.0 && t <= window.1)
        .map(|(&t, &d)| (t.ln(), d.ln()))
        .unzip();
    let slope = super::order::fit_line(&xs, &ys)?.slope;
    Ok(DecayReport {
        times,
        deviation,
        norms: rec.norms,
        slope,
    })
}
