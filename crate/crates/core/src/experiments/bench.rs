use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::solver::{run, Snapshots, SolverConfig};
use crate::spectral::Parallelism;

use super::cases::{case_fisher, Variant};

/// Timings of one basis dimension, in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub dim: usize,
    pub t_single: f64,
    pub t_multi: f64,
    /// `t_single / t_multi`.
    pub tau: f64,
    pub reps: usize,
    pub threads: usize,
}

const WARMUPS: usize = 2;
/// Each leg runs at least this long in total so the median is well above clock resolution.
const MIN_LEG: Duration = Duration::from_millis(50);
const MAX_REPS: usize = 1001;

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Fisher–Kolmogorov solve (`α = 1/2`, `φ = sin πx`, `M = steps`) timed with
/// serial and pooled assembly.
///
/// Both legs must produce bit-identical histories before any timing is taken.
pub fn bench_assembly(
    dims: &[usize],
    steps: usize,
    pool: &Parallelism,
    min_reps: usize,
) -> Result<Vec<BenchRow>> {
    if min_reps == 0 {
        return Err(Error::InvalidParameter("repetitions must be positive".into()));
    }
    let case = case_fisher(0.5_f64, Variant::Spatial)?;
    dims.iter()
        .map(|&dim| {
            let serial = SolverConfig::new(dim, steps);
            let pooled = SolverConfig::new(dim, steps).with_parallelism(pool.clone());
            let a = run(&case.spec, &serial, &Snapshots::All)?;
            let b = run(&case.spec, &pooled, &Snapshots::All)?;
            if a.coeffs != b.coeffs {
                return Err(Error::InvalidParameter(format!(
                    "serial and pooled runs differ at N = {dim}"
                )));
            }
            let time = |cfg: &SolverConfig<f64>, reps: usize| -> Result<Vec<f64>> {
                (0..reps)
                    .map(|_| {
                        let start = Instant::now();
                        run(&case.spec, cfg, &Snapshots::Final)?;
                        Ok(start.elapsed().as_secs_f64())
                    })
                    .collect()
            };
            time(&serial, WARMUPS)?;
            time(&pooled, WARMUPS)?;
            let mut reps = min_reps;
            loop {
                let s = time(&serial, reps)?;
                let m = time(&pooled, reps)?;
                let shortest = s.iter().sum::<f64>().min(m.iter().sum::<f64>());
                if shortest >= MIN_LEG.as_secs_f64() || reps >= MAX_REPS {
                    let (t_single, t_multi) = (median(s), median(m));
                    return Ok(BenchRow {
                        dim,
                        t_single,
                        t_multi,
                        tau: t_single / t_multi,
                        reps,
                        threads: pool.threads(),
                    });
                }
                reps = (reps * 2 + 1).min(MAX_REPS);
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn bench_rows_are_positive() {
        let pool = Parallelism::with_threads(2).unwrap();
        let rows = bench_assembly(&[3], 8, &pool, 3).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].tau > 0.0 && rows[0].reps >= 3);
    }
}
