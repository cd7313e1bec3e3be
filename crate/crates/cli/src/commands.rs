use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use subdiff::experiments::{
    bench_assembly, case_engineered_with, case_fisher, case_longtime, case_longtime_frozen, case_zero,
    longtime_decay, spatial_sweep, temporal_sweep, Coupling, ExperimentCase, OrderReport, TemporalMetric,
    Variant,
};
use subdiff::fracops::{l1_error_limit, l1_literature_bound, rho_n, rho_tilde_n};
use subdiff::solver::{run, Snapshots, SolverConfig};
use subdiff::spectral::{evaluate, Parallelism};

use crate::settings::{key, parse_threads, CliError, CliResult, Key, Settings, RESULT_SECTION};
use crate::table::{format_float, CsvTable};

pub const CASES: &[&str] = &[
    "engineered-spatial",
    "engineered-temporal",
    "fisher",
    "longtime",
    "longtime-frozen",
    "zero",
];

pub const VERIFY_KEYS: &[Key] = &[
    key("alphas", Some("0.1,0.5,0.9"), "fractional orders, comma-separated"),
    key("n", Some("16,64,256,1024"), "step counts n ≥ 2, comma-separated"),
];

pub const SOLVE_KEYS: &[Key] = &[
    key("case", Some("fisher"), "named case (see --help of the command)"),
    key("alpha", Some("0.5"), "fractional order in (0, 1)"),
    key("mu", Some("2"), "time exponent of engineered cases, a number or 'alpha'"),
    key("T", Some("1"), "final time"),
    key("profile", Some("sin"), "initial profile of the fisher case: sin or parabola"),
    key("coupling", Some("exact"), "engineered source: exact (evaluated on the exact solution) or closed"),
    key("N", Some("10"), "basis dimension"),
    key("steps", None, "number of time steps [default 128]"),
    key("h", None, "time step, alternative to steps"),
    key("Q", None, "quadrature nodes [default N+8]"),
    key("mesh", Some("uniform"), "time mesh; only uniform is implemented (graded meshes: see README)"),
    key("tol", Some("1e-12"), "first-step fixed-point tolerance"),
    key("max-iter", Some("100"), "first-step fixed-point iteration cap"),
];

pub const CONVERGENCE_KEYS: &[Key] = &[
    key("case", Some("engineered-temporal"), "named case"),
    key("alpha", Some("0.5"), "fractional order in (0, 1)"),
    key("mu", Some("2"), "time exponent of engineered cases, a number or 'alpha'"),
    key("T", Some("1"), "final time"),
    key("profile", Some("sin"), "initial profile of the fisher case: sin or parabola"),
    key("coupling", Some("exact"), "engineered source: exact or closed"),
    key("mode", Some("temporal"), "temporal or spatial"),
    key("metric", Some("fixed"), "temporal error at the final time (fixed) or over all levels (max)"),
    key("N", Some("5"), "basis dimension of a temporal study"),
    key("steps-list", Some("32,64,128,256,512,1024"), "step counts of a temporal study, ascending"),
    key("N-list", Some("3..15"), "basis dimensions of a spatial study, list or a..b"),
    key("steps", Some("100"), "step count of a spatial study"),
    key("reference-N", Some("50"), "reference dimension of a spatial study"),
    key("mesh", Some("uniform"), "time mesh; only uniform is implemented (graded meshes: see README)"),
];

pub const LONGTIME_KEYS: &[Key] = &[
    key("case", Some("longtime"), "longtime or longtime-frozen"),
    key("alpha", Some("0.5"), "fractional order in (0, 1)"),
    key("T", Some("2000"), "final time"),
    key("N", Some("10"), "basis dimension"),
    key("steps", None, "number of time steps"),
    key("h", None, "time step, alternative to steps [default 0.5]"),
    key("probe", Some("0.5"), "probe point in (0, 1)"),
    key("window", Some("100,2000"), "fit window t0,t1 of the decay slope"),
    key("mesh", Some("uniform"), "time mesh; only uniform is implemented (graded meshes: see README)"),
];

pub const BENCH_KEYS: &[Key] = &[
    key("N-list", Some("7,9,11,13,15,17,19"), "basis dimensions"),
    key("steps", Some("128"), "time steps on [0, 1]"),
    key("reps", Some("11"), "minimum timed repetitions per leg"),
];

pub fn keys_of(command: &str) -> &'static [Key] {
    match command {
        "verify-constants" => VERIFY_KEYS,
        "solve" => SOLVE_KEYS,
        "convergence" => CONVERGENCE_KEYS,
        "longtime" => LONGTIME_KEYS,
        "bench" => BENCH_KEYS,
        _ => &[],
    }
}

pub fn execute(s: &mut Settings) -> CliResult<Vec<PathBuf>> {
    if s.is_set("mesh") && s.raw("mesh")? != "uniform" {
        return Err(CliError::Config(format!(
            "mesh '{}' is not supported: only uniform time steps are implemented (graded meshes are described in the README)",
            s.raw("mesh")?
        )));
    }
    let out = PathBuf::from(s.raw("out")?);
    fs::create_dir_all(&out)?;
    let start = Instant::now();
    let (files, mut result) = match s.command() {
        "verify-constants" => verify_constants(s, &out)?,
        "solve" => solve(s, &out)?,
        "convergence" => convergence(s, &out)?,
        "longtime" => longtime(s, &out)?,
        "bench" => bench(s, &out)?,
        other => return Err(CliError::Config(format!("unknown command {other}"))),
    };
    result.insert(0, ("wall_time_s".into(), format_float(start.elapsed().as_secs_f64())));
    let meta = out.join("meta.txt");
    write_meta(s, &result, &meta)?;
    Ok(files.into_iter().chain([meta]).collect())
}

type Outcome = (Vec<PathBuf>, Vec<(String, String)>);

fn write_meta(s: &Settings, result: &[(String, String)], path: &Path) -> CliResult<()> {
    let mut text = String::new();
    writeln!(text, "; effective parameters; this file is a valid --config").unwrap();
    writeln!(text, "[{}]", s.command()).unwrap();
    for (k, v, origin) in s.echo() {
        writeln!(text, "; {k}: {origin}").unwrap();
        writeln!(text, "{k} = {v}").unwrap();
    }
    writeln!(text, "\n[{RESULT_SECTION}]").unwrap();
    writeln!(text, "version = {}", env!("CARGO_PKG_VERSION")).unwrap();
    for (k, v) in result {
        writeln!(text, "{k} = {v}").unwrap();
    }
    fs::write(path, text)?;
    Ok(())
}

fn threads(s: &Settings) -> CliResult<Parallelism> {
    Ok(Parallelism::with_threads(parse_threads(s.raw("threads")?)?)?)
}

fn alpha(s: &Settings) -> CliResult<f64> {
    let a: f64 = s.get("alpha")?;
    if !(a > 0.0 && a < 1.0) {
        return Err(CliError::Config(format!("alpha must lie in (0, 1), got {a}")));
    }
    Ok(a)
}

fn positive(s: &Settings, name: &str) -> CliResult<f64> {
    let v: f64 = s.get(name)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(CliError::Config(format!("{name} must be positive, got {v}")));
    }
    Ok(v)
}

pub fn build_case(s: &Settings) -> CliResult<ExperimentCase<f64>> {
    let name = s.raw("case")?;
    let a = alpha(s)?;
    let horizon = positive(s, "T")?;
    let mu = || -> CliResult<f64> {
        match s.raw("mu")? {
            "alpha" => Ok(a),
            _ => positive(s, "mu"),
        }
    };
    let coupling = || -> CliResult<Coupling> {
        match s.raw("coupling")? {
            "exact" => Ok(Coupling::AlongExact),
            "closed" => Ok(Coupling::Closed),
            other => Err(CliError::Config(format!("coupling must be exact or closed, got '{other}'"))),
        }
    };
    let mut case = match name {
        "engineered-spatial" => case_engineered_with(mu()?, a, Variant::Spatial, coupling()?)?,
        "engineered-temporal" => case_engineered_with(mu()?, a, Variant::Temporal, coupling()?)?,
        "fisher" => {
            let variant = match s.raw("profile")? {
                "sin" => Variant::Spatial,
                "parabola" => Variant::Temporal,
                other => return Err(CliError::Config(format!("profile must be sin or parabola, got '{other}'"))),
            };
            case_fisher(a, variant)?
        }
        "longtime" => case_longtime(a, horizon)?,
        "longtime-frozen" => case_longtime_frozen(a, horizon)?,
        "zero" => case_zero(a, horizon)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown case '{other}'; expected one of {}",
                CASES.join(", ")
            )))
        }
    };
    case.spec.horizon = horizon;
    Ok(case)
}

/// Step count from `steps` or `h`; both given must satisfy `h·steps = T`.
fn resolve_steps(s: &mut Settings, horizon: f64, fallback: usize) -> CliResult<usize> {
    let steps: Option<usize> = s.get_opt("steps")?;
    let h: Option<f64> = s.get_opt("h")?;
    let steps = match (steps, h) {
        (Some(m), None) => m,
        (None, None) => fallback,
        (m, Some(h)) => {
            if !(h > 0.0) {
                return Err(CliError::Config(format!("h must be positive, got {h}")));
            }
            let ratio = horizon / h;
            let from_h = ratio.round();
            if (ratio - from_h).abs() > 1e-9 * ratio.max(1.0) || from_h < 1.0 {
                return Err(CliError::Config(format!("T = {horizon} is not a multiple of h = {h}")));
            }
            let from_h = from_h as usize;
            if let Some(m) = m {
                if m != from_h {
                    return Err(CliError::Config(format!(
                        "h·steps must equal T: {h}·{m} ≠ {horizon}"
                    )));
                }
            }
            from_h
        }
    };
    if steps < 2 {
        return Err(CliError::Config(format!("need at least 2 time steps, got {steps}")));
    }
    s.set_derived("steps", steps.to_string());
    s.set_derived("h", format_float(horizon / steps as f64));
    Ok(steps)
}

fn verify_constants(s: &Settings, out: &Path) -> CliResult<Outcome> {
    let alphas: Vec<f64> = s.list("alphas")?;
    let ns: Vec<usize> = s.list("n")?;
    let mut t = CsvTable::new(["alpha", "n", "rho_n", "rho_tilde_n", "C_limit", "C_bound_literature"]);
    for &a in &alphas {
        let limit = l1_error_limit(a)?;
        let bound = l1_literature_bound(a)?;
        for &n in &ns {
            t.push_values([a, n as f64, rho_n(a, n)?, rho_tilde_n(a, n)?, limit, bound])?;
        }
    }
    let path = out.join("constants.csv");
    t.write(&path)?;
    Ok((vec![path], vec![("rows".into(), t.rows.len().to_string())]))
}

/// Uniform sample grid `x_i = i/100`, `i = 0..=100`.
pub fn sample_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 100.0).collect()
}

fn solve(s: &mut Settings, out: &Path) -> CliResult<Outcome> {
    let case = build_case(s)?;
    let steps = resolve_steps(s, case.spec.horizon, 128)?;
    let dim: usize = s.get("N")?;
    let mut cfg = SolverConfig::new(dim, steps)
        .with_parallelism(threads(s)?)
        .with_nonlinear(s.get("tol")?, s.get("max-iter")?);
    if let Some(q) = s.get_opt("Q")? {
        cfg = cfg.with_quad_order(q);
    }
    cfg.validate()?;
    s.set_derived("Q", cfg.effective_quad_order().to_string());

    let rec = run(&case.spec, &cfg, &Snapshots::All)?;
    let xs = sample_grid();
    let mut t = CsvTable::new(std::iter::once("t".to_string()).chain(xs.iter().map(|&x| format_float(x))));
    let mut max_err = 0.0_f64;
    for (&n, c) in rec.steps.iter().zip(&rec.coeffs) {
        let tn = rec.grid.node(n);
        let u = evaluate(c, &xs)?;
        if let Some(exact) = &case.exact {
            for (&x, &v) in xs.iter().zip(&u) {
                max_err = max_err.max((v - (exact.func())(x, tn)).abs());
            }
        }
        t.push_values(std::iter::once(tn).chain(u))?;
    }
    let path = out.join("solution.csv");
    t.write(&path)?;
    let mut result = vec![
        ("case_source".into(), case.spec.source.name().to_string()),
        ("first_step_iterations".into(), rec.first_step_iterations.to_string()),
        ("threads_used".into(), cfg.parallelism.threads().to_string()),
        ("levels".into(), rec.steps.len().to_string()),
        ("max_norm".into(), format_float(rec.max_norm())),
    ];
    if case.exact.is_some() {
        result.push(("max_abs_error_on_samples".into(), format_float(max_err)));
    }
    Ok((vec![path], result))
}

fn report_table(r: &OrderReport<f64>, level_name: &str) -> CliResult<CsvTable> {
    let mut t = CsvTable::new([level_name, "error", "pairwise_order", "fitted_order"]);
    for (k, &(level, err)) in r.levels.iter().enumerate() {
        let pair = k.checked_sub(1).and_then(|j| r.pairwise.get(j)).copied();
        t.push(vec![Some(level), Some(err), pair, Some(r.fitted)])?;
    }
    Ok(t)
}

fn convergence(s: &mut Settings, out: &Path) -> CliResult<Outcome> {
    let case = build_case(s)?;
    let par = threads(s)?;
    let metric = match s.raw("metric")? {
        "fixed" => TemporalMetric::Fixed,
        "max" => TemporalMetric::Max,
        other => return Err(CliError::Config(format!("metric must be fixed or max, got '{other}'"))),
    };
    let (report, level_name) = match s.raw("mode")? {
        "temporal" => {
            let steps: Vec<usize> = s.list("steps-list")?;
            (temporal_sweep(&case, s.get("N")?, &steps, metric, &par)?, "h")
        }
        "spatial" => {
            if metric != TemporalMetric::Fixed {
                return Err(CliError::Config("metric = max applies to temporal studies only".into()));
            }
            let dims: Vec<usize> = s.list("N-list")?;
            let r = spatial_sweep(&case, &dims, s.get("steps")?, s.get("reference-N")?, &par)?;
            (r, "N")
        }
        other => return Err(CliError::Config(format!("mode must be temporal or spatial, got '{other}'"))),
    };
    let path = out.join("convergence.csv");
    report_table(&report, level_name)?.write(&path)?;
    let mut result = vec![
        ("method".into(), report.method.label().to_string()),
        ("fitted_order".into(), format_float(report.fitted)),
        ("fit_levels".into(), report.fit_levels.to_string()),
        ("conclusive".into(), report.conclusive.to_string()),
    ];
    if let Some(r2) = report.r_squared {
        result.push(("r_squared".into(), format_float(r2)));
    }
    if let Some(u) = report.unfiltered {
        result.push(("r_squared_all_levels".into(), format_float(u.r_squared)));
    }
    Ok((vec![path], result))
}

fn longtime(s: &mut Settings, out: &Path) -> CliResult<Outcome> {
    let name = s.raw("case")?;
    if name != "longtime" && name != "longtime-frozen" {
        return Err(CliError::Config(format!("longtime needs case longtime or longtime-frozen, got '{name}'")));
    }
    let a = alpha(s)?;
    let horizon = positive(s, "T")?;
    let case = if name == "longtime" { case_longtime(a, horizon)? } else { case_longtime_frozen(a, horizon)? };
    let fallback = (horizon / 0.5).round().max(2.0) as usize;
    let steps = resolve_steps(s, horizon, fallback)?;
    let probe: f64 = s.get("probe")?;
    if !(probe > 0.0 && probe < 1.0) {
        return Err(CliError::Config(format!("probe must lie in (0, 1), got {probe}")));
    }
    let window: Vec<f64> = s.list("window")?;
    if window.len() != 2 || !(window[0] > 0.0 && window[0] < window[1]) {
        return Err(CliError::Config("window must be two increasing positive times t0,t1".into()));
    }
    let r = longtime_decay(&case, s.get("N")?, steps, probe, (window[0], window[1]))?;
    let mut t = CsvTable::new(["t", "deviation", "norm"]);
    for ((&tn, &d), &nrm) in r.times.iter().zip(&r.deviation).zip(&r.norms) {
        t.push_values([tn, d, nrm])?;
    }
    let path = out.join("longtime.csv");
    t.write(&path)?;
    let max_norm = r.norms.iter().copied().fold(0.0, f64::max);
    Ok((
        vec![path],
        vec![
            ("slope".into(), format_float(r.slope)),
            ("max_norm".into(), format_float(max_norm)),
        ],
    ))
}

fn bench(s: &mut Settings, out: &Path) -> CliResult<Outcome> {
    let raw = s.raw("threads")?;
    let mut k = parse_threads(raw)?;
    if k < 2 {
        if !raw.eq_ignore_ascii_case("auto") {
            return Err(CliError::Config("bench needs at least 2 threads for the multi-thread leg".into()));
        }
        eprintln!("warning: 1 hardware thread available; the multi-thread leg uses 2 threads");
        k = 2;
    }
    let pool = Parallelism::with_threads(k)?;
    let dims: Vec<usize> = s.list("N-list")?;
    let reps: usize = s.get("reps")?;
    let rows = bench_assembly(&dims, s.get("steps")?, &pool, reps)?;
    let mut t = CsvTable::new(["N", "t_single", "t_multi", "tau", "reps", "threads"]);
    for r in &rows {
        t.push_values([r.dim as f64, r.t_single, r.t_multi, r.tau, r.reps as f64, r.threads as f64])?;
    }
    let path = out.join("bench.csv");
    t.write(&path)?;
    Ok((vec![path], vec![("threads_used".into(), k.to_string())]))
}
