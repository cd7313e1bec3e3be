//! Engineered and physical test cases, error norms, and convergence-order studies.

mod bench;
mod cases;
mod norms;
mod order;
mod sweep;

pub use bench::{bench_assembly, BenchRow};
pub use cases::{
    case_engineered, case_engineered_with, case_fisher, case_longtime, case_longtime_frozen,
    case_zero, Coupling, engineered_residual,
    steady_state_residual, ExperimentCase, Variant, RESIDUAL_TOL,
};
pub use norms::{difference_l2, error_l2, max_difference_l2, max_error_l2, NodeSampler};
pub use order::{
    aitken_order, fit_line, spatial_report, temporal_report, LineFit, OrderMethod, OrderReport,
    REPEAT_TOL, SPATIAL_FLOOR,
};
pub use sweep::{
    longtime_decay, spatial_sweep, temporal_sweep, DecayReport, TemporalMetric, SMALL_ALPHA,
    TIME_COUPLING_TOL,
};
