//! Fully discrete time stepper: L1 in time, modal Galerkin in space, with
//! nonlinear coefficients frozen at a second-order extrapolation.

mod config;
mod problem;
mod record;
mod stepper;

pub use config::SolverConfig;
pub use problem::{zero_problem, FieldFn, Named, ProblemSpec, ScalarFn, SourceFn};
pub use record::{Snapshots, SolutionRecord};
pub use stepper::{extrapolate, run, StepperState, ELLIPTICITY_FLOOR};
