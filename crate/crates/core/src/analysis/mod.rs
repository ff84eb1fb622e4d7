//! Approximation-rate diagnostics, verification suites and conjecture sweeps.

pub mod gamma;
pub mod lyapunov;
pub mod report;
pub mod sampling;
pub mod suites;

pub use gamma::{gamma_rates, GammaValue, RateRow, RateTable, WORKING_DIGITS};
pub use lyapunov::{lyapunov_estimate, lyapunov_estimate_windowed, lyapunov_from_terms, LyapunovEstimate};
pub use report::{Failure, ReportBuilder, ReportKind, VerificationReport};
pub use suites::{
    b1_fixed_point, best_approx_verify, conjecture_harness, run_suite, run_suite_named, Harness, Suite, SuiteParams,
};
