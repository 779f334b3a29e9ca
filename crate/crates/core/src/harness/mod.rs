//! Scenario-driven checks of the truncated inequalities on concrete curves.

pub mod checks;
pub mod report;
pub mod scenario;
pub mod suite;

pub use checks::{borel_check, degeneracy_scan, gcd_bound_check, log_derivative_check, run_scenario, smt_instance_check, truncation_check};
pub use report::{MarginReport, MarginRow, Slopes, Verdict};
pub use scenario::{FnSpec, Params, PolyInput, Scenario, Target};
pub use suite::{run_suite, SuiteEntry, SuiteSummary};
