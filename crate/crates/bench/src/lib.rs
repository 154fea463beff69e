//! Benchmark harness for the `klshell` solver.
//!
//! Sets up the curved cantilever strip, the Scordelis-Lo roof and the
//! hemisphere with hole, runs single cases or mesh sweeps and writes result
//! tables and field files.

pub mod analytic;
pub mod cases;
pub mod config;
pub mod references;
pub mod run;
pub mod sweep;

pub use analytic::{analytic_cantilever, Cantilever, CantileverFields};
pub use cases::{setup, Probe, Setup};
pub use config::{parse_m_list, Case, CaseConfig, Regime};
pub use run::{run_case, run_case_with, write_outputs, ErrorSummary, Extrema, ResultRecord, RunOutput};
pub use sweep::{convergence_sweep, efficiency_csv, efficiency_scan, EfficiencyPoint, Measure, SweepRow, SweepTable};
