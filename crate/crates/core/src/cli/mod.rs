//! Batch front end: parameter sweeps, difference maps and oracle checks.

pub mod config;
pub mod output;
pub mod run;
pub mod verify;

pub use config::{Axis, Format, SweepConfig, PRESETS};
pub use output::{Cell, Table};
pub use run::{grid, results_table, run_difference_map, run_sweep, GridPoint, PointResult};
pub use verify::{
    oracle_elements, run_verification, run_verification_with, Analytic, ClosedForm,
    OracleElements, VerificationReport, VERIFY_TOLERANCE,
};

/// Directory that relative `--out` paths resolve against.
pub const OUT_DIR_ENV: &str = "HARVEST_OUT_DIR";

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 1;
    pub const VERIFICATION: i32 = 2;
}
