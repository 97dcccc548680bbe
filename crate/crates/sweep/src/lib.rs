//! Command-line sweeps over reduced temperature and coupling.
//!
//! [`config`] turns flags and `key = value` files into a validated
//! [`SweepConfig`], [`run`] evaluates the grid, [`emit`] writes CSV or
//! plot data, and [`report`] compares the closed forms with the direct sum.

pub mod config;
pub mod emit;
pub mod report;
pub mod run;

pub use config::{parse_config, parse_config_file, ConfigError, SweepConfig};
pub use emit::{emit_csv, emit_plotdat, EmitError, CSV_HEADER};
pub use report::{discrepancy_report, DiscrepancyReport, ReportProbe};
pub use run::{run_sweep, Row, RowFailure, SweepOutcome};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    /// Tail bound not reached, divergent sum, singular or non-physical closed form.
    pub const NUMERICAL: i32 = 4;
}
