//! File formats and batch runner for the cell-free clustering simulator.
//!
//! [`load_config`] reads a scenario from TOML or JSON, [`RunSpec`] describes
//! a sweep over seeds and satisfaction thresholds, and [`cmd_run`] executes
//! it and writes one records file and one summary file per sweep point.

mod config;
mod output;
mod run;

pub use config::{load_config, parse_config, ConfigFormat, LoadError};
pub use output::{record_rows, write_records, write_summary, RecordRow, StrategyReport, SummaryReport};
pub use run::{cmd_run, execute, render_table, JobResult, OutputFormat, RunError, RunSpec};
