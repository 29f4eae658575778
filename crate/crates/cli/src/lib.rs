//! Batch front end for the 2-uninorm toolkit: config parsing, command
//! dispatch and report emission.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{fill_audit_report, interval_notation, run_command, RunError};
pub use config::{parse_config, parse_table_rows, Command, ConfigError, Format, RunConfig};
pub use report::{emit_report, Report, Table, FORMAT_VERSION};
