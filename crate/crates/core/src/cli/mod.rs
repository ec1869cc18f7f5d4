//! Command-line front end: configuration, the trace, cycle, sweep and pareto
//! commands, and deterministic CSV/JSON output.

mod commands;
mod config;
mod format;

pub use commands::{
    cmd_cycle, cmd_pareto, cmd_sweep, cmd_trace, evaluate_grid, exit, write_output, CliError,
    Outcome, PARETO_HEADER, PARETO_METHODS, TRACE_HEADER,
};
pub use config::{
    overrides_from_json, parse_config, parse_kv, ConfigError, OutputFormat, RunConfig, Spacing,
    Stroke, SweepSpec, CONFIG_KEYS,
};
pub use format::{record_row, sig12, RECORD_HEADER};
