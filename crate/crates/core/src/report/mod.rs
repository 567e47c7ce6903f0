//! Command-line front end: argument and config resolution, dispatch to the
//! solvers, and CSV/JSON table output.

mod cli;
mod config;
mod table;

pub use cli::{
    run_cli, run_cli_with, sweep_grid, EpsTargets, RunConfig, SupInfCoefficient, Task,
    EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE,
};
pub use config::ConfigFile;
pub use table::{emit_table, format_float, render_table, Cell, OutputFormat, Table};
