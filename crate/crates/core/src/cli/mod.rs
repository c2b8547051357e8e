//! Command-line front end: the knot expression parser, the JSON report and
//! the `bound` / `cg-table` commands.
//!
//! Exit codes: 0 when every search finished, 2 when a cap was hit and the
//! reported bound is partial, 1 on invalid input.

mod commands;
pub mod parse;
pub mod report;

pub use commands::{
    bound_report, cg_table_text, run, BoundArgs, CgTableArgs, Cli, Command, EXIT_COMPLETE,
    EXIT_INCOMPLETE, EXIT_INPUT,
};
pub use parse::{parse_knot, ErrorCode, ParseError};
pub use report::BoundReport;

/// Environment variable naming the signature table cache directory;
/// `--cache-dir` takes precedence.
pub const CACHE_DIR_ENV: &str = "DSLICE_CACHE_DIR";
