//! Workspace files, reports and command dispatch for the `art` tool.

pub mod commands;
pub mod report;
pub mod workspace;

pub use commands::{execute, CliError, Command, Options, Outcome};
pub use report::{Record, Report};
pub use workspace::{parse_workspace, parse_workspace_with_bound, Diagnostic, LoadError, Workspace};
