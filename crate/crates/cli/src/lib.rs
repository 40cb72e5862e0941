//! Command-line front end: text formats and subcommands.

pub mod app;
pub mod format;

pub use app::{run, run_with, Outcome};
