//! Command-line front end and verification campaigns for `sgc-core`.

pub mod campaign;
pub mod commands;

pub use commands::{run, Cli, CliError, Command};
