//! Library side of the `walkwait` binary: config loading, the subcommands,
//! and output formatting.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use error::CliError;
