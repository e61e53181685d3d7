//! Command-line front end for the 2-inner-product verification suites.
//!
//! Every command produces one JSON report `{command, config, properties,
//! verdict, ...}` and a fixed-width table of the same properties. Numbers
//! in the JSON are written with 17 significant digits; non-finite values
//! become `null`.

pub mod args;
pub mod commands;
pub mod error;
pub mod grid_input;
pub mod instance;
pub mod report;

pub use args::Cli;
pub use commands::{run, RunOutput};
pub use error::CliError;
