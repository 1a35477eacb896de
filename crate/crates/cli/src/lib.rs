//! Problem files, report envelopes and subcommands for `defcomplex`.

pub mod commands;
pub mod error;
pub mod problem;
pub mod report;

pub use commands::{run, Cli, Command};
pub use error::CliError;
pub use problem::{Problem, RawProblem};
pub use report::{Report, Status};
