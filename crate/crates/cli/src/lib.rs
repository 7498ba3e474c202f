//! Library side of the `gausscap` command-line tool.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use std::io::Write;

use args::{Cli, Command};
use error::CliError;

/// Dispatches one parsed invocation. Data goes to `stdout`, diagnostics to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Bounds(a) => commands::run_bounds(a, stdout),
        Command::Fig2(a) => commands::run_fig2(a, stderr),
        Command::VerifyEpi(a) => commands::run_verify_epi(a, stdout),
        Command::Entropy(a) => commands::run_entropy(a, stdout),
    }
}
