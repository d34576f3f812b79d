//! `qbetti` command-line harness: instance generation, exact Betti numbers,
//! simulated estimation, resource tables and the complement comparison.
//!
//! Exit codes: 0 on success, 2 for invalid configuration or IO, 3 for
//! numerical failures.

mod args;
mod commands;
mod report;

use std::ffi::OsString;

use clap::Parser;

pub use args::{parse_list, Cli, Command};
pub use report::{CliError, Versions};

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match commands::dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
