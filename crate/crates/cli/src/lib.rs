//! Command-line front end of `rowpade`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use args::{Cli, Command};
use error::CliResult;

/// Runs a parsed command line and returns the exit status.
pub fn run(cli: &Cli) -> CliResult<u8> {
    if let Some(jobs) = cli.jobs {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match &cli.command {
        Command::Approximate(a) => commands::approximate(a),
        Command::Row(a) => commands::row(a),
        Command::Verify(a) => commands::verify(a),
        Command::ListExamples(a) => commands::list_examples(a),
    }
}
