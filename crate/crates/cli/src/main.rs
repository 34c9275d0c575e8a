use std::process::ExitCode;

use clap::Parser;
use rowpade_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match rowpade_cli::run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
