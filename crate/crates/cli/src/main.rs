use std::process::ExitCode;

use clap::Parser;
use knotfield_cli::args::Cli;

fn main() -> ExitCode {
    match knotfield_cli::run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
