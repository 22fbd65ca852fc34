use std::process::ExitCode;

use clap::Parser;
use qenum::cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::IdentityFailure(report)) => {
            print!("{report}");
            ExitCode::from(qenum::cli::EXIT_IDENTITY as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
