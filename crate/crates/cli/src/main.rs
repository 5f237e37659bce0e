use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = brauer_cli::Cli::parse();
    match brauer_cli::run(&cli.into()) {
        Ok(outcome) => {
            if let Err(e) = outcome.emit() {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
