use std::process::ExitCode;

use clap::Parser;
use decayspace_cli::{emit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli.command, &outcome) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code() as u8)
}
