use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use inducibility_cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    match run(&cli, &mut io::stdin().lock()) {
        Ok(outcome) => {
            let mut out = io::stdout().lock();
            if writeln!(out, "{}", outcome.result.to_json()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
