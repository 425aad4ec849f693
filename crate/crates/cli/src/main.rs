use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qsv_cli::{run, Cli, EXIT_RUNTIME};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_RUNTIME);
            }
            ExitCode::from(out.code)
        }
        Err(failure) => {
            eprintln!("qsv: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
