use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use pathinfo_cli::args::Args;
use pathinfo_cli::commands;

fn main() -> ExitCode {
    let args = Args::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(&args, &mut out);
    let _ = out.flush();
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
