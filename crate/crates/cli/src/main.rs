mod args;
mod commands;
mod tables;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Failure with a specific exit code: 1 for a correctness failure, 3 for an
/// exhausted budget under `--require-exhaustive`.
#[derive(Debug)]
pub struct Exit {
    pub code: u8,
    pub message: String,
}

impl Exit {
    pub fn failure(message: impl Into<String>) -> anyhow::Error {
        Exit { code: 1, message: message.into() }.into()
    }

    pub fn budget(message: impl Into<String>) -> anyhow::Error {
        Exit { code: 3, message: message.into() }.into()
    }
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Exit>() {
                Some(x) => x.code,
                None => match e.downcast_ref::<noflab::Error>() {
                    Some(noflab::Error::Invariant(_)) => 1,
                    _ => 2,
                },
            };
            ExitCode::from(code)
        }
    }
}
