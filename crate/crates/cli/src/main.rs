//! `qeuler`: evaluate q-Euler polynomials and zeta functions, verify their
//! identities over parameter grids, and tabulate values.
//!
//! Exit status: 0 when everything passes, 1 when an identity fails, 2 on
//! usage, domain or convergence errors. Errors are printed as one JSON line.

mod args;
mod config;
mod error;
mod eval;
mod grid;
mod parse;
mod table;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use config::Context;
use error::CliError;

fn run(cli: Cli) -> Result<u8, CliError> {
    let ctx = Context::resolve(&cli.global)?;
    let stdout = std::io::stdout();
    match &cli.command {
        Command::Eval(kind) => {
            let v = eval::run(&ctx, kind)?;
            writeln!(stdout.lock(), "{v}")?;
            Ok(0)
        }
        Command::Verify(a) => verify::run(&ctx, a, &mut stdout.lock()),
        Command::Table(a) => table::run(&ctx, a).map(|()| 0),
    }
}

fn fail(e: &CliError) -> ExitCode {
    println!("{}", e.to_json());
    eprintln!("qeuler: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(&e),
    }
}
