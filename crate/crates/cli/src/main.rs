//! `htsimplify` command-line tool.
//!
//! Exit codes: 0 on success, 1 when reading, writing or processing data
//! fails, 2 when the flags are unusable.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod table;

use args::{Cli, Command};

/// A flag problem detected before any file is touched.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Some features failed; the rest were processed.
    Partial,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match cli.command {
        Command::Koch(a) => commands::koch(&a),
        Command::Simplify(a) => commands::simplify(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Compare(a) => commands::compare(&a),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            eprintln!("\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
