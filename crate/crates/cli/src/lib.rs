//! Library behind the `sbint` binary: argument handling, output records and
//! the `eval`, `check`, `table` and `asymptote` verbs.

use std::io::Write;

use thiserror::Error;

pub mod args;
pub mod commands;
pub mod record;

pub use args::Cli;
pub use record::OutputRecord;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Integral(#[from] sbint::IntegralError),
    #[error(transparent)]
    Oracle(#[from] sbint::OracleError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Everything that stops a command before a verdict is a usage or
    /// domain error.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        args::Command::Eval(a) => commands::eval(cli, a, out),
        args::Command::Check(a) => commands::check(cli, a, out),
        args::Command::Table(a) => commands::table(cli, a, out),
        args::Command::Asymptote(a) => commands::asymptote(cli, a, out),
    }
}
