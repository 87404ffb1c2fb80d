mod args;
mod commands;
#[cfg(test)]
mod contract_tests;
mod output;

use std::io;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] spectral_bundles::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] io::Error),
}

/// 0 when every check passed, 1 for a failed verification or a runtime
/// error, 2 for input the library rejects.
pub fn exit_status(result: &Result<bool, CliError>) -> u8 {
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(CliError::Core(spectral_bundles::Error::InvalidInput(_))) => 2,
        Err(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli).and_then(|env| output::emit(&env, &cli.global).map(|()| env.pass));
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_status(&result))
}
