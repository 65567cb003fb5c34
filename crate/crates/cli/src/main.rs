//! `ptdimer`: spectra, sweeps, exceptional points and phase boundaries of the
//! PT-symmetric two-site Hubbard model, written as CSV.

mod commands;
mod config;
mod error;
mod output;
mod track;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::commands::Output;
use crate::config::{Command, Flags, RunConfig};
use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "ptdimer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.command, &cli.flags)?;
    log::info!("running {} with {:?}", cfg.command.name(), cfg.params);
    match commands::run(&cfg)? {
        Output::Stdout(bytes) => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&bytes)
                .and_then(|()| stdout.flush())
                .map_err(|source| CliError::Output {
                    path: "<stdout>".into(),
                    source,
                })
        }
        Output::Files(files) => output::write_files(&files),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
