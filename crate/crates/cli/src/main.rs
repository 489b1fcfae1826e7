use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use cvbm_cli::{init_threads, parse_config, run, CliError};

/// Sample, train or benchmark continuous-variable Born machines.
///
/// The command and all of its settings come from the TOML file.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Run configuration.
    config: PathBuf,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.config.display())))
        .and_then(|text| parse_config(&text))
        .and_then(|config| {
            init_threads()?;
            run(&config)
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
