//! Configuration-driven driver for sampling, training and benchmarking.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::{cmd_benchmark, cmd_sample, cmd_train, run};
pub use config::{parse_config, RunConfig};
pub use error::CliError;

/// Environment variable that sets the worker thread count.
pub const THREADS_ENV: &str = "CVBM_THREADS";

/// Configures the global thread pool from [`THREADS_ENV`], if set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| {
        CliError::Validation(format!("{THREADS_ENV}={value} is not a thread count"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Validation(e.to_string()))
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
