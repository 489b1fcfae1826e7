use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The configuration document is not well formed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The configuration is well formed but physically or logically
    /// inconsistent.
    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error(transparent)]
    Simulation(#[from] cvbm::Error),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// Process exit status: 1 for configuration problems, 2 for failures
    /// while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => 1,
            CliError::Simulation(_) | CliError::Io { .. } => 2,
        }
    }
}
