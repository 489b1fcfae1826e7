use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of an operation, e.g. an occupation
    /// vector that violates the photon-number truncation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The caller combined arguments in a way the operation does not accept.
    #[error("usage error: {0}")]
    Usage(String),

    /// A circuit or state failed structural validation.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("degenerate state: trace {trace:e} is below {threshold:e}")]
    DegenerateState { trace: f64, threshold: f64 },

    #[error(
        "truncation overflow: {leakage:.3e} of the norm left the truncated space \
         (limit {limit:.1e}); increase the cutoff"
    )]
    TruncationOverflow { leakage: f64, limit: f64 },

    #[error("unsupported gradient: {0}")]
    UnsupportedGradient(String),

    /// The density at an already drawn sample is too small to condition on.
    #[error("degenerate conditional: density {density:e} at the previous sample")]
    DegenerateConditional { density: f64 },

    #[error("pathological distribution: {0}")]
    PathologicalDistribution(String),

    /// Adds shot and mode context to a sampler failure.
    #[error("shot {shot}, mode {mode}: {source}")]
    Sampling {
        shot: usize,
        mode: usize,
        #[source]
        source: Box<Error>,
    },

    /// Wraps a sampler failure with the training iteration it happened in.
    #[error("iteration {iteration}: {source}")]
    Iteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
