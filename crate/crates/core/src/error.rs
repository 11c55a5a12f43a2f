use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("attenuation singularity at median age {mu}: 1 - k(mu - mu0) = {denominator}")]
    Singularity { mu: f64, denominator: f64 },

    #[error("automation fraction {ratio} exceeds 1 at median age {mu}")]
    Range { mu: f64, ratio: f64 },

    #[error("unstable time step: dt * delta = {product} (must be < 1)")]
    Stability { product: f64 },

    #[error("non-finite loss at epoch {epoch}; learning rate likely too high")]
    NonFiniteLoss { epoch: usize },

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("alignment error: only {common} common years (need at least {required})")]
    Alignment { common: usize, required: usize },

    #[error("series mismatch: {0}")]
    Mismatch(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("all {runs} fitting runs failed; first error: {first}")]
    AllRunsFailed { runs: usize, first: Box<Error> },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of the numerics (singularities, instability,
    /// divergence) as opposed to bad input data.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::Singularity { .. }
            | Error::Range { .. }
            | Error::Stability { .. }
            | Error::NonFiniteLoss { .. } => true,
            Error::AllRunsFailed { first, .. } => first.is_numeric(),
            _ => false,
        }
    }
}
