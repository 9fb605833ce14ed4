use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}` = {value}: {reason}")]
    InvalidParam {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("simulation requires at least 2 agents, got {0}")]
    TooFewAgents(usize),

    #[error("not in fractal regime: mu_plus + mu_minus = {0} <= 1")]
    NotFractalRegime(f64),

    #[error("empty distribution")]
    EmptyDistribution,

    #[error("CDF is not monotone at node {index}")]
    NonMonotoneCdf { index: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Validation errors are the caller's fault; the rest are runtime failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Csv(_) | Error::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
