use num_bigint::BigUint;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("inadmissible labels ({0}, {1}, {2}): {3}")]
    Admissibility(u32, u32, u32, &'static str),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("state budget exceeded: {states} states requested, budget is {budget}")]
    Budget { states: BigUint, budget: u64 },

    #[error("recoupling reduction failed: {0}")]
    ReductionFailure(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("geometric impossibility: {0}")]
    Geometry(String),

    #[error("labeling error: {0}")]
    Labeling(String),

    #[error("pole of the gamma function at argument {argument}")]
    Pole { argument: f64 },

    #[error("pole on the sample grid at t = {t} (gamma argument {argument})")]
    PoleAt { t: f64, argument: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
