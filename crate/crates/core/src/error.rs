//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter dimension {n_t} exceeds the simplicial-interpolation limit of {max}; use the ELM surrogate")]
    UnsupportedDimension { n_t: usize, max: usize },

    #[error("point lies outside the parameter box: {0}")]
    OutOfDomain(String),

    #[error("linear solve failed at t = {parameter:?}: {reason}")]
    NumericalFailure { parameter: Vec<f64>, reason: String },

    #[error("minimum-norm fit failed: {0}; consider resampling the feature bank with a different seed")]
    FitFailure(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("model file is corrupt or has an unsupported format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
