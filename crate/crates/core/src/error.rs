use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Load {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),

    #[error("undefined test: {0}")]
    UndefinedTest(String),

    #[error("missing annotation: {0}")]
    MissingAnnotation(String),

    #[error("length ratio {ratio:.3} between '{longer}' and '{shorter}' exceeds the limit of {max_ratio}")]
    RatioExceeded {
        shorter: String,
        longer: String,
        ratio: f64,
        max_ratio: f64,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
