use thiserror::Error;

use crate::exact_core::LinalgError;
use crate::finalg::FinalgError;
use crate::report::Report;

#[derive(Debug, Error, Clone)]
pub enum CoisoError {
    #[error(transparent)]
    Finalg(#[from] FinalgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid {what}: {}", first_failure(.report))]
    Invalid { what: String, report: Report },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not projective over the given generators: {0}")]
    NotProjective(String),
    #[error("{0}")]
    Input(String),
}

fn first_failure(r: &Report) -> String {
    r.failures()
        .next()
        .map(|c| format!("{} ({})", c.name, c.witness.clone().unwrap_or_default()))
        .unwrap_or_default()
}

impl CoisoError {
    pub fn invalid(what: impl Into<String>, report: Report) -> Self {
        CoisoError::Invalid { what: what.into(), report }
    }
}

pub type Result<T> = std::result::Result<T, CoisoError>;
