use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceExceeded {
    pub what: String,
    pub cap: u64,
    /// Whatever partial information was known when the search gave up.
    pub detail: String,
}

impl fmt::Display for ResourceExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} exceeded cap {}", self.what, self.cap)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("element {0} is outside the colouring domain")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(ResourceExceeded),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("construction failed at stage `{stage}`: {msg}")]
    Construction { stage: &'static str, msg: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn construction(stage: &'static str, msg: impl Into<String>) -> Self {
        Error::Construction {
            stage,
            msg: msg.into(),
        }
    }
}
