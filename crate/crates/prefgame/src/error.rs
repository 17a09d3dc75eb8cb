use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("capacity exceeded during {stage} (limit {limit} states)")]
    Capacity { stage: &'static str, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Malformed(msg.into()))
}

/// State budget shared by every exponential construction.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 2_000_000 }
    }
}

impl Limits {
    pub fn new(max_states: usize) -> Self {
        Limits { max_states }
    }

    pub(crate) fn check(&self, stage: &'static str, count: usize) -> Result<()> {
        if count > self.max_states {
            Err(Error::Capacity {
                stage,
                limit: self.max_states,
            })
        } else {
            Ok(())
        }
    }
}
