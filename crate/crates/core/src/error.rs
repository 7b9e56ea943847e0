use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no flat segment found on the unit sphere")]
    NoFlatSegment,

    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),

    #[error("witness rejected: {0}")]
    InvalidWitness(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("malformed norm definition: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_finite(v: crate::Vec2, what: &'static str) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
