use thiserror::Error;

/// Errors raised by the lattice toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {n} is out of range 1..={max}")]
    GroundSize { n: u32, max: u32 },

    #[error("mask {mask:#b} does not fit a ground set of size {n}")]
    MaskOutOfRange { mask: u64, n: u32 },

    #[error("families live on different ground sets ({left} vs {right})")]
    GroundMismatch { left: u32, right: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit: {what} (limit {limit}, requested {requested})")]
    ResourceLimit { what: &'static str, limit: u64, requested: u64 },

    #[error("component order bound {bound} exceeded: order {order} after adding {added:?} and removing {removed:?}")]
    OrderBound { bound: usize, order: usize, added: Vec<u32>, removed: Vec<u32> },

    #[error("invariant broken: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
