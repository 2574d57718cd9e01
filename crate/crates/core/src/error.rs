use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence")]
    Empty,

    #[error("invalid symbol {found:?} at index {index}, expected '0' or '1'")]
    Parse { index: usize, found: char },

    #[error("{0}")]
    Domain(String),

    #[error("formula inapplicable: omega = {omega} is outside [{lo}, {hi}] for n = {n}")]
    FormulaInapplicable {
        n: usize,
        omega: usize,
        lo: usize,
        hi: usize,
    },

    #[error("structure theorem inapplicable: omega = {omega} is outside [{lo}, {hi}] for n = {n}")]
    StructureInapplicable {
        n: usize,
        omega: usize,
        lo: usize,
        hi: usize,
    },

    #[error(
        "below fast-path bound: no rotation reaches c0 = {c0} for n = {n}; use the periodic oracle"
    )]
    BelowFastPathBound { n: usize, c0: usize },

    #[error("{what} = {value} exceeds the exhaustive limit {limit}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

/// Coarse error category, used by the command line to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Domain,
    Resource,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Empty | Error::Parse { .. } => ErrorKind::Usage,
            Error::ResourceLimit { .. } => ErrorKind::Resource,
            _ => ErrorKind::Domain,
        }
    }
}
