//! Nonlinear complexity of periodic binary sequences.
//!
//! The crate computes nonlinear (maximum order) complexity of finite and
//! periodic binary words, generates one period for every shift class of
//! `n`-periodic sequences whose complexity is at least `floor(3n/4)`, counts
//! those classes exactly, and checks all of it against exhaustive search.

pub mod bitseq;
pub mod cli;
pub mod complexity;
pub mod enumeration;
pub mod error;
pub mod oracle;
pub mod representative;
pub mod structgen;

pub use bitseq::{BitSeq, PeriodSeq};
pub use error::{Error, ErrorKind, Result};

/// Largest `n` the exhaustive operations accept unless told otherwise.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;
