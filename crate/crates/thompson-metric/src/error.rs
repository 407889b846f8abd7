//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by parsing, algebra, classification and enumeration.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (tree, diagram or word syntax).
    #[error("parse error: {0}")]
    Parse(String),

    /// A tree violates the fixed arity p+1 or the two trees of a diagram
    /// have different leaf counts.
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// A caret-type pairing that cannot occur in a well-formed diagram
    /// (anything pairing with the first caret other than the first caret).
    #[error("illegal caret pairing ({0}, {1}); the diagram is corrupted")]
    IllegalPairing(String, String),

    /// Structural classification failed an internal consistency check.
    #[error("classification error: {0}")]
    Classification(String),

    /// An operation's precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Ball enumeration exceeded the configured entry cap.
    #[error("ball-size cap exceeded: cap {cap}, reached {reached}")]
    CapExceeded { cap: usize, reached: usize },

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    /// Filesystem I/O while persisting or loading reports.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
