use thiserror::Error;

/// Unified error type for the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input could not be parsed; `pos` is a 0-based byte offset into
    /// the offending input.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Two words that must live on the same number of strands do not.
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    /// A generator index or position lies outside the valid range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A relation rewrite does not match at the requested position.
    #[error("relation `{rel}` does not apply at position {pos}")]
    NoMatch { rel: String, pos: usize },

    /// The word does not admit strand-removal at the top index.
    #[error("not destabilizable: {reason}")]
    NotDestabilizable { reason: String },

    /// The requested move is blocked by the word's structure.
    #[error("move not allowed here")]
    NotAllowed,

    /// A move record is structurally invalid (bad fields, missing sign, ...).
    #[error("invalid move: {0}")]
    InvalidMove(String),

    /// A state-sum was refused because the diagram has too many crossings.
    #[error("crossing count {count} exceeds limit {limit}")]
    CrossingLimit { count: usize, limit: usize },

    /// A Morse word is malformed (bad widths, dangling strands, ...).
    #[error("invalid morse word: {0}")]
    InvalidMorse(String),

    /// A Gauss code is malformed (unpaired ids, sign clashes, ...).
    #[error("invalid gauss code: {0}")]
    InvalidCode(String),

    /// An operation requiring a knot (one component) was given a link.
    #[error("expected 1 component, found {0}")]
    MultiComponent(usize),

    /// A search or enumeration budget is degenerate.
    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    /// An internal consistency check failed; this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}
