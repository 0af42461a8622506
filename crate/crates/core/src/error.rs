//! Error type shared by all modules.

use crate::possibility::Shape;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A query point fell outside the frame.
    #[error("point {x} lies outside the frame [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    /// A precondition on arguments was violated (mismatched frames, bad
    /// parameters, empty input lists, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The likelihood is zero everywhere; no possibility function exists.
    #[error("degenerate evidence: likelihood is zero everywhere")]
    DegenerateEvidence,

    /// An α-superlevel set is not a single interval, so the consonant
    /// construction does not apply at that level.
    #[error("superlevel set at alpha = {alpha} is not a single interval")]
    NonConsonant { alpha: f64 },

    /// An operation that needs nested focal structure was handed a shape
    /// without one.
    #[error("{context} does not support shape {shape:?}")]
    UnsupportedShape { shape: Shape, context: &'static str },

    /// The evidence is irreconcilable: all mass lands on empty
    /// intersections (k = 1), where the combination rules are undefined.
    #[error("total conflict: {0}")]
    TotalConflict(String),

    /// Two redundant computations of the same quantity disagreed beyond
    /// tolerance; usually a grid-resolution failure.
    #[error("numerical self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
