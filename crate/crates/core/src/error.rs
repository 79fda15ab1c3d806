use thiserror::Error;

use crate::algebra::Grading;
use crate::complex::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A negative free exponent could not be absorbed by the free summands at that grading.
    #[error("cannot remove {needed} free summand(s) at grading {grading}: only {available} present")]
    InsufficientRank {
        grading: Grading,
        needed: u64,
        available: u64,
    },

    #[error("operation requires a torsion-free group (torsion found at grading {0})")]
    TorsionUnsupported(Grading),

    #[error("grading {0} is not an integer")]
    NonIntegralGrading(Grading),

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error("differential does not square to zero (entry {row},{col} of d^2 is nonzero)")]
    NotSquareZero { row: usize, col: usize },

    #[error("differential entry {row},{col} does not lower the grading by one")]
    WrongDegree { row: usize, col: usize },

    #[error("invalid filtered complex: {0}")]
    Validation(Violation),

    #[error("invalid companion data: {0}")]
    Companion(String),

    #[error("computed rank is negative at filtration level {level}, grading {grading}")]
    NegativeRank { level: i64, grading: Grading },

    #[error("unknown knot '{0}'")]
    UnknownKnot(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("Euler characteristic of a homology sphere must be 1, got {0}")]
    EulerViolation(i64),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("skein trajectory ends at {found}, expected {expected}")]
    TerminalMismatch { found: String, expected: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures that signal a broken mathematical invariant rather than bad input.
    pub fn is_invariant_failure(&self) -> bool {
        matches!(
            self,
            Error::EulerViolation(_)
                | Error::Invariant(_)
                | Error::TerminalMismatch { .. }
                | Error::NegativeRank { .. }
        )
    }
}
