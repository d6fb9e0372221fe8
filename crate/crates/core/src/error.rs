use std::fmt;

use thiserror::Error;

use crate::cubediag::CubeViolation;
use crate::griddiag::GridViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid grid diagram: {}", List(.0))]
    InvalidGrid(Vec<GridViolation>),
    #[error("invalid cube diagram: {}", List(.0))]
    InvalidCube(Vec<CubeViolation>),
    #[error("illegal move: {0}")]
    IllegalMove(IllegalMove),
    #[error("bend constraints form a cycle through bends {0:?}; untwist first")]
    ConstraintCycle(Vec<usize>),
    #[error("ordering budget of {budget} exhausted; best ordering leaves {best} crossing violation(s)")]
    BudgetExhausted { budget: usize, best: usize },
    #[error("crossing surgery failed: {0}")]
    Surgery(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IllegalMove {
    /// Index outside the diagram.
    OutOfRange(String),
    /// Commutation of two flats/rows/columns whose segments interleave.
    Interleaved(String),
    /// The moved diagram violates a crossing condition.
    CrossingFailure(Vec<CubeViolation>),
    /// No destabilization pattern at the requested site.
    PatternAbsent(String),
}

impl fmt::Display for IllegalMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IllegalMove::OutOfRange(s) => write!(f, "out of range: {s}"),
            IllegalMove::Interleaved(s) => write!(f, "segments interleave: {s}"),
            IllegalMove::CrossingFailure(v) => write!(f, "crossing conditions fail: {}", List(v)),
            IllegalMove::PatternAbsent(s) => write!(f, "pattern absent: {s}"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

struct List<'a, T>(&'a [T]);

impl<T: fmt::Display> fmt::Display for List<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
