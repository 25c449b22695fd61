use std::fmt;

use thiserror::Error;

use crate::Nat;

/// Failures raised while evaluating a map at a point.
///
/// These can only surface from lazily represented maps: joins whose
/// compatibility could not be decided up front, and execution loops that ran
/// out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("incompatible join at {witness}: {detail}")]
    Compatibility { witness: Nat, detail: String },
    #[error("execution of input {input} did not exit within {budget} steps")]
    Divergence { input: Nat, budget: u64 },
    #[error("copy index {index} is too large to materialize")]
    CopyIndexTooLarge { index: Nat },
    #[error("no-residue violation: stripping {start} did not terminate within {steps} steps")]
    Residue { start: Nat, steps: u64 },
}

/// Which side of a finite literal repeats a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Input,
    Output,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Input => f.write_str("input"),
            Side::Output => f.write_str("output"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not injective: {side} {value} appears in both ({}, {}) and ({}, {})", .first.0, .first.1, .second.0, .second.1)]
    Injectivity {
        side: Side,
        value: Nat,
        first: (Nat, Nat),
        second: (Nat, Nat),
    },
    #[error("overlapping {side} classes in rules {first} and {second}")]
    Overlap {
        side: Side,
        first: String,
        second: String,
    },
    #[error("invalid rule {0}: residue must be below 2^k")]
    BadRule(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("self-similar structure rejected: {0}")]
    Structure(String),
    #[error("no-residue condition fails at {witness}")]
    NoResidue { witness: Nat },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error(transparent)]
    Parse(#[from] crate::expr::ParseError),
}

impl Error {
    /// Shorthand used by join when compatibility is decided eagerly.
    pub(crate) fn incompatible(witness: Nat, detail: impl Into<String>) -> Self {
        Error::Eval(EvalError::Compatibility {
            witness,
            detail: detail.into(),
        })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
