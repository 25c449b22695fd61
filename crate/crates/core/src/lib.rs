//! Executable model of the untyped Geometry of Interaction on partial
//! injections of ℕ.
//!
//! - [`pinj`]: partial injections, their composition, generalized inverse,
//!   natural order and joins.
//! - [`goi`]: the Cantor pairing, the tensors `⋆` and `⊙`, the dynamical
//!   algebra generators, `!`, `?` and the execution formula.
//! - [`lawcheck`]: a registry of algebraic laws checked on bounded prefixes.
//! - [`expr`]: a small term language over all of the above.

pub mod error;
pub mod expr;
pub mod goi;
pub mod lawcheck;
pub mod pinj;
mod serde_nat;

pub use num_bigint::BigUint;

/// Unbounded natural number.
pub type Nat = BigUint;

pub use error::{Error, EvalError, Result};
pub use expr::{eval_expr, parse, print_expr, random_expr, Expr, ParseError};
pub use goi::{
    bang, bang_truncated, cantor_code, cantor_decode, exec, exec_eval, nu2, odot, psi, psi_inv, r_gen, star,
    star_via_join, whimper, whimper_truncated, ExecOutcome, ProdIndex, SelfSimilarStructure, SumIndex,
};
pub use lawcheck::{random_finite, registry, run_law, LawReport, LawSpec};
pub use pinj::{CheckOutcome, PartialInjection, PrefixRule, Representation};
