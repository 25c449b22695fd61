//! A small term language over the algebra.
//!
//! ```text
//! expr    := join
//! join    := comp ('+' comp)*
//! comp    := tensor ('.' tensor)*
//! tensor  := unary (('*' | '&') unary)*
//! unary   := '!' unary | '?' unary | postfix
//! postfix := atom ('~' | '^' NAT)*
//! atom    := NAME | 'r' '(' NAT ')' | 'ex' '(' expr ')'
//!          | '{' NAT '->' NAT (',' NAT '->' NAT)* '}' | '(' expr ')'
//! ```
//!
//! `.` is functional composition (`f . g` is f after g), `*` is `⋆`, `&` is
//! `⊙`, `+` is join, `~` the generalized inverse, `^k` a power and `ex` the
//! execution formula. Binary operators associate to the left.

mod ast;
mod eval;
mod parser;
mod printer;
mod random;

pub use ast::Expr;
pub use eval::{builtin, eval_expr, eval_in, Env, BUILTINS};
pub use parser::{parse, ParseError, MAX_DEPTH, MAX_NESTING};
pub use printer::print_expr;
pub use random::random_expr;
