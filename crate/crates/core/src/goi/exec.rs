//! The execution formula as a token loop.
//!
//! Ports are split by parity: even numbers are the visible port, odd numbers
//! the feedback port. A token enters at `2n`, is pushed through `f` until it
//! lands on an even number `2m`, and exits as `m`. Partial sums of the trace
//! join `f₁₁ ∨ ⋁_k f₁₂ f₂₂^k f₂₁` correspond to runs with a bounded number of
//! steps.

use std::fmt;

use crate::error::EvalError;
use crate::pinj::PartialInjection;
use crate::Nat;

pub const DEFAULT_EXEC_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExecOutcome {
    Value(Nat),
    Undefined,
    Diverged,
}

impl fmt::Display for ExecOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExecOutcome::Value(v) => write!(f, "Value({v})"),
            ExecOutcome::Undefined => f.write_str("Undefined"),
            ExecOutcome::Diverged => f.write_str("Diverged"),
        }
    }
}

/// A finished run: every token position visited, starting with `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecRun {
    pub trace: Vec<Nat>,
    pub outcome: ExecOutcome,
}

fn run(f: &PartialInjection, n: &Nat, max_steps: u64, mut visit: impl FnMut(&Nat)) -> Result<ExecOutcome, EvalError> {
    let mut token: Nat = n << 1u8;
    visit(&token);
    for _ in 0..max_steps {
        match f.apply(&token)? {
            None => return Ok(ExecOutcome::Undefined),
            Some(next) => {
                visit(&next);
                if !next.bit(0) {
                    return Ok(ExecOutcome::Value(next >> 1u8));
                }
                token = next;
            }
        }
    }
    Ok(ExecOutcome::Diverged)
}

/// Runs the token loop for at most `max_steps` applications of `f`.
pub fn exec_eval(f: &PartialInjection, n: &Nat, max_steps: u64) -> Result<ExecOutcome, EvalError> {
    run(f, n, max_steps, |_| {})
}

pub fn exec_trace(f: &PartialInjection, n: &Nat, max_steps: u64) -> Result<ExecRun, EvalError> {
    let mut trace = Vec::new();
    let outcome = run(f, n, max_steps, |u| trace.push(u.clone()))?;
    Ok(ExecRun { trace, outcome })
}

fn as_map(f: &PartialInjection, n: &Nat) -> Result<Option<Nat>, EvalError> {
    match exec_eval(f, n, DEFAULT_EXEC_BUDGET)? {
        ExecOutcome::Value(v) => Ok(Some(v)),
        ExecOutcome::Undefined => Ok(None),
        ExecOutcome::Diverged => Err(EvalError::Divergence {
            input: n.clone(),
            budget: DEFAULT_EXEC_BUDGET,
        }),
    }
}

/// `exec(f)` as a map, with [`DEFAULT_EXEC_BUDGET`] steps per point.
///
/// The inverse runs the loop on `f‡`: a token path read backwards is a path
/// of `f‡`, and its intermediate positions are all odd.
pub fn exec(f: &PartialInjection) -> PartialInjection {
    let (fwd, bwd) = (f.clone(), f.inverse());
    PartialInjection::lazy_fallible(format!("ex({f:?})"), move |n| as_map(&fwd, n), move |n| as_map(&bwd, n))
        .memoized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goi::{gen_p, gen_q, gen_q_dag, sigma_star, succ};

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn odd_chain() -> PartialInjection {
        let start = PartialInjection::finite([(0u8, 1u8)]).unwrap();
        let chain = PartialInjection::lazy(
            "odd+2",
            |m| m.bit(0).then(|| m + 2u8),
            |m| (m.bit(0) && *m >= Nat::from(3u8)).then(|| m - 2u8),
        );
        start.join(&chain).unwrap()
    }

    #[test]
    fn swap_executes_to_identity() {
        let e = exec(&sigma_star());
        assert!(e.equal_on(&PartialInjection::identity(), 1 << 10).unwrap().holds());
        let r = exec_trace(&sigma_star(), &n(5), 10).unwrap();
        assert_eq!(r.trace, vec![n(10), n(11), n(10)]);
        assert_eq!(r.outcome, ExecOutcome::Value(n(5)));
    }

    #[test]
    fn zero_executes_to_zero() {
        let e = exec(&PartialInjection::zero());
        assert!(e.equal_on(&PartialInjection::zero(), 256).unwrap().holds());
    }

    #[test]
    fn successor_executes_to_successor() {
        assert!(exec(&succ()).equal_on(&succ(), 1 << 10).unwrap().holds());
        assert_eq!(exec(&succ()).unapply(&n(0)).unwrap(), None);
        assert_eq!(exec(&succ()).unapply(&n(9)).unwrap(), Some(n(8)));
    }

    #[test]
    fn odd_chain_diverges() {
        assert_eq!(exec_eval(&odd_chain(), &n(0), 1000).unwrap(), ExecOutcome::Diverged);
        assert!(matches!(
            exec(&odd_chain()).apply(&n(0)),
            Err(EvalError::Divergence { budget: DEFAULT_EXEC_BUDGET, .. })
        ));
    }

    #[test]
    fn direct_and_looping_generators() {
        // p sends the visible port straight back out; q keeps the token on odd
        // numbers forever.
        assert!(exec(&gen_p()).equal_on(&gen_p(), 512).unwrap().holds());
        let r = exec_trace(&gen_q(), &n(3), 5).unwrap();
        assert_eq!(r.outcome, ExecOutcome::Diverged);
        assert_eq!(r.trace.len(), 6);
        assert_eq!(exec_eval(&gen_q_dag(), &n(4), 5).unwrap(), ExecOutcome::Undefined);
    }
}
