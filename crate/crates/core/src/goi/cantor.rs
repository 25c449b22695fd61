use num_traits::Zero;

use crate::pinj::{PartialInjection, PrefixRule};
use crate::Nat;

/// A point of ℕ ⊎ ℕ, written as `(n, tag)` with `tag` selecting the summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SumIndex {
    pub n: Nat,
    pub tag: bool,
}

impl SumIndex {
    pub fn new(n: impl Into<Nat>, tag: bool) -> Self {
        SumIndex { n: n.into(), tag }
    }
}

/// `(n, i) ↦ 2n + i`.
pub fn cantor_code(s: &SumIndex) -> Nat {
    (&s.n << 1u8) + u8::from(s.tag)
}

pub fn cantor_decode(n: &Nat) -> SumIndex {
    SumIndex {
        n: n >> 1u8,
        tag: n.bit(0),
    }
}

fn rule(k_in: u32, r_in: u8, k_out: u32, r_out: u8) -> PrefixRule {
    PrefixRule::new(k_in, r_in, k_out, r_out)
}

fn prefix(rules: Vec<PrefixRule>) -> PartialInjection {
    PartialInjection::prefix(rules).expect("fixed generator rules are disjoint")
}

/// `p(n) = 2n`.
pub fn gen_p() -> PartialInjection {
    prefix(vec![rule(0, 0, 1, 0)])
}

/// `q(n) = 2n + 1`.
pub fn gen_q() -> PartialInjection {
    prefix(vec![rule(0, 0, 1, 1)])
}

/// `p‡(n) = n / 2` on even `n`.
pub fn gen_p_dag() -> PartialInjection {
    prefix(vec![rule(1, 0, 0, 0)])
}

/// `q‡(n) = (n - 1) / 2` on odd `n`.
pub fn gen_q_dag() -> PartialInjection {
    prefix(vec![rule(1, 1, 0, 0)])
}

/// Associator for `⋆`: `2n ↦ 4n`, `4n+1 ↦ 4n+2`, `4n+3 ↦ 2n+1`.
pub fn tau_star() -> PartialInjection {
    prefix(vec![rule(1, 0, 2, 0), rule(2, 1, 2, 2), rule(2, 3, 1, 1)])
}

/// Symmetry for `⋆`: swaps `2n` and `2n+1`.
pub fn sigma_star() -> PartialInjection {
    prefix(vec![rule(1, 0, 1, 1), rule(1, 1, 1, 0)])
}

/// `n ↦ n + 1`. Not part of the algebra; handy for building loops for `exec`.
pub fn succ() -> PartialInjection {
    PartialInjection::lazy(
        "succ",
        |n| Some(n + 1u8),
        |n| (!n.is_zero()).then(|| n - 1u8),
    )
}
