//! The exponential bijection ψ : ℕ × ℕ → ℕ and everything built on it:
//! the tensor `⊙`, its associator and symmetry, `!`, `?` and the `r_j` family.
//!
//! `ψ(x, y) = 2^(y+1) x + 2^y − 1`, i.e. `q^y(p(x))`. The first coordinate is
//! the payload and the second the copy index; the copy index of `n` is
//! `ν₂(n + 1)`, so every natural has one (no residue).

use num_traits::ToPrimitive;

use crate::error::{Error, EvalError, Result};
use crate::pinj::{Eval, PartialInjection};
use crate::Nat;

use super::cantor::{gen_p, gen_q};

/// Largest copy index that will be materialized. `ψ(0, y)` has `y` bits, so
/// anything past this would not fit in memory anyway.
pub const MAX_COPY_INDEX: u64 = 1 << 24;

/// A point `(x, y)` of ℕ × ℕ; `x` is the payload, `y` the copy index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProdIndex {
    pub x: Nat,
    pub y: u64,
}

impl ProdIndex {
    pub fn new(x: impl Into<Nat>, y: u64) -> Self {
        ProdIndex { x: x.into(), y }
    }
}

pub fn psi(i: &ProdIndex) -> Nat {
    (((&i.x << 1u8) + 1u8) << i.y) - 1u8
}

pub fn psi_inv(n: &Nat) -> ProdIndex {
    let m = n + 1u8;
    let y = m.trailing_zeros().expect("n + 1 is positive");
    ProdIndex { x: (m >> y) >> 1u8, y }
}

/// 2-adic valuation: the largest `k` with `2^k | n`.
pub fn nu2(n: &Nat) -> Result<u64> {
    n.trailing_zeros()
        .ok_or_else(|| Error::Argument("2-adic valuation of 0 is undefined".into()))
}

/// A natural used as a copy index, if small enough to materialize.
pub fn copy_index(n: &Nat) -> Result<u64, EvalError> {
    n.to_u64()
        .filter(|&y| y <= MAX_COPY_INDEX)
        .ok_or_else(|| EvalError::CopyIndexTooLarge { index: n.clone() })
}

fn psi_eval(x: Option<Nat>, y: Option<Nat>) -> Eval {
    match (x, y) {
        (Some(x), Some(y)) => Ok(Some(psi(&ProdIndex { x, y: copy_index(&y)? }))),
        _ => Ok(None),
    }
}

/// `f ⊙ g = ψ (f × g) ψ⁻¹`.
pub fn odot(f: &PartialInjection, g: &PartialInjection) -> PartialInjection {
    let (f1, g1, f2, g2) = (f.clone(), g.clone(), f.clone(), g.clone());
    PartialInjection::lazy_fallible(
        format!("({f:?} & {g:?})"),
        move |n| {
            let i = psi_inv(n);
            let Some(x) = f1.apply(&i.x)? else { return Ok(None) };
            psi_eval(Some(x), g1.apply(&Nat::from(i.y))?)
        },
        move |n| {
            let i = psi_inv(n);
            let Some(x) = f2.unapply(&i.x)? else { return Ok(None) };
            psi_eval(Some(x), g2.unapply(&Nat::from(i.y))?)
        },
    )
}

/// Symmetry for `⊙`: `ψ(x, y) ↦ ψ(y, x)`.
pub fn sigma_odot() -> PartialInjection {
    fn swap(n: &Nat) -> Eval {
        let i = psi_inv(n);
        psi_eval(Some(Nat::from(i.y)), Some(i.x))
    }
    PartialInjection::lazy_fallible("sigma2", swap, swap)
}

/// Associator for `⊙`: `ψ(x, ψ(y, z)) ↦ ψ(ψ(x, y), z)`.
pub fn tau_odot() -> PartialInjection {
    PartialInjection::lazy_fallible(
        "tau2",
        |n| {
            let outer = psi_inv(n);
            let inner = psi_inv(&Nat::from(outer.y));
            Ok(Some(psi(&ProdIndex {
                x: psi(&ProdIndex { x: outer.x, y: inner.x.to_u64().expect("below a u64 copy index") }),
                y: inner.y,
            })))
        },
        |n| {
            let outer = psi_inv(n);
            let inner = psi_inv(&outer.x);
            let y = psi(&ProdIndex { x: Nat::from(inner.y), y: outer.y });
            psi_eval(Some(inner.x), Some(y))
        },
    )
}

/// `!(f)`: acts on the payload, `ψ(x, y) ↦ ψ(f(x), y)`.
///
/// This is the closed form of the join `⋁_k q^k ∘ p ∘ f ∘ p‡ ∘ (q‡)^k`
/// (diagrammatically `(q‡)^k p‡ f p q^k`), and the map satisfying
/// `f ⋆ !(f) = !(f)`.
pub fn bang(f: &PartialInjection) -> PartialInjection {
    let (f1, f2) = (f.clone(), f.clone());
    PartialInjection::lazy_fallible(
        format!("!({f:?})"),
        move |n| {
            let i = psi_inv(n);
            Ok(f1.apply(&i.x)?.map(|x| psi(&ProdIndex { x, y: i.y })))
        },
        move |n| {
            let i = psi_inv(n);
            Ok(f2.unapply(&i.x)?.map(|x| psi(&ProdIndex { x, y: i.y })))
        },
    )
}

/// The first `terms` summands of the join form of `!(f)`. Agrees with
/// [`bang`] on every `n` whose copy index `ν₂(n + 1)` is below `terms`.
pub fn bang_truncated(f: &PartialInjection, terms: u64) -> Result<PartialInjection> {
    if terms == 0 {
        return Err(Error::Argument("bang_truncated needs at least one term".into()));
    }
    let core = gen_p().compose(&f.compose(&gen_p().inverse()));
    let q = gen_q();
    let mut acc = PartialInjection::zero();
    let mut lift = PartialInjection::identity();
    for _ in 0..terms {
        let term = lift.compose(&core.compose(&lift.inverse()));
        acc = acc.join(&term)?;
        lift = q.compose(&lift);
    }
    Ok(acc)
}

/// `?(g)`: acts on the copy index, `ψ(x, y) ↦ ψ(x, g(y))`. Equal to
/// `σ⊙ ∘ !(g) ∘ σ⊙`.
pub fn whimper(g: &PartialInjection) -> PartialInjection {
    let (g1, g2) = (g.clone(), g.clone());
    PartialInjection::lazy_fallible(
        format!("?({g:?})"),
        move |n| {
            let i = psi_inv(n);
            psi_eval(Some(i.x), g1.apply(&Nat::from(i.y))?)
        },
        move |n| {
            let i = psi_inv(n);
            psi_eval(Some(i.x), g2.unapply(&Nat::from(i.y))?)
        },
    )
}

/// `r_j = q^j ∘ p`, so `r_j(m) = ψ(m, j)`.
pub fn r_gen(j: u64) -> PartialInjection {
    gen_q().power(j).compose(&gen_p())
}

/// Join over `n < terms` of `r_{g(n)} ∘ r_n‡`, the map `ψ(x, n) ↦ ψ(x, g(n))`.
/// Agrees with [`whimper`] on inputs whose copy index is below `terms`.
pub fn whimper_truncated(g: &PartialInjection, terms: u64) -> Result<PartialInjection> {
    if terms == 0 {
        return Err(Error::Argument("whimper_truncated needs at least one term".into()));
    }
    let mut acc = PartialInjection::zero();
    for n in 0..terms {
        if let Some(m) = g.apply(&Nat::from(n))? {
            let term = r_gen(copy_index(&m)?).compose(&r_gen(n).inverse());
            acc = acc.join(&term)?;
        }
    }
    Ok(acc)
}
