//! The untyped tensor `f ⋆ g = ◁ (f ⊎ g) ▷` over the Cantor pairing.

use crate::error::Result;
use crate::pinj::{FiniteMap, PartialInjection, PrefixMap, PrefixRule, Representation};
use crate::Nat;

use super::cantor::{cantor_code, cantor_decode, gen_p, gen_p_dag, gen_q, gen_q_dag, SumIndex};

fn lift_rule(r: &PrefixRule, tag: u8) -> PrefixRule {
    PrefixRule::new(
        r.k_in + 1,
        (&r.r_in << 1u8) + tag,
        r.k_out + 1,
        (&r.r_out << 1u8) + tag,
    )
}

/// `f ⋆ g`: even inputs go through `f`, odd inputs through `g`.
///
/// `(f ⋆ g)(2m) = 2 f(m)` and `(f ⋆ g)(2m + 1) = 2 g(m) + 1`. Two prefix maps
/// give a prefix map, two finite maps a finite map, anything else a lazy map.
pub fn star(f: &PartialInjection, g: &PartialInjection) -> PartialInjection {
    match (f.as_prefix(), g.as_prefix()) {
        (Some(fp), Some(gp)) => {
            let rules = fp
                .rules()
                .iter()
                .map(|r| lift_rule(r, 0))
                .chain(gp.rules().iter().map(|r| lift_rule(r, 1)))
                .collect();
            return PartialInjection::from_prefix(
                PrefixMap::new(rules).expect("lifted rules live in disjoint halves"),
            );
        }
        _ if f.representation() == Representation::Finite && g.representation() == Representation::Finite => {
            let side = |m: &FiniteMap, tag: bool| {
                m.pairs()
                    .map(move |(a, b)| {
                        (cantor_code(&SumIndex { n: a.clone(), tag }), cantor_code(&SumIndex { n: b.clone(), tag }))
                    })
                    .collect::<Vec<_>>()
            };
            let pairs = side(f.as_finite().unwrap(), false)
                .into_iter()
                .chain(side(g.as_finite().unwrap(), true));
            return PartialInjection::from_finite(FiniteMap::new(pairs).expect("halves are disjoint"));
        }
        _ => {}
    }
    let (f1, g1) = (f.clone(), g.clone());
    let (f2, g2) = (f.clone(), g.clone());
    PartialInjection::lazy_fallible(
        format!("({f:?} * {g:?})"),
        move |n| through_sum(n, |s| if s.tag { g1.apply(&s.n) } else { f1.apply(&s.n) }),
        move |n| through_sum(n, |s| if s.tag { g2.unapply(&s.n) } else { f2.unapply(&s.n) }),
    )
}

fn through_sum(n: &Nat, side: impl Fn(&SumIndex) -> crate::pinj::Eval) -> crate::pinj::Eval {
    let s = cantor_decode(n);
    Ok(side(&s)?.map(|v| cantor_code(&SumIndex { n: v, tag: s.tag })))
}

/// `f ⋆ g` as the join `p∘f∘p‡ ∨ q∘g∘q‡` of dynamical-algebra words.
///
/// Diagrammatically this is `p‡fp ∨ q‡gq`. The two summands have disjoint
/// domains and ranges, so a compatibility error here is a bug.
pub fn star_via_join(f: &PartialInjection, g: &PartialInjection) -> Result<PartialInjection> {
    let left = gen_p().compose(&f.compose(&gen_p_dag()));
    let right = gen_q().compose(&g.compose(&gen_q_dag()));
    left.join(&right)
}
