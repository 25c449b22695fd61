use proptest::prelude::*;

use super::*;
use crate::goi::{gen_p, gen_p_dag, gen_q, gen_q_dag, sigma_star, succ, tau_star};
use crate::lawcheck::random_finite;

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn at(f: &PartialInjection, v: u64) -> Option<Nat> {
    f.apply(&n(v)).unwrap()
}

fn fails(witness: u64, lhs: Option<u64>, rhs: Option<u64>) -> CheckOutcome {
    CheckOutcome::Fails {
        witness: n(witness),
        lhs: lhs.map(n),
        rhs: rhs.map(n),
    }
}

/// A lazy copy of a symbolic map.
fn lazy_copy(f: &PartialInjection) -> PartialInjection {
    let (a, b) = (f.clone(), f.clone());
    PartialInjection::lazy_fallible("copy", move |x| a.apply(x), move |x| b.unapply(x))
}

#[test]
fn apply_and_unapply_examples() {
    let id = PartialInjection::identity();
    assert_eq!(at(&id, 42), Some(n(42)));
    assert_eq!(at(&gen_p(), 3), Some(n(6)));
    assert_eq!(at(&gen_p_dag(), 7), None);
    assert_eq!(gen_p().unapply(&n(6)).unwrap(), Some(n(3)));
    assert_eq!(gen_p().unapply(&n(7)).unwrap(), None);
    assert_eq!(PartialInjection::zero().unapply(&n(0)).unwrap(), None);
    assert_eq!(at(&PartialInjection::zero(), 7), None);
}

#[test]
fn compose_examples() {
    let id = PartialInjection::identity();
    assert_eq!(gen_p_dag().compose(&gen_p()).as_prefix(), id.as_prefix());
    assert!(gen_p_dag().compose(&gen_q()).is_zero());
    assert_eq!(at(&gen_q().compose(&gen_p()), 3), Some(n(13)));
    assert!(PartialInjection::zero().compose(&gen_p()).is_zero());
}

#[test]
fn inverse_examples() {
    let id = PartialInjection::identity();
    assert_eq!(id.inverse().as_prefix(), id.as_prefix());
    assert_eq!(gen_p().inverse().as_prefix().unwrap().rules(), &[PrefixRule::new(1, 0u8, 0, 0u8)]);
    assert!(gen_q().inverse().inverse().equal_on(&gen_q(), 1000).unwrap().holds());
}

#[test]
fn constructor_errors() {
    assert!(PartialInjection::finite([(0u8, 3u8), (1, 5)]).is_ok());
    assert!(matches!(
        PartialInjection::finite([(0u8, 3u8), (1, 3)]),
        Err(Error::Injectivity { side: crate::error::Side::Output, .. })
    ));
    assert!(matches!(
        PartialInjection::prefix(vec![PrefixRule::new(1, 0u8, 1, 0u8), PrefixRule::new(1, 0u8, 1, 1u8)]),
        Err(Error::Overlap { .. })
    ));
}

#[test]
fn join_examples() {
    let evens = gen_p_dag().domain_id();
    let odds = gen_q_dag().domain_id();
    let whole = evens.join(&odds).unwrap();
    assert_eq!(whole.as_prefix(), PartialInjection::identity().as_prefix());

    let f = tau_star();
    assert_eq!(f.join(&PartialInjection::zero()).unwrap().as_prefix(), f.as_prefix());

    match gen_p().join(&gen_q()) {
        Err(Error::Eval(EvalError::Compatibility { witness, .. })) => assert_eq!(witness, n(0)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn join_detects_shared_outputs() {
    // Disjoint domains, but 0 and 1 both land on 0.
    let a = PartialInjection::finite([(0u8, 0u8)]).unwrap();
    let b = PartialInjection::finite([(1u8, 0u8)]).unwrap();
    assert!(matches!(a.join(&b), Err(Error::Eval(EvalError::Compatibility { .. }))));
    // Same for prefix maps: evens -> evens and odds -> evens.
    let half = PartialInjection::prefix(vec![PrefixRule::new(1, 1u8, 1, 0u8)]).unwrap();
    assert!(matches!(gen_p_dag().domain_id().join(&half), Err(Error::Eval(_))));
}

#[test]
fn mixed_and_lazy_joins() {
    let lit = PartialInjection::finite([(1u8, 3u8)]).unwrap();
    let evens = gen_p_dag().domain_id();
    let j = lit.join(&evens).unwrap();
    assert_eq!(j.representation(), Representation::Lazy);
    assert_eq!(at(&j, 1), Some(n(3)));
    assert_eq!(at(&j, 4), Some(n(4)));
    assert_eq!(at(&j, 3), None);
    assert!(PartialInjection::finite([(2u8, 3u8)]).unwrap().join(&evens).is_err());

    // Lazy operands: construction succeeds, evaluation reports the clash.
    let lazy = lazy_copy(&gen_p()).join(&gen_q()).unwrap();
    assert!(matches!(lazy.apply(&n(5)), Err(EvalError::Compatibility { .. })));
    let fine = lazy_copy(&evens).join(&gen_q_dag().domain_id()).unwrap();
    assert!(fine.equal_on(&PartialInjection::identity(), 512).unwrap().holds());
    let clash = lazy_copy(&PartialInjection::finite([(0u8, 0u8)]).unwrap())
        .join(&PartialInjection::finite([(1u8, 0u8)]).unwrap())
        .unwrap();
    assert!(matches!(clash.apply(&n(1)), Err(EvalError::Compatibility { .. })));
    assert!(matches!(clash.unapply(&n(0)), Err(EvalError::Compatibility { .. })));
}

#[test]
fn leq_examples() {
    let id = PartialInjection::identity();
    assert_eq!(PartialInjection::zero().leq(&gen_p(), 100).unwrap(), CheckOutcome::HoldsExactly);
    assert_eq!(gen_p_dag().domain_id().leq(&id, 100).unwrap(), CheckOutcome::HoldsExactly);
    assert_eq!(id.leq(&gen_p(), 100).unwrap(), fails(1, Some(1), Some(2)));
    assert_eq!(
        lazy_copy(&id).leq(&gen_p(), 100).unwrap(),
        fails(1, Some(1), Some(2))
    );
    assert_eq!(
        lazy_copy(&gen_p_dag().domain_id()).leq(&id, 100).unwrap(),
        CheckOutcome::HoldsUpTo { bound: 100 }
    );
    let lit = PartialInjection::finite([(2u8, 4u8), (5, 10)]).unwrap();
    assert_eq!(lit.leq(&gen_p(), 1).unwrap(), CheckOutcome::HoldsExactly);
    assert_eq!(gen_p().leq(&lit, 1).unwrap(), fails(0, Some(0), None));
}

#[test]
fn prefix_leq_finds_smallest_witness() {
    // identity restricted to n ≡ 3 mod 4 against the identity on odds: holds.
    let small = PartialInjection::prefix(vec![PrefixRule::new(2, 3u8, 2, 3u8)]).unwrap();
    let odds = gen_q_dag().domain_id();
    assert_eq!(small.leq(&odds, 1).unwrap(), CheckOutcome::HoldsExactly);
    // the other way: 1 is odd but not 3 mod 4.
    assert_eq!(odds.leq(&small, 1).unwrap(), fails(1, Some(1), None));
    assert_eq!(tau_star().leq(&sigma_star(), 1).unwrap(), fails(0, Some(0), Some(1)));
}

#[test]
fn equal_on_examples() {
    assert_eq!(gen_p().equal_on(&gen_p(), 1000).unwrap(), CheckOutcome::HoldsUpTo { bound: 1000 });
    assert_eq!(gen_p().equal_on(&gen_q(), 10).unwrap(), fails(0, Some(0), Some(1)));
    let pq = gen_p_dag().compose(&gen_q());
    assert!(pq.equal_on(&PartialInjection::zero(), 1000).unwrap().holds());
}

#[test]
fn domain_and_range_examples() {
    let id = PartialInjection::identity();
    assert_eq!(id.domain_id().as_prefix(), id.as_prefix());
    let evens = gen_p_dag().domain_id();
    for v in 0..100 {
        assert_eq!(at(&evens, v), (v % 2 == 0).then(|| n(v)));
    }
    assert!(PartialInjection::zero().range_id().is_zero());
}

#[test]
fn power_examples() {
    assert_eq!(at(&gen_q().power(2), 0), Some(n(3)));
    assert_eq!(at(&gen_p().power(3), 1), Some(n(8)));
    assert_eq!(tau_star().power(0).as_prefix(), PartialInjection::identity().as_prefix());
    let lazy = succ().power(5);
    assert_eq!(at(&lazy, 10), Some(n(15)));
    assert_eq!(lazy.unapply(&n(3)).unwrap(), None);
    assert_eq!(at(&succ().power(0), 9), Some(n(9)));
    let q100 = gen_q().power(100);
    assert_eq!(at(&q100, 0), Some((Nat::from(1u8) << 100u32) - 1u8));
}

#[test]
fn finite_composition_stays_finite() {
    let f = PartialInjection::finite([(0u8, 3u8), (1, 5), (2, 9)]).unwrap();
    assert_eq!(gen_p().compose(&f).representation(), Representation::Finite);
    assert_eq!(f.compose(&gen_p()).representation(), Representation::Finite);
    assert_eq!(at(&f.compose(&gen_p_dag()), 2), Some(n(5)));
    assert_eq!(at(&gen_q().compose(&f), 2), Some(n(19)));
    assert_eq!(f.compose(&succ()).representation(), Representation::Lazy);
}

#[test]
fn memoized_lazy_maps_agree() {
    let f = lazy_copy(&tau_star()).memoized();
    for _ in 0..2 {
        assert!(f.equal_on(&tau_star(), 256).unwrap().holds());
    }
    let shared = std::sync::Arc::new(f);
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let f = shared.clone();
            std::thread::spawn(move || f.equal_on(&tau_star(), 512).unwrap().holds())
        })
        .collect();
    assert!(handles.into_iter().all(|h| h.join().unwrap()));
}

fn arb_finite() -> impl Strategy<Value = PartialInjection> {
    (any::<u64>(), 0u64..12).prop_map(|(seed, size)| random_finite(seed, size, 24).unwrap())
}

fn arb_rule() -> impl Strategy<Value = PrefixRule> {
    (0u32..4, any::<u32>(), 0u32..4, any::<u32>()).prop_map(|(ki, ri, ko, ro)| {
        PrefixRule::new(ki, ri % (1 << ki), ko, ro % (1 << ko))
    })
}

/// Random prefix maps: a few rules, dropping any that would overlap.
fn arb_prefix() -> impl Strategy<Value = PartialInjection> {
    proptest::collection::vec(arb_rule(), 0..5).prop_map(|rules| {
        let mut kept: Vec<PrefixRule> = Vec::new();
        for r in rules {
            if kept.iter().all(|k| k.input().is_disjoint(&r.input()) && k.output().is_disjoint(&r.output())) {
                kept.push(r);
            }
        }
        PartialInjection::prefix(kept).unwrap()
    })
}

fn arb_map() -> impl Strategy<Value = PartialInjection> {
    prop_oneof![
        arb_finite(),
        arb_prefix(),
        Just(gen_p()),
        Just(gen_q_dag()),
        Just(tau_star()),
        arb_prefix().prop_map(|f| lazy_copy(&f)),
    ]
}

const N: u64 = 512;

proptest! {
    #[test]
    fn injective_on_prefix(f in arb_map()) {
        let mut seen = std::collections::HashMap::new();
        for v in 0..N {
            if let Some(out) = at(&f, v) {
                prop_assert_eq!(f.unapply(&out).unwrap(), Some(n(v)));
                prop_assert!(seen.insert(out, v).is_none());
            }
        }
    }

    #[test]
    fn inverse_category_axioms(f in arb_map()) {
        let fd = f.inverse();
        prop_assert!(f.compose(&fd.compose(&f)).equal_on(&f, N).unwrap().holds());
        prop_assert!(fd.compose(&f.compose(&fd)).equal_on(&fd, N).unwrap().holds());
    }

    #[test]
    fn dagger_contravariance(f in arb_map(), g in arb_map()) {
        let lhs = f.compose(&g).inverse();
        let rhs = g.inverse().compose(&f.inverse());
        prop_assert!(lhs.equal_on(&rhs, N).unwrap().holds());
    }

    #[test]
    fn order_has_idempotent_witness(f in arb_finite(), g in arb_finite()) {
        let restricted = g.compose(&f.domain_id());
        if f.leq(&g, 1).unwrap().holds() {
            prop_assert_eq!(restricted.as_finite(), f.as_finite());
        }
        // g ∘ e is always below g.
        prop_assert_eq!(restricted.leq(&g, 1).unwrap(), CheckOutcome::HoldsExactly);
    }

    #[test]
    fn join_laws(g in arb_finite(), keep_a in any::<u32>(), keep_b in any::<u32>(), keep_c in any::<u32>()) {
        // Restrictions of one map are pairwise compatible.
        let pairs: Vec<(Nat, Nat)> = g.as_finite().unwrap().pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
        let pick = |mask: u32| PartialInjection::finite(
            pairs.iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, p)| p.clone())
        ).unwrap();
        let (a, b, c) = (pick(keep_a), pick(keep_b), pick(keep_c));
        let ab = a.join(&b).unwrap();
        let aa = a.join(&a).unwrap();
        let ba = b.join(&a).unwrap();
        let left = ab.join(&c).unwrap();
        let right = a.join(&b.join(&c).unwrap()).unwrap();
        prop_assert_eq!(aa.as_finite(), a.as_finite());
        prop_assert_eq!(ab.as_finite(), ba.as_finite());
        prop_assert_eq!(left.as_finite(), right.as_finite());
        prop_assert_eq!(a.leq(&ab, 1).unwrap(), CheckOutcome::HoldsExactly);
    }

    #[test]
    fn prefix_joins_are_least_upper_bounds(f in arb_prefix(), g in arb_prefix()) {
        match f.join(&g) {
            Ok(j) => {
                prop_assert_eq!(j.representation(), Representation::Prefix);
                prop_assert_eq!(f.leq(&j, 1).unwrap(), CheckOutcome::HoldsExactly);
                prop_assert_eq!(g.leq(&j, 1).unwrap(), CheckOutcome::HoldsExactly);
                for v in 0..N {
                    let expected = at(&f, v).or_else(|| at(&g, v));
                    prop_assert_eq!(at(&j, v), expected);
                }
            }
            Err(Error::Eval(EvalError::Compatibility { witness, .. })) => {
                // The witness is an input where the union stops being injective.
                let (a, b) = (f.apply(&witness).unwrap(), g.apply(&witness).unwrap());
                let clash_in = matches!((&a, &b), (Some(x), Some(y)) if x != y);
                let clash_out = a.as_ref().is_some_and(|x| g.unapply(x).unwrap().is_some_and(|w| w != witness))
                    || b.as_ref().is_some_and(|y| f.unapply(y).unwrap().is_some_and(|w| w != witness));
                prop_assert!(clash_in || clash_out);
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn prefix_leq_agrees_with_pointwise(f in arb_prefix(), g in arb_prefix()) {
        let exact = f.leq(&g, 1).unwrap();
        let bounded = lazy_copy(&f).leq(&g, 1 << 10).unwrap();
        match (&exact, &bounded) {
            (CheckOutcome::HoldsExactly, CheckOutcome::HoldsUpTo { .. }) => {}
            (CheckOutcome::Fails { witness: a, .. }, CheckOutcome::Fails { witness: b, .. }) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "{exact:?} vs {bounded:?}"),
        }
    }
}

#[test]
fn symbolic_composition_matches_pointwise_on_wide_prefix() {
    let words = [
        tau_star(),
        sigma_star(),
        gen_p(),
        gen_q_dag(),
        tau_star().compose(&sigma_star()),
        crate::goi::star(&tau_star(), &gen_q()),
    ];
    for f in &words {
        for g in &words {
            let symbolic = f.compose(g);
            assert_eq!(symbolic.representation(), Representation::Prefix);
            let pointwise = f.compose(&lazy_copy(g));
            assert_eq!(pointwise.representation(), Representation::Lazy);
            assert!(symbolic.equal_on(&pointwise, 1 << 16).unwrap().holds());
        }
    }
}
