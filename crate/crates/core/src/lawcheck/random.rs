use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pinj::{CheckOutcome, FiniteMap, PartialInjection};
use crate::Nat;

/// A uniformly random partial injection with exactly `size` pairs, inputs and
/// outputs below `value_bound`. Deterministic per seed.
pub fn random_finite(seed: u64, size: u64, value_bound: u64) -> Result<PartialInjection> {
    if size > value_bound {
        return Err(Error::Argument(format!("cannot place {size} pairs below {value_bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (vb, n) = (value_bound as usize, size as usize);
    let inputs = sample(&mut rng, vb, n);
    let outputs = sample(&mut rng, vb, n);
    let pairs = inputs
        .iter()
        .zip(outputs.iter())
        .map(|(a, b)| (Nat::from(a), Nat::from(b)));
    Ok(PartialInjection::from_finite(FiniteMap::new(pairs)?))
}

/// Every partial injection of `{0, …, carrier-1}`.
pub fn all_partial_injections(carrier: u64) -> Vec<FiniteMap> {
    fn go(carrier: u64, input: u64, used: &mut Vec<bool>, pairs: &mut Vec<(u64, u64)>, out: &mut Vec<FiniteMap>) {
        if input == carrier {
            let map = FiniteMap::new(pairs.iter().map(|&(a, b)| (Nat::from(a), Nat::from(b))));
            out.push(map.expect("outputs tracked as used"));
            return;
        }
        go(carrier, input + 1, used, pairs, out);
        for b in 0..carrier {
            if !used[b as usize] {
                used[b as usize] = true;
                pairs.push((input, b));
                go(carrier, input + 1, used, pairs, out);
                pairs.pop();
                used[b as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(carrier, 0, &mut vec![false; carrier as usize], &mut Vec::new(), &mut out);
    out
}

fn finite(m: &PartialInjection) -> &FiniteMap {
    m.as_finite().expect("finite compositions stay finite")
}

/// Compares the two readings of the natural order on random pairs of maps
/// over a small carrier: "f is a restriction of g" against "f = g ∘ e for
/// some idempotent e", the latter decided by enumerating every idempotent.
///
/// Half of the pairs are built so that `f` is a restriction of `g`. The
/// witness of a failure is the index of the offending pair.
pub fn order_equivalence(pairs: u64, seed: u64, carrier: u64) -> CheckOutcome {
    let idempotents: Vec<PartialInjection> = all_partial_injections(carrier)
        .into_iter()
        .map(PartialInjection::from_finite)
        .filter(|e| finite(&e.compose(e)) == finite(e))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..pairs {
        let g = random_finite(rng.gen(), rng.gen_range(0..=carrier), carrier).expect("size within carrier");
        let f = if rng.gen_bool(0.5) {
            let kept = finite(&g)
                .pairs()
                .filter(|_| rng.gen_bool(0.5))
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect::<Vec<_>>();
            PartialInjection::finite(kept).expect("restriction of an injection")
        } else {
            random_finite(rng.gen(), rng.gen_range(0..=carrier), carrier).expect("size within carrier")
        };
        let relational = f.leq(&g, carrier).expect("finite maps evaluate").holds();
        let via_idempotent = idempotents.iter().any(|e| finite(&g.compose(e)) == finite(&f));
        if relational != via_idempotent {
            return CheckOutcome::Fails {
                witness: Nat::from(i),
                lhs: Some(Nat::from(u8::from(relational))),
                rhs: Some(Nat::from(u8::from(via_idempotent))),
            };
        }
    }
    CheckOutcome::HoldsExactly
}
