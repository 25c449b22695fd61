use std::collections::BTreeMap;

use crate::error::{Error, Result, Side};
use crate::Nat;

/// A partial injection with finitely many pairs, stored in both directions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FiniteMap {
    forward: BTreeMap<Nat, Nat>,
    backward: BTreeMap<Nat, Nat>,
}

impl FiniteMap {
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Nat, Nat)>,
    {
        let mut map = FiniteMap::default();
        for (input, output) in pairs {
            if let Some(prev) = map.forward.get(&input) {
                return Err(Error::Injectivity {
                    side: Side::Input,
                    value: input.clone(),
                    first: (input.clone(), prev.clone()),
                    second: (input, output),
                });
            }
            if let Some(prev) = map.backward.get(&output) {
                return Err(Error::Injectivity {
                    side: Side::Output,
                    value: output.clone(),
                    first: (prev.clone(), output.clone()),
                    second: (input, output),
                });
            }
            map.forward.insert(input.clone(), output.clone());
            map.backward.insert(output, input);
        }
        Ok(map)
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Pairs in increasing input order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Nat, &Nat)> {
        self.forward.iter()
    }

    pub fn apply(&self, n: &Nat) -> Option<Nat> {
        self.forward.get(n).cloned()
    }

    pub fn unapply(&self, n: &Nat) -> Option<Nat> {
        self.backward.get(n).cloned()
    }

    pub fn inverse(&self) -> Self {
        FiniteMap {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Builds from pairs already known to be injective.
    pub(crate) fn from_injective<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Nat, Nat)>,
    {
        let mut map = FiniteMap::default();
        for (a, b) in pairs {
            map.backward.insert(b.clone(), a.clone());
            map.forward.insert(a, b);
        }
        debug_assert_eq!(map.forward.len(), map.backward.len());
        map
    }

    pub fn join(&self, other: &FiniteMap) -> Result<Self> {
        for (a, b) in other.pairs() {
            match self.forward.get(a) {
                Some(mine) if mine != b => {
                    return Err(Error::incompatible(a.clone(), format!("{a} maps to {mine} and to {b}")))
                }
                _ => {}
            }
            match self.backward.get(b) {
                Some(mine) if mine != a => {
                    return Err(Error::incompatible(a.clone(), format!("{mine} and {a} both map to {b}")))
                }
                _ => {}
            }
        }
        Ok(Self::from_injective(
            self.pairs().chain(other.pairs()).map(|(a, b)| (a.clone(), b.clone())),
        ))
    }
}
