use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::EvalError;
use crate::Nat;

pub type Eval = Result<Option<Nat>, EvalError>;

/// A direction of a lazily evaluated map.
pub type EvalFn = Arc<dyn Fn(&Nat) -> Eval + Send + Sync>;

type Cache = Arc<Mutex<HashMap<Nat, Eval>>>;

/// A map given by a pair of procedures, one per direction.
///
/// Injectivity is the caller's promise; it is spot-checked by tests, not
/// enforced.
#[derive(Clone)]
pub struct LazyMap {
    label: Arc<str>,
    forward: EvalFn,
    backward: EvalFn,
    memo: Option<(Cache, Cache)>,
}

fn cached(cache: &Cache, n: &Nat, compute: &EvalFn) -> Eval {
    if let Some(hit) = cache.lock().expect("memo poisoned").get(n) {
        return hit.clone();
    }
    // Computed outside the lock: evaluation may recurse into other memoized maps.
    let value = compute(n);
    cache.lock().expect("memo poisoned").insert(n.clone(), value.clone());
    value
}

impl LazyMap {
    pub fn new(label: impl Into<Arc<str>>, forward: EvalFn, backward: EvalFn) -> Self {
        LazyMap {
            label: label.into(),
            forward,
            backward,
            memo: None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn memoized(mut self) -> Self {
        self.memo = Some(Default::default());
        self
    }

    pub fn apply(&self, n: &Nat) -> Eval {
        match &self.memo {
            Some((fwd, _)) => cached(fwd, n, &self.forward),
            None => (self.forward)(n),
        }
    }

    pub fn unapply(&self, n: &Nat) -> Eval {
        match &self.memo {
            Some((_, bwd)) => cached(bwd, n, &self.backward),
            None => (self.backward)(n),
        }
    }

    pub fn inverse(&self) -> Self {
        LazyMap {
            label: format!("({})~", self.label).into(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            memo: self.memo.as_ref().map(|(f, b)| (b.clone(), f.clone())),
        }
    }
}

impl fmt::Debug for LazyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyMap")
            .field("label", &self.label)
            .field("memoized", &self.memo.is_some())
            .finish()
    }
}
