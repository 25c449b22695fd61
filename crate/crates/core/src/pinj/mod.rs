//! Partial injections of ℕ and their inverse-category structure.
//!
//! Composition is always read functionally: `f.compose(&g)` is "f after g".
//! Operations stay symbolic when both operands are finite or prefix maps and
//! fall back to lazy evaluation otherwise.

mod finite;
mod lazy;
mod prefix;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, EvalError, Result};
use crate::Nat;

pub use finite::FiniteMap;
pub use lazy::{Eval, EvalFn, LazyMap};
pub use prefix::{Class, PrefixMap, PrefixRule};

#[derive(Clone)]
enum Rep {
    Finite(Arc<FiniteMap>),
    Prefix(Arc<PrefixMap>),
    Lazy(LazyMap),
}

/// An element of End(ℕ): a partial injective self-map of the naturals.
#[derive(Clone)]
pub struct PartialInjection(Rep);

/// Which representation backs a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Finite,
    Prefix,
    Lazy,
}

/// Result of comparing two maps, exactly or on a bounded prefix of ℕ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CheckOutcome {
    HoldsExactly,
    HoldsUpTo {
        bound: u64,
    },
    Fails {
        #[serde(serialize_with = "crate::serde_nat::nat")]
        witness: Nat,
        #[serde(serialize_with = "crate::serde_nat::opt_nat")]
        lhs: Option<Nat>,
        #[serde(serialize_with = "crate::serde_nat::opt_nat")]
        rhs: Option<Nat>,
    },
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, CheckOutcome::Fails { .. })
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<Nat>| v.as_ref().map_or_else(|| "⊥".to_string(), Nat::to_string);
        match self {
            CheckOutcome::HoldsExactly => f.write_str("holds exactly"),
            CheckOutcome::HoldsUpTo { bound } => write!(f, "holds on [0, {bound})"),
            CheckOutcome::Fails { witness, lhs, rhs } => {
                write!(f, "fails at {witness}: {} vs {}", show(lhs), show(rhs))
            }
        }
    }
}

impl PartialInjection {
    pub fn identity() -> Self {
        Self::from_prefix(PrefixMap::identity())
    }

    pub fn zero() -> Self {
        Self::from_prefix(PrefixMap::empty())
    }

    pub fn finite<I, A, B>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<Nat>,
        B: Into<Nat>,
    {
        FiniteMap::new(pairs.into_iter().map(|(a, b)| (a.into(), b.into()))).map(Self::from_finite)
    }

    pub fn prefix(rules: Vec<PrefixRule>) -> Result<Self> {
        PrefixMap::new(rules).map(Self::from_prefix)
    }

    /// A lazily evaluated map from two total procedures. `backward` must invert
    /// `forward` wherever the latter is defined.
    pub fn lazy<F, B>(label: impl Into<Arc<str>>, forward: F, backward: B) -> Self
    where
        F: Fn(&Nat) -> Option<Nat> + Send + Sync + 'static,
        B: Fn(&Nat) -> Option<Nat> + Send + Sync + 'static,
    {
        Self::lazy_fallible(label, move |n| Ok(forward(n)), move |n| Ok(backward(n)))
    }

    /// Like [`PartialInjection::lazy`], for procedures that can fail on evaluation.
    pub fn lazy_fallible<F, B>(label: impl Into<Arc<str>>, forward: F, backward: B) -> Self
    where
        F: Fn(&Nat) -> Eval + Send + Sync + 'static,
        B: Fn(&Nat) -> Eval + Send + Sync + 'static,
    {
        PartialInjection(Rep::Lazy(LazyMap::new(label, Arc::new(forward), Arc::new(backward))))
    }

    pub fn from_finite(map: FiniteMap) -> Self {
        PartialInjection(Rep::Finite(Arc::new(map)))
    }

    pub fn from_prefix(map: PrefixMap) -> Self {
        PartialInjection(Rep::Prefix(Arc::new(map)))
    }

    pub fn from_lazy(map: LazyMap) -> Self {
        PartialInjection(Rep::Lazy(map))
    }

    pub fn representation(&self) -> Representation {
        match &self.0 {
            Rep::Finite(_) => Representation::Finite,
            Rep::Prefix(_) => Representation::Prefix,
            Rep::Lazy(_) => Representation::Lazy,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteMap> {
        match &self.0 {
            Rep::Finite(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_prefix(&self) -> Option<&PrefixMap> {
        match &self.0 {
            Rep::Prefix(m) => Some(m),
            _ => None,
        }
    }

    fn is_symbolic(&self) -> bool {
        !matches!(self.0, Rep::Lazy(_))
    }

    /// Syntactically empty; lazy maps are never reported as zero.
    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Rep::Finite(m) => m.is_empty(),
            Rep::Prefix(m) => m.rules().is_empty(),
            Rep::Lazy(_) => false,
        }
    }

    /// Wraps a lazy map with a per-input cache; symbolic maps are returned as is.
    pub fn memoized(self) -> Self {
        match self.0 {
            Rep::Lazy(m) => PartialInjection(Rep::Lazy(m.memoized())),
            rep => PartialInjection(rep),
        }
    }

    pub fn apply(&self, n: &Nat) -> Eval {
        match &self.0 {
            Rep::Finite(m) => Ok(m.apply(n)),
            Rep::Prefix(m) => Ok(m.apply(n)),
            Rep::Lazy(m) => m.apply(n),
        }
    }

    pub fn unapply(&self, n: &Nat) -> Eval {
        match &self.0 {
            Rep::Finite(m) => Ok(m.unapply(n)),
            Rep::Prefix(m) => Ok(m.unapply(n)),
            Rep::Lazy(m) => m.unapply(n),
        }
    }

    /// The generalized inverse f‡.
    pub fn inverse(&self) -> Self {
        match &self.0 {
            Rep::Finite(m) => Self::from_finite(m.inverse()),
            Rep::Prefix(m) => Self::from_prefix(m.inverse()),
            Rep::Lazy(m) => PartialInjection(Rep::Lazy(m.inverse())),
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &PartialInjection) -> Self {
        match (&self.0, &first.0) {
            (Rep::Prefix(f), Rep::Prefix(g)) => Self::from_prefix(f.after(g)),
            (Rep::Finite(f), g) if first.is_symbolic() => {
                let pairs = f.pairs().filter_map(|(mid, out)| {
                    let input = match g {
                        Rep::Finite(g) => g.unapply(mid),
                        Rep::Prefix(g) => g.unapply(mid),
                        Rep::Lazy(_) => unreachable!(),
                    };
                    input.map(|i| (i, out.clone()))
                });
                Self::from_finite(FiniteMap::from_injective(pairs.collect::<Vec<_>>()))
            }
            (f, Rep::Finite(g)) if self.is_symbolic() => {
                let pairs = g.pairs().filter_map(|(input, mid)| {
                    let out = match f {
                        Rep::Finite(f) => f.apply(mid),
                        Rep::Prefix(f) => f.apply(mid),
                        Rep::Lazy(_) => unreachable!(),
                    };
                    out.map(|o| (input.clone(), o))
                });
                Self::from_finite(FiniteMap::from_injective(pairs.collect::<Vec<_>>()))
            }
            _ => {
                let (f, g) = (self.clone(), first.clone());
                let (fi, gi) = (self.clone(), first.clone());
                Self::lazy_fallible(
                    format!("{self:?} . {first:?}"),
                    move |n| match g.apply(n)? {
                        Some(m) => f.apply(&m),
                        None => Ok(None),
                    },
                    move |n| match fi.unapply(n)? {
                        Some(m) => gi.unapply(&m),
                        None => Ok(None),
                    },
                )
            }
        }
    }

    /// k-fold self-composition; `power(0)` is the identity.
    pub fn power(&self, k: u64) -> Self {
        if self.is_symbolic() {
            // Square-and-multiply keeps rule counts from being rebuilt k times.
            let mut acc = Self::identity();
            let mut base = self.clone();
            let mut e = k;
            while e > 0 {
                if e & 1 == 1 {
                    acc = base.compose(&acc);
                }
                e >>= 1;
                if e > 0 {
                    base = base.compose(&base);
                }
            }
            return acc;
        }
        let (f, fi) = (self.clone(), self.clone());
        Self::lazy_fallible(
            format!("({self:?})^{k}"),
            move |n| iterate(n, k, |m| f.apply(m)),
            move |n| iterate(n, k, |m| fi.unapply(m)),
        )
    }

    /// Partial identity on the domain: `f‡ ∘ f`.
    pub fn domain_id(&self) -> Self {
        self.inverse().compose(self)
    }

    /// Partial identity on the range: `f ∘ f‡`.
    pub fn range_id(&self) -> Self {
        self.compose(&self.inverse())
    }

    /// Least upper bound in the natural partial order.
    ///
    /// Compatibility is decided eagerly unless an operand is lazy; lazy joins
    /// report clashes when evaluated at a clashing point.
    pub fn join(&self, other: &PartialInjection) -> Result<Self> {
        match (&self.0, &other.0) {
            (Rep::Finite(f), Rep::Finite(g)) => f.join(g).map(Self::from_finite),
            (Rep::Prefix(f), Rep::Prefix(g)) => f.join(g).map(Self::from_prefix),
            (Rep::Finite(f), Rep::Prefix(_)) | (Rep::Prefix(_), Rep::Finite(f)) => {
                let g = if matches!(self.0, Rep::Finite(_)) { other } else { self };
                for (a, b) in f.pairs() {
                    if let Some(v) = g.apply(a)?.filter(|v| v != b) {
                        return Err(Error::incompatible(a.clone(), format!("{a} maps to {b} and to {v}")));
                    }
                    if let Some(u) = g.unapply(b)?.filter(|u| u != a) {
                        return Err(Error::incompatible(a.clone(), format!("{a} and {u} both map to {b}")));
                    }
                }
                Ok(self.lazy_join(other))
            }
            _ => Ok(self.lazy_join(other)),
        }
    }

    fn lazy_join(&self, other: &PartialInjection) -> Self {
        let (f, g) = (self.clone(), other.clone());
        let (fi, gi) = (self.inverse(), other.inverse());
        Self::lazy_fallible(
            format!("{self:?} + {other:?}"),
            move |n| union_at(&f, &g, n),
            move |n| union_at(&fi, &gi, n),
        )
    }

    /// Whether `self` is a restriction of `other`.
    ///
    /// Exact when `self` is finite, or both are prefix maps, or `self` is
    /// syntactically zero. Otherwise every input below `bound` is checked.
    pub fn leq(&self, other: &PartialInjection, bound: u64) -> Result<CheckOutcome, EvalError> {
        if self.is_zero() {
            return Ok(CheckOutcome::HoldsExactly);
        }
        match (&self.0, &other.0) {
            (Rep::Finite(f), _) => {
                for (a, b) in f.pairs() {
                    let theirs = other.apply(a)?;
                    if theirs.as_ref() != Some(b) {
                        return Ok(CheckOutcome::Fails {
                            witness: a.clone(),
                            lhs: Some(b.clone()),
                            rhs: theirs,
                        });
                    }
                }
                Ok(CheckOutcome::HoldsExactly)
            }
            (Rep::Prefix(f), Rep::Prefix(g)) => Ok(match f.first_not_below(g) {
                None => CheckOutcome::HoldsExactly,
                Some(w) => CheckOutcome::Fails {
                    lhs: f.apply(&w),
                    rhs: g.apply(&w),
                    witness: w,
                },
            }),
            (Rep::Prefix(f), Rep::Finite(_)) => {
                // f has an infinite domain and g a finite one, so a witness exists.
                let mut n = Nat::from(0u8);
                loop {
                    if let Some(v) = f.apply(&n) {
                        let theirs = other.apply(&n)?;
                        if theirs.as_ref() != Some(&v) {
                            return Ok(CheckOutcome::Fails {
                                witness: n,
                                lhs: Some(v),
                                rhs: theirs,
                            });
                        }
                    }
                    n += 1u8;
                }
            }
            _ => {
                for i in 0..bound {
                    let n = Nat::from(i);
                    if let Some(v) = self.apply(&n)? {
                        let theirs = other.apply(&n)?;
                        if theirs.as_ref() != Some(&v) {
                            return Ok(CheckOutcome::Fails {
                                witness: n,
                                lhs: Some(v),
                                rhs: theirs,
                            });
                        }
                    }
                }
                Ok(CheckOutcome::HoldsUpTo { bound })
            }
        }
    }

    /// Pointwise comparison, definedness included, on `[0, bound)`.
    pub fn equal_on(&self, other: &PartialInjection, bound: u64) -> Result<CheckOutcome, EvalError> {
        for i in 0..bound {
            let n = Nat::from(i);
            let (lhs, rhs) = (self.apply(&n)?, other.apply(&n)?);
            if lhs != rhs {
                return Ok(CheckOutcome::Fails { witness: n, lhs, rhs });
            }
        }
        Ok(CheckOutcome::HoldsUpTo { bound })
    }
}

fn iterate(n: &Nat, k: u64, step: impl Fn(&Nat) -> Eval) -> Eval {
    let mut cur = n.clone();
    for _ in 0..k {
        match step(&cur)? {
            Some(m) => cur = m,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

fn union_at(f: &PartialInjection, g: &PartialInjection, n: &Nat) -> Eval {
    let clash = |detail: String| {
        Err(EvalError::Compatibility {
            witness: n.clone(),
            detail,
        })
    };
    match (f.apply(n)?, g.apply(n)?) {
        (Some(a), Some(b)) if a != b => clash(format!("{n} maps to {a} and to {b}")),
        (Some(a), Some(_)) => Ok(Some(a)),
        (Some(a), None) => match g.unapply(&a)? {
            Some(other) => clash(format!("{n} and {other} both map to {a}")),
            None => Ok(Some(a)),
        },
        (None, Some(b)) => match f.unapply(&b)? {
            Some(other) => clash(format!("{n} and {other} both map to {b}")),
            None => Ok(Some(b)),
        },
        (None, None) => Ok(None),
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Rep::Finite(m) => {
                f.write_str("{")?;
                for (i, (a, b)) in m.pairs().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}->{b}")?;
                }
                f.write_str("}")
            }
            Rep::Prefix(m) => {
                f.write_str("prefix[")?;
                for (i, r) in m.rules().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{r}")?;
                }
                f.write_str("]")
            }
            Rep::Lazy(m) => f.write_str(m.label()),
        }
    }
}

#[cfg(test)]
mod tests;
