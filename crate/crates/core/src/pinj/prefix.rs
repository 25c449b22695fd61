//! Finite unions of affine maps between dyadic residue classes.
//!
//! A rule `(k_in, r_in) -> (k_out, r_out)` sends `2^k_in * t + r_in` to
//! `2^k_out * t + r_out`. Every word in the dynamical-algebra generators is a
//! single such rule, and finite joins of words are finite sets of rules with
//! pairwise disjoint input classes and pairwise disjoint output classes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result, Side};
use crate::Nat;

/// The residue class `{ n : n ≡ r (mod 2^k) }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Class {
    pub k: u32,
    pub r: Nat,
}

/// `n mod 2^k`, without allocating when `k` fits in a machine word.
fn low_bits_eq(n: &Nat, k: u32, r: &Nat) -> bool {
    if k == 0 {
        return true;
    }
    if k <= 64 {
        let low = n.iter_u64_digits().next().unwrap_or(0);
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        return r.to_u64().is_some_and(|r| low & mask == r);
    }
    (0..u64::from(k)).all(|i| n.bit(i) == r.bit(i))
}

impl Class {
    pub fn new(k: u32, r: impl Into<Nat>) -> Self {
        Class { k, r: r.into() }
    }

    pub fn everything() -> Self {
        Class::new(0, 0u8)
    }

    pub fn is_valid(&self) -> bool {
        self.r.bits() <= u64::from(self.k)
    }

    pub fn contains(&self, n: &Nat) -> bool {
        low_bits_eq(n, self.k, &self.r)
    }

    /// `other ⊆ self`.
    pub fn contains_class(&self, other: &Class) -> bool {
        other.k >= self.k && low_bits_eq(&other.r, self.k, &self.r)
    }

    pub fn intersect(&self, other: &Class) -> Option<Class> {
        let (wide, narrow) = if self.k <= other.k { (self, other) } else { (other, self) };
        wide.contains_class(narrow).then(|| narrow.clone())
    }

    pub fn is_disjoint(&self, other: &Class) -> bool {
        self.intersect(other).is_none()
    }

    /// The two halves `(k+1, r)` and `(k+1, r + 2^k)`.
    pub fn split(&self) -> (Class, Class) {
        let high = &self.r + (BigUint::from(1u8) << self.k);
        (Class::new(self.k + 1, self.r.clone()), Class::new(self.k + 1, high))
    }

    /// Smallest member.
    pub fn min_element(&self) -> &Nat {
        &self.r
    }

    /// The part of `self` not covered by any of `holes`, as disjoint classes.
    pub fn subtract(&self, holes: &[Class]) -> Vec<Class> {
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            let mut touched = false;
            let mut covered = false;
            for h in holes {
                if h.contains_class(&c) {
                    covered = true;
                    break;
                }
                if !h.is_disjoint(&c) {
                    touched = true;
                }
            }
            if covered {
                continue;
            }
            if touched {
                let (lo, hi) = c.split();
                stack.push(hi);
                stack.push(lo);
            } else {
                out.push(c);
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod 2^{}", self.r, self.k)
    }
}

/// One affine piece `2^k_in * t + r_in ↦ 2^k_out * t + r_out`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixRule {
    pub k_in: u32,
    pub r_in: Nat,
    pub k_out: u32,
    pub r_out: Nat,
}

impl PrefixRule {
    pub fn new(k_in: u32, r_in: impl Into<Nat>, k_out: u32, r_out: impl Into<Nat>) -> Self {
        PrefixRule {
            k_in,
            r_in: r_in.into(),
            k_out,
            r_out: r_out.into(),
        }
    }

    pub fn input(&self) -> Class {
        Class::new(self.k_in, self.r_in.clone())
    }

    pub fn output(&self) -> Class {
        Class::new(self.k_out, self.r_out.clone())
    }

    pub fn is_valid(&self) -> bool {
        self.input().is_valid() && self.output().is_valid()
    }

    pub fn apply(&self, n: &Nat) -> Option<Nat> {
        low_bits_eq(n, self.k_in, &self.r_in).then(|| ((n >> self.k_in) << self.k_out) + &self.r_out)
    }

    pub fn inverse(&self) -> PrefixRule {
        PrefixRule {
            k_in: self.k_out,
            r_in: self.r_out.clone(),
            k_out: self.k_in,
            r_out: self.r_in.clone(),
        }
    }

    /// The rule cut down to `sub`, which must lie inside the input class.
    /// The result is reparametrized so that its own `t` runs over `sub`.
    pub fn restrict(&self, sub: &Class) -> PrefixRule {
        debug_assert!(self.input().contains_class(sub));
        let extra = sub.k - self.k_in;
        let offset = (&sub.r >> self.k_in) << self.k_out;
        PrefixRule {
            k_in: sub.k,
            r_in: sub.r.clone(),
            k_out: self.k_out + extra,
            r_out: offset + &self.r_out,
        }
    }

    /// `after ∘ self` on the part of the input class that `after` accepts.
    pub fn then(&self, after: &PrefixRule) -> Option<PrefixRule> {
        let meet = self.output().intersect(&after.input())?;
        let source = self.inverse().restrict(&meet).output();
        let tail = after.restrict(&meet);
        Some(PrefixRule {
            k_in: source.k,
            r_in: source.r,
            k_out: tail.k_out,
            r_out: tail.r_out,
        })
    }

    /// Smallest `n` in `self.input() ∩ other.input()` where the two rules give
    /// different outputs, if any.
    fn first_disagreement(&self, other: &PrefixRule) -> Option<Nat> {
        let meet = self.input().intersect(&other.input())?;
        let a = self.restrict(&meet);
        let b = other.restrict(&meet);
        if a == b {
            return None;
        }
        // Two distinct affine maps on the same progression agree in at most one
        // place, so one of the first two members is a witness.
        let first = meet.r.clone();
        if a.apply(&first) != b.apply(&first) {
            Some(first)
        } else {
            Some(first + (BigUint::from(1u8) << meet.k))
        }
    }
}

impl fmt::Display for PrefixRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} -> {}, {})", self.k_in, self.r_in, self.k_out, self.r_out)
    }
}

impl PartialOrd for PrefixRule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrefixRule {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k_in, &self.r_in, self.k_out, &self.r_out).cmp(&(other.k_in, &other.r_in, other.k_out, &other.r_out))
    }
}

/// A validated set of rules with disjoint input and output classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixMap {
    rules: Vec<PrefixRule>,
}

fn check_disjoint(rules: &[PrefixRule], side: Side) -> Result<()> {
    for (i, a) in rules.iter().enumerate() {
        for b in &rules[i + 1..] {
            let (ca, cb) = match side {
                Side::Input => (a.input(), b.input()),
                Side::Output => (a.output(), b.output()),
            };
            if !ca.is_disjoint(&cb) {
                return Err(Error::Overlap {
                    side,
                    first: a.to_string(),
                    second: b.to_string(),
                });
            }
        }
    }
    Ok(())
}

impl PrefixMap {
    pub fn new(rules: Vec<PrefixRule>) -> Result<Self> {
        if let Some(bad) = rules.iter().find(|r| !r.is_valid()) {
            return Err(Error::BadRule(bad.to_string()));
        }
        check_disjoint(&rules, Side::Input)?;
        check_disjoint(&rules, Side::Output)?;
        Ok(Self::normalized(rules))
    }

    /// Caller guarantees the disjointness invariants.
    pub(crate) fn from_disjoint(rules: Vec<PrefixRule>) -> Self {
        debug_assert!(check_disjoint(&rules, Side::Input).is_ok());
        debug_assert!(check_disjoint(&rules, Side::Output).is_ok());
        Self::normalized(rules)
    }

    /// Merges sibling classes carrying one affine map, until no merge applies.
    fn normalized(mut rules: Vec<PrefixRule>) -> Self {
        loop {
            rules.sort();
            let mut merged = false;
            'outer: for i in 0..rules.len() {
                let a = &rules[i];
                if a.k_in == 0 || a.k_out == 0 || a.r_in.bit(u64::from(a.k_in - 1)) || a.r_out.bit(u64::from(a.k_out - 1)) {
                    continue;
                }
                let twin_in = &a.r_in + (BigUint::from(1u8) << (a.k_in - 1));
                let twin_out = &a.r_out + (BigUint::from(1u8) << (a.k_out - 1));
                for j in 0..rules.len() {
                    let b = &rules[j];
                    if b.k_in == a.k_in && b.k_out == a.k_out && b.r_in == twin_in && b.r_out == twin_out {
                        let parent = PrefixRule::new(a.k_in - 1, a.r_in.clone(), a.k_out - 1, a.r_out.clone());
                        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                        rules.swap_remove(hi);
                        rules.swap_remove(lo);
                        rules.push(parent);
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                return PrefixMap { rules };
            }
        }
    }

    pub fn identity() -> Self {
        PrefixMap {
            rules: vec![PrefixRule::new(0, 0u8, 0, 0u8)],
        }
    }

    pub fn empty() -> Self {
        PrefixMap { rules: Vec::new() }
    }

    pub fn rules(&self) -> &[PrefixRule] {
        &self.rules
    }

    pub fn apply(&self, n: &Nat) -> Option<Nat> {
        self.rules.iter().find_map(|r| r.apply(n))
    }

    pub fn unapply(&self, n: &Nat) -> Option<Nat> {
        self.rules.iter().find_map(|r| r.inverse().apply(n))
    }

    pub fn inverse(&self) -> Self {
        Self::from_disjoint(self.rules.iter().map(PrefixRule::inverse).collect())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PrefixMap) -> Self {
        let rules = first
            .rules
            .iter()
            .flat_map(|a| self.rules.iter().filter_map(move |b| a.then(b)))
            .collect();
        Self::from_disjoint(rules)
    }

    pub fn domain_classes(&self) -> Vec<Class> {
        self.rules.iter().map(PrefixRule::input).collect()
    }

    /// Smallest point where `self` is defined and `other` is either undefined
    /// or different.
    pub fn first_not_below(&self, other: &PrefixMap) -> Option<Nat> {
        let holes = other.domain_classes();
        let mut best: Option<Nat> = None;
        let mut offer = |n: Nat| {
            if best.as_ref().is_none_or(|b| n < *b) {
                best = Some(n);
            }
        };
        for a in &self.rules {
            for gap in a.input().subtract(&holes) {
                offer(gap.r);
            }
            for b in &other.rules {
                if let Some(w) = a.first_disagreement(b) {
                    offer(w);
                }
            }
        }
        best
    }

    /// The least common extension, or the smallest input at which the two
    /// maps clash (on a shared input, or on a shared output).
    pub fn join(&self, other: &PrefixMap) -> Result<Self> {
        for a in &self.rules {
            for b in &other.rules {
                if let Some(w) = a.first_disagreement(b) {
                    return Err(Error::incompatible(w, "both sides defined with different values"));
                }
                if let Some(w) = a.inverse().first_disagreement(&b.inverse()) {
                    let input = a.inverse().apply(&w).unwrap_or(w);
                    return Err(Error::incompatible(input, "two inputs share an output"));
                }
            }
        }
        let holes = self.domain_classes();
        let mut rules = self.rules.clone();
        for b in &other.rules {
            for piece in b.input().subtract(&holes) {
                rules.push(b.restrict(&piece));
            }
        }
        Ok(Self::from_disjoint(rules))
    }
}
