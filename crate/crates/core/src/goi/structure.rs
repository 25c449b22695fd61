//! Self-similar structures ℕ ≅ ℕ ⊎ ℕ, given by the two injections of the
//! summands into ℕ.

use crate::error::{Error, EvalError, Result};
use crate::pinj::{CheckOutcome, Eval, PartialInjection};
use crate::Nat;

use super::cantor::{gen_p, gen_q, SumIndex};
use super::exponential::{copy_index, ProdIndex};
use super::tensor;

/// How many second-summand strips a point may take before it is treated as a
/// residue.
pub const DEFAULT_RESIDUE_CAP: u64 = 4096;

/// A code/decode pair presented as two total injections `j0`, `j1` with
/// complementary ranges: `◁(n, 0) = j0(n)` and `◁(n, 1) = j1(n)`.
#[derive(Debug, Clone)]
pub struct SelfSimilarStructure {
    j0: PartialInjection,
    j1: PartialInjection,
    cantor: bool,
    residue_cap: u64,
}

impl Default for SelfSimilarStructure {
    fn default() -> Self {
        Self::cantor()
    }
}

impl SelfSimilarStructure {
    /// The Cantor pairing: `j0 = p`, `j1 = q`.
    pub fn cantor() -> Self {
        SelfSimilarStructure {
            j0: gen_p(),
            j1: gen_q(),
            cantor: true,
            residue_cap: DEFAULT_RESIDUE_CAP,
        }
    }

    /// Validates totality and complementary ranges on `[0, bound)`.
    pub fn new(j0: PartialInjection, j1: PartialInjection, bound: u64) -> Result<Self> {
        for i in 0..bound {
            let n = Nat::from(i);
            if j0.apply(&n)?.is_none() || j1.apply(&n)?.is_none() {
                return Err(Error::Structure(format!("injections are not total at {n}")));
            }
            match (j0.unapply(&n)?, j1.unapply(&n)?) {
                (Some(_), Some(_)) => return Err(Error::Structure(format!("ranges overlap at {n}"))),
                (None, None) => return Err(Error::Structure(format!("ranges miss {n}"))),
                _ => {}
            }
        }
        Ok(SelfSimilarStructure {
            j0,
            j1,
            cantor: false,
            residue_cap: DEFAULT_RESIDUE_CAP,
        })
    }

    pub fn with_residue_cap(mut self, cap: u64) -> Self {
        self.residue_cap = cap;
        self
    }

    pub fn j0(&self) -> &PartialInjection {
        &self.j0
    }

    pub fn j1(&self) -> &PartialInjection {
        &self.j1
    }

    pub fn code(&self, s: &SumIndex) -> Eval {
        if s.tag {
            self.j1.apply(&s.n)
        } else {
            self.j0.apply(&s.n)
        }
    }

    pub fn decode(&self, n: &Nat) -> Result<Option<SumIndex>, EvalError> {
        if let Some(m) = self.j0.unapply(n)? {
            return Ok(Some(SumIndex { n: m, tag: false }));
        }
        Ok(self.j1.unapply(n)?.map(|m| SumIndex { n: m, tag: true }))
    }

    /// Number of `j1‡` strips from `n` before leaving the range of `j1`.
    fn strip_count(&self, n: &Nat) -> Result<(u64, Nat), EvalError> {
        let mut cur = n.clone();
        let mut steps = 0;
        while let Some(prev) = self.j1.unapply(&cur)? {
            steps += 1;
            if steps > self.residue_cap {
                return Err(EvalError::Residue {
                    start: n.clone(),
                    steps: self.residue_cap,
                });
            }
            cur = prev;
        }
        Ok((steps, cur))
    }

    /// Every `n < bound` leaves the range of `j1` after finitely many strips,
    /// i.e. lies outside `⋂_j j1^j(ℕ)`.
    pub fn no_residue(&self, bound: u64) -> Result<CheckOutcome, EvalError> {
        for i in 0..bound {
            let n = Nat::from(i);
            match self.strip_count(&n) {
                Ok(_) => {}
                Err(EvalError::Residue { .. }) => {
                    return Ok(CheckOutcome::Fails {
                        witness: n,
                        lhs: None,
                        rhs: None,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Ok(CheckOutcome::HoldsUpTo { bound })
    }

    /// Partial identity on the points whose `j1‡` stripping terminates within
    /// the residue cap.
    pub fn residue_free(&self) -> PartialInjection {
        let (s1, s2) = (self.clone(), self.clone());
        let keep = |s: &SelfSimilarStructure, n: &Nat| match s.strip_count(n) {
            Ok(_) => Ok(Some(n.clone())),
            Err(EvalError::Residue { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        PartialInjection::lazy_fallible("residue-free", move |n| keep(&s1, n), move |n| keep(&s2, n))
    }

    /// `f ⋆ g = ◁ (f ⊎ g) ▷`, evaluated through this structure.
    pub fn star(&self, f: &PartialInjection, g: &PartialInjection) -> PartialInjection {
        if self.cantor {
            return tensor::star(f, g);
        }
        let (s1, f1, g1) = (self.clone(), f.clone(), g.clone());
        let (s2, f2, g2) = (self.clone(), f.clone(), g.clone());
        PartialInjection::lazy_fallible(
            format!("({f:?} *' {g:?})"),
            move |n| {
                let Some(s) = s1.decode(n)? else { return Ok(None) };
                let side = if s.tag { g1.apply(&s.n)? } else { f1.apply(&s.n)? };
                match side {
                    Some(v) => s1.code(&SumIndex { n: v, tag: s.tag }),
                    None => Ok(None),
                }
            },
            move |n| {
                let Some(s) = s2.decode(n)? else { return Ok(None) };
                let side = if s.tag { g2.unapply(&s.n)? } else { f2.unapply(&s.n)? };
                match side {
                    Some(v) => s2.code(&SumIndex { n: v, tag: s.tag }),
                    None => Ok(None),
                }
            },
        )
    }

    /// `j0 ∘ f ∘ j0‡ ∨ j1 ∘ g ∘ j1‡`.
    pub fn star_via_join(&self, f: &PartialInjection, g: &PartialInjection) -> Result<PartialInjection> {
        let left = self.j0.compose(&f.compose(&self.j0.inverse()));
        let right = self.j1.compose(&g.compose(&self.j1.inverse()));
        left.join(&right)
    }

    /// The exponential bijection `(x, y) ↦ j1^y(j0(x))` derived from this
    /// structure. Refused unless the no-residue check passes on `[0, bound)`.
    pub fn exponential(&self, bound: u64) -> Result<ExponentialStructure> {
        match self.no_residue(bound)? {
            CheckOutcome::Fails { witness, .. } => Err(Error::NoResidue { witness }),
            _ => Ok(ExponentialStructure { base: self.clone() }),
        }
    }
}

/// ℕ × ℕ ≅ ℕ obtained by iterating a self-similar structure.
#[derive(Debug, Clone)]
pub struct ExponentialStructure {
    base: SelfSimilarStructure,
}

impl ExponentialStructure {
    pub fn code(&self, i: &ProdIndex) -> Eval {
        let Some(mut cur) = self.base.j0.apply(&i.x)? else { return Ok(None) };
        for _ in 0..i.y {
            match self.base.j1.apply(&cur)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    pub fn decode(&self, n: &Nat) -> Result<Option<ProdIndex>, EvalError> {
        let (y, rest) = self.base.strip_count(n)?;
        Ok(self.base.j0.unapply(&rest)?.map(|x| ProdIndex { x, y }))
    }

    fn lift(
        &self,
        label: String,
        f: &PartialInjection,
        g: &PartialInjection,
    ) -> PartialInjection {
        let fwd = (self.clone(), f.clone(), g.clone());
        let bwd = (self.clone(), f.inverse(), g.inverse());
        let run = |(e, f, g): &(ExponentialStructure, PartialInjection, PartialInjection), n: &Nat| -> Eval {
            let Some(i) = e.decode(n)? else { return Ok(None) };
            let Some(x) = f.apply(&i.x)? else { return Ok(None) };
            let Some(y) = g.apply(&Nat::from(i.y))? else { return Ok(None) };
            e.code(&ProdIndex { x, y: copy_index(&y)? })
        };
        PartialInjection::lazy_fallible(label, move |n| run(&fwd, n), move |n| run(&bwd, n))
    }

    pub fn odot(&self, f: &PartialInjection, g: &PartialInjection) -> PartialInjection {
        self.lift(format!("({f:?} &' {g:?})"), f, g)
    }

    pub fn bang(&self, f: &PartialInjection) -> PartialInjection {
        self.lift(format!("!'({f:?})"), f, &PartialInjection::identity())
    }

    pub fn whimper(&self, g: &PartialInjection) -> PartialInjection {
        self.lift(format!("?'({g:?})"), &PartialInjection::identity(), g)
    }
}
