//! Named algebraic laws, checked pointwise on `[0, bound)`.
//!
//! A law quantifies over some number of maps. Each run instantiates them from
//! a fixed suite of generators (`p`, `q`, `tau`, `sigma`, `id`, `zero`) and
//! from seeded random finite maps, builds both sides of every equation, and
//! compares them on the prefix.

mod random;
mod registry;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{builtin, print_expr, Expr};
use crate::pinj::{CheckOutcome, PartialInjection};
use crate::serde_nat;
use crate::Nat;

pub use random::{all_partial_injections, order_equivalence, random_finite};

/// Size and value range of the random finite maps used to instantiate laws.
pub const RANDOM_MAX_SIZE: u64 = 16;
pub const RANDOM_VALUE_BOUND: u64 = 64;
pub const DEFAULT_SAMPLES: u64 = 100;
/// At most this many witnesses are kept per report.
pub const MAX_WITNESSES: usize = 16;

const GENERATORS: [&str; 6] = ["p", "q", "tau", "sigma", "id", "zero"];

/// One side-by-side comparison produced by a law for a choice of maps.
pub struct Equation {
    pub label: String,
    pub lhs: PartialInjection,
    pub rhs: PartialInjection,
    /// Tighter bound for equations that only hold on an initial segment.
    pub cap: Option<u64>,
}

impl Equation {
    pub fn new(label: impl Into<String>, lhs: PartialInjection, rhs: PartialInjection) -> Self {
        Equation {
            label: label.into(),
            lhs,
            rhs,
            cap: None,
        }
    }

    pub fn up_to(mut self, cap: u64) -> Self {
        self.cap = Some(cap);
        self
    }
}

pub type Builder = fn(&[PartialInjection], u64) -> Result<Vec<Equation>>;

pub struct LawSpec {
    pub name: &'static str,
    pub arity: usize,
    pub default_bound: u64,
    pub statement: &'static str,
    pub builder: Builder,
}

impl LawSpec {
    pub const fn new(name: &'static str, arity: usize, default_bound: u64, statement: &'static str, builder: Builder) -> Self {
        LawSpec {
            name,
            arity,
            default_bound,
            statement,
            builder,
        }
    }

    pub fn equations(&self, maps: &[PartialInjection], bound: u64) -> Result<Vec<Equation>> {
        (self.builder)(maps, bound)
    }
}

impl std::fmt::Debug for LawSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LawSpec")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("default_bound", &self.default_bound)
            .finish()
    }
}

/// Every registered law, in a stable order.
pub fn registry() -> Vec<LawSpec> {
    registry::all()
}

pub fn find_law(name: &str) -> Result<LawSpec> {
    registry()
        .into_iter()
        .find(|l| l.name == name)
        .ok_or_else(|| Error::UnknownLaw(name.to_string()))
}

/// A point where the two sides of an equation disagree (or failed to evaluate).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The instantiated maps, written as terms.
    pub inputs: Vec<String>,
    pub equation: String,
    #[serde(serialize_with = "serde_nat::nat")]
    pub point: Nat,
    #[serde(serialize_with = "serde_nat::opt_nat")]
    pub lhs: Option<Nat>,
    #[serde(serialize_with = "serde_nat::opt_nat")]
    pub rhs: Option<Nat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: String,
    pub bound: u64,
    pub samples: u64,
    pub seed: u64,
    pub outcome: CheckOutcome,
    pub elapsed: Duration,
    pub witnesses: Vec<Witness>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    law: &'a str,
    bound: u64,
    samples: u64,
    seed: u64,
    verdict: &'a CheckOutcome,
    witnesses: &'a [Witness],
    elapsed_ms: u128,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.outcome.holds()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            law: &self.law,
            bound: self.bound,
            samples: self.samples,
            seed: self.seed,
            verdict: &self.outcome,
            witnesses: &self.witnesses,
            elapsed_ms: self.elapsed.as_millis(),
        })
        .expect("report serializes")
    }
}

struct Instance {
    labels: Vec<String>,
    maps: Vec<PartialInjection>,
}

fn generator(name: &str) -> (String, PartialInjection) {
    (name.to_string(), builtin(name).expect("generator is a builtin"))
}

fn label_of(map: &PartialInjection) -> String {
    match map.as_finite() {
        Some(m) if m.is_empty() => "zero".to_string(),
        Some(m) => print_expr(&Expr::FiniteLit(m.pairs().map(|(a, b)| (a.clone(), b.clone())).collect())),
        None => format!("{map:?}"),
    }
}

fn fixed_tuples(arity: usize) -> Vec<Vec<usize>> {
    let g = GENERATORS.len();
    match arity {
        0 => vec![vec![]],
        1 => (0..g).map(|i| vec![i]).collect(),
        2 => (0..g * g).map(|i| vec![i / g, i % g]).collect(),
        _ => (0..g)
            .flat_map(|i| [(0..arity).map(|k| (i + k) % g).collect(), vec![i; arity]])
            .collect(),
    }
}

fn instances(arity: usize, samples: u64, seed: u64) -> Result<Vec<Instance>> {
    let mut out: Vec<Instance> = fixed_tuples(arity)
        .into_iter()
        .map(|tuple| {
            let (labels, maps) = tuple.into_iter().map(|i| generator(GENERATORS[i])).unzip();
            Instance { labels, maps }
        })
        .collect();
    if arity == 0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut maps = Vec::with_capacity(arity);
        for _ in 0..arity {
            let size = rng.gen_range(0..=RANDOM_MAX_SIZE);
            maps.push(random_finite(rng.gen(), size, RANDOM_VALUE_BOUND)?);
        }
        out.push(Instance {
            labels: maps.iter().map(label_of).collect(),
            maps,
        });
    }
    Ok(out)
}

fn check_instance(spec: &LawSpec, inst: &Instance, bound: u64) -> Result<Option<Witness>> {
    for eq in spec.equations(&inst.maps, bound)? {
        let limit = eq.cap.map_or(bound, |c| c.min(bound));
        let witness = |point, lhs, rhs, error| Witness {
            inputs: inst.labels.clone(),
            equation: eq.label.clone(),
            point,
            lhs,
            rhs,
            error,
        };
        match eq.lhs.equal_on(&eq.rhs, limit) {
            Ok(CheckOutcome::Fails { witness: w, lhs, rhs }) => return Ok(Some(witness(w, lhs, rhs, None))),
            Ok(_) => {}
            Err(e) => {
                let point = match &e {
                    crate::EvalError::Compatibility { witness, .. } => witness.clone(),
                    crate::EvalError::Divergence { input, .. } => input.clone(),
                    crate::EvalError::CopyIndexTooLarge { .. } => Nat::from(0u8),
                    crate::EvalError::Residue { start, .. } => start.clone(),
                };
                return Ok(Some(witness(point, None, None, Some(e.to_string()))));
            }
        }
    }
    Ok(None)
}

/// Checks an arbitrary law. `run_law` looks the law up by name and calls this.
pub fn run_spec(spec: &LawSpec, bound: u64, samples: u64, seed: u64) -> Result<LawReport> {
    if bound < 2 {
        return Err(Error::Argument(format!("bound must be at least 2, got {bound}")));
    }
    let start = Instant::now();
    let insts = instances(spec.arity, samples, seed)?;
    let found: Vec<Option<Witness>> = insts
        .par_iter()
        .map(|inst| check_instance(spec, inst, bound))
        .collect::<Result<_>>()?;
    let witnesses: Vec<Witness> = found.into_iter().flatten().take(MAX_WITNESSES).collect();
    let outcome = match witnesses.first() {
        None => CheckOutcome::HoldsUpTo { bound },
        Some(w) => CheckOutcome::Fails {
            witness: w.point.clone(),
            lhs: w.lhs.clone(),
            rhs: w.rhs.clone(),
        },
    };
    Ok(LawReport {
        law: spec.name.to_string(),
        bound,
        samples,
        seed,
        outcome,
        elapsed: start.elapsed(),
        witnesses,
    })
}

pub fn run_law(name: &str, bound: u64, samples: u64, seed: u64) -> Result<LawReport> {
    run_spec(&find_law(name)?, bound, samples, seed)
}

/// Every law at its default bound, in registry order.
pub fn run_all(samples: u64, seed: u64) -> Result<Vec<LawReport>> {
    registry()
        .par_iter()
        .map(|spec| run_spec(spec, spec.default_bound, samples, seed))
        .collect()
}
