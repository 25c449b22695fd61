//! The laws, each stated in functional composition order. Where the
//! literature writes a word diagrammatically the translation is given next to
//! the equation.

use num_traits::ToPrimitive;

use crate::error::Result;
use crate::goi::{
    bang, bang_truncated, gen_p, gen_p_dag, gen_q, gen_q_dag, nu2, odot, psi, psi_inv, r_gen, sigma_odot,
    sigma_star, star, star_via_join, tau_odot, tau_star, whimper, whimper_truncated, ProdIndex,
    SelfSimilarStructure,
};
use crate::pinj::PartialInjection;
use crate::Nat;

use super::{Equation, LawSpec};

type Maps<'a> = &'a [PartialInjection];

fn id() -> PartialInjection {
    PartialInjection::identity()
}

fn zero() -> PartialInjection {
    PartialInjection::zero()
}

/// `a ∘ b ∘ c ∘ …`, rightmost applied first.
fn chain(maps: &[&PartialInjection]) -> PartialInjection {
    maps.iter()
        .rev()
        .fold(id(), |acc, m| m.compose(&acc))
}

/// Number of join terms needed to be complete on `[0, bound)`.
fn terms_for(bound: u64) -> u64 {
    u64::from(64 - bound.max(1).leading_zeros())
}

fn inverse_axioms(m: Maps, _: u64) -> Result<Vec<Equation>> {
    let f = &m[0];
    let fd = f.inverse();
    Ok(vec![
        Equation::new("f . f~ . f = f", chain(&[f, &fd, f]), f.clone()),
        Equation::new("f~ . f . f~ = f~", chain(&[&fd, f, &fd]), fd.clone()),
        Equation::new("f~~ = f", fd.inverse(), f.clone()),
    ])
}

fn dagger_contravariance(m: Maps, _: u64) -> Result<Vec<Equation>> {
    let (f, g) = (&m[0], &m[1]);
    Ok(vec![Equation::new(
        "(f . g)~ = g~ . f~",
        f.compose(g).inverse(),
        g.inverse().compose(&f.inverse()),
    )])
}

// pp‡ = 1 = qq‡ and pq‡ = 0 = qp‡, read diagrammatically.
fn dyn_alg(_: Maps, _: u64) -> Result<Vec<Equation>> {
    Ok(vec![
        Equation::new("p~ . p = id", gen_p_dag().compose(&gen_p()), id()),
        Equation::new("q~ . q = id", gen_q_dag().compose(&gen_q()), id()),
        Equation::new("q~ . p = zero", gen_q_dag().compose(&gen_p()), zero()),
        Equation::new("p~ . q = zero", gen_p_dag().compose(&gen_q()), zero()),
    ])
}

// p‡p ∨ q‡q = 1.
fn dyn_complete(_: Maps, _: u64) -> Result<Vec<Equation>> {
    let sum = gen_p().range_id().join(&gen_q().range_id())?;
    Ok(vec![Equation::new("p . p~ + q . q~ = id", sum, id())])
}

// f⋆g = p‡fp ∨ q‡gq.
fn star_join(m: Maps, _: u64) -> Result<Vec<Equation>> {
    let (f, g) = (&m[0], &m[1]);
    Ok(vec![Equation::new("f * g = p.f.p~ + q.g.q~", star(f, g), star_via_join(f, g)?)])
}

fn pentagon(tensor: fn(&PartialInjection, &PartialInjection) -> PartialInjection, tau: PartialInjection) -> Equation {
    let lhs = chain(&[&tensor(&tau, &id()), &tau, &tensor(&id(), &tau)]);
    Equation::new("(tau x 1) . tau . (1 x tau) = tau . tau", lhs, tau.compose(&tau))
}

fn hexagon(
    tensor: fn(&PartialInjection, &PartialInjection) -> PartialInjection,
    tau: PartialInjection,
    sigma: PartialInjection,
) -> Equation {
    let lhs = chain(&[&tau, &sigma, &tau]);
    let rhs = chain(&[&tensor(&sigma, &id()), &tau, &tensor(&id(), &sigma)]);
    Equation::new("tau . sigma . tau = (sigma x 1) . tau . (1 x sigma)", lhs, rhs)
}

fn pentagon_star(_: Maps, _: u64) -> Result<Vec<Equation>> {
    Ok(vec![pentagon(star, tau_star())])
}

fn hexagon_star(_: Maps, _: u64) -> Result<Vec<Equation>> {
    Ok(vec![hexagon(star, tau_star(), sigma_star())])
}

fn pentagon_odot(_: Maps, _: u64) -> Result<Vec<Equation>> {
    Ok(vec![pentagon(odot, tau_odot())])
}

fn hexagon_odot(_: Maps, _: u64) -> Result<Vec<Equation>> {
    Ok(vec![hexagon(odot, tau_odot(), sigma_odot())])
}

fn naturality_tau(
    tensor: fn(&PartialInjection, &PartialInjection) -> PartialInjection,
    tau: PartialInjection,
    m: Maps,
) -> Equation {
    let (f, g, h) = (&m[0], &m[1], &m[2]);
    let lhs = tau.compose(&tensor(f, &tensor(g, h)));
    let rhs = tensor(&tensor(f, g), h).compose(&tau);
    Equation::new("tau . (f x (g x h)) = ((f x g) x h) . tau", lhs, rhs)
}

/// Outputs of the two inner maps are clipped below [`INNER_CLIP`], which keeps
/// the copy index ψ(g(y), h(z)) under 2^11.
const INNER_CLIP: u64 = 8;

fn clip(f: &PartialInjection) -> Result<PartialInjection> {
    Ok(PartialInjection::finite((0..INNER_CLIP).map(|i| (i, i)))?.compose(f))
}

fn naturality_tau_odot(m: Maps, _: u64) -> Result<Vec<Equation>> {
    let clipped = [m[0].clone(), clip(&m[1])?, clip(&m[2])?];
    let mut eq = naturality_tau(odot, tau_odot(), &clipped);
    eq.label = format!("{} (g, h clipped below {INNER_CLIP})", eq.label);
    Ok(vec![eq])
}

fn naturality_sigma(
    tensor: fn(&PartialInjection, &PartialInjection) -> PartialInjection,
    sigma: PartialInjection,
    m: Maps,
) -> Equation {
    let (f, g) = (&m[0], &m[1]);
    let lhs = sigma.compose(&tensor(f, g));
    let rhs = tensor(g, f).compose(&sigma);
    Equation::new("sigma . (f x g) = (g x f) . sigma", lhs, rhs)
}

fn functorial(tensor: fn(&PartialInjection, &PartialInjection) -> PartialInjection, m: Maps) -> Vec<Equation> {
    let (f1, f2, g1, g2) = (&m[0], &m[1], &m[2], &m[3]);
    vec![
        Equation::new("1 x 1 = 1", tensor(&id(), &id()), id()),
        Equation::new(
            "(f1 . g1) x (f2 . g2) = (f1 x f2) . (g1 x g2)",
            tensor(&f1.compose(g1), &f2.compose(g2)),
            tensor(f1, f2).compose(&tensor(g1, g2)),
        ),
    ]
}

fn bang_hom(m: Maps, _: u64) -> Result<Vec<Equation>> {
    let (g, f) = (&m[0], &m[1]);
    Ok(vec![
        Equation::new("!id = id", bang(&id()), id()),
        Equation::new("!g = g & id", bang(g), odot(g, &id())),
        Equation::new("!(g . f) = !g . !f", bang(&g.compose(f)), bang(g).compose(&bang(f))),
    ])
}

// !(f) = p‡fp ∨ q‡p‡fpq ∨ …, truncated where it is complete for the bound.
fn bang_join(m: Maps, bound: u64) -> Result<Vec<Equation>> {
    let f = &m[0];
    Ok(vec![Equation::new("!f = join_k q^k.p.f.p~.q~^k", bang(f), bang_truncated(f, terms_for(bound))?)])
}

fn fixed_point(m: Maps, _: u64) -> Result<Vec<Equation>> {
    let f = &m[0];
    let bf = bang(f);
    Ok(vec![Equation::new("f * !f = !f", star(f, &bf), bf)])
}

fn whimper_conj(m: Maps, _: u64) -> Result<Vec<Equation>> {
    let g = &m[0];
    let conj = chain(&[&sigma_odot(), &bang(g), &sigma_odot()]);
    Ok(vec![
        Equation::new("?g = sigma2 . !g . sigma2", whimper(g), conj),
        Equation::new("?g = id & g", whimper(g), odot(&id(), g)),
    ])
}

fn whimper_join(m: Maps, bound: u64) -> Result<Vec<Equation>> {
    let g = &m[0];
    Ok(vec![Equation::new(
        "?g = join_n r(g(n)) . r(n)~",
        whimper(g),
        whimper_truncated(g, terms_for(bound))?,
    )])
}

// r_j r_k‡ = 1 if j = k else 0, and ⋁ r_n‡ r_n = 1 (diagrammatic).
fn r_relations(_: Maps, _: u64) -> Result<Vec<Equation>> {
    const J: u64 = 16;
    let mut eqs = Vec::new();
    for j in 0..J {
        for k in 0..J {
            let word = r_gen(k).inverse().compose(&r_gen(j));
            let expected = if j == k { id() } else { zero() };
            eqs.push(Equation::new(format!("r({k})~ . r({j}) = {}", if j == k { "id" } else { "zero" }), word, expected));
        }
    }
    let mut partial = zero();
    for k in 1..=J {
        let next = partial.join(&r_gen(k - 1).range_id())?;
        eqs.push(Equation::new(
            format!("join_(n<{}) below join_(n<{k})", k - 1),
            partial.clone(),
            next.compose(&partial.domain_id()),
        ));
        partial = next;
        let low_copy = PartialInjection::lazy(
            format!("id on copy index < {k}"),
            move |n: &Nat| (nu2(&(n + 1u8)).expect("positive") < k).then(|| n.clone()),
            move |n: &Nat| (nu2(&(n + 1u8)).expect("positive") < k).then(|| n.clone()),
        );
        eqs.push(Equation::new(format!("join_(n<{k}) r(n).r(n)~ = copy index < {k}"), partial.clone(), low_copy));
        eqs.push(Equation::new(format!("join_(n<{k}) r(n).r(n)~ = id"), partial.clone(), id()).up_to((1 << k) - 1));
    }
    Ok(eqs)
}

fn psi_bijection(_: Maps, _: u64) -> Result<Vec<Equation>> {
    // Index the grid x, y < 256 as 256x + y so that [0, 2^16) covers it exactly.
    let grid_roundtrip = |n: &Nat| {
        let (x, y) = (n >> 8u8, (n & Nat::from(0xffu8)).to_u64().expect("masked"));
        let back = psi_inv(&psi(&ProdIndex { x, y }));
        Some((back.x << 8u8) + back.y)
    };
    let there_and_back = |n: &Nat| Some(psi(&psi_inv(n)));
    Ok(vec![
        Equation::new(
            "psi_inv . psi = id on x, y < 2^8",
            PartialInjection::lazy("grid roundtrip", grid_roundtrip, grid_roundtrip),
            id(),
        ),
        Equation::new(
            "psi . psi_inv = id",
            PartialInjection::lazy("psi roundtrip", there_and_back, there_and_back),
            id(),
        ),
    ])
}

fn no_residue(_: Maps, _: u64) -> Result<Vec<Equation>> {
    Ok(vec![Equation::new(
        "copy index finite everywhere",
        SelfSimilarStructure::cantor().residue_free(),
        id(),
    )])
}

pub(super) fn all() -> Vec<LawSpec> {
    const WIDE: u64 = 1 << 16;
    const DEFAULT: u64 = 1 << 12;
    vec![
        LawSpec::new("inverse-axioms", 1, DEFAULT, "f f‡ f = f and f‡ f f‡ = f‡", inverse_axioms),
        LawSpec::new("dagger-contravariance", 2, DEFAULT, "(f g)‡ = g‡ f‡", dagger_contravariance),
        LawSpec::new("dyn-alg", 0, 100_000, "p p‡ = 1 = q q‡, p q‡ = 0 = q p‡", dyn_alg),
        LawSpec::new("dyn-complete", 0, 100_000, "p‡ p ∨ q‡ q = 1", dyn_complete),
        LawSpec::new("star-join", 2, DEFAULT, "f ⋆ g = p‡ f p ∨ q‡ g q", star_join),
        LawSpec::new("pentagon-star", 0, WIDE, "pentagon for (⋆, τ)", pentagon_star),
        LawSpec::new("hexagon-star", 0, WIDE, "hexagon for (⋆, τ, σ)", hexagon_star),
        LawSpec::new("pentagon-odot", 0, DEFAULT, "pentagon for (⊙, τ⊙)", pentagon_odot),
        LawSpec::new("hexagon-odot", 0, DEFAULT, "hexagon for (⊙, τ⊙, σ⊙)", hexagon_odot),
        LawSpec::new("naturality-tau", 3, DEFAULT, "τ natural for ⋆", |m, _| {
            Ok(vec![naturality_tau(star, tau_star(), m)])
        }),
        LawSpec::new("naturality-sigma", 2, DEFAULT, "σ natural for ⋆", |m, _| {
            Ok(vec![naturality_sigma(star, sigma_star(), m)])
        }),
        LawSpec::new("naturality-tau-odot", 3, DEFAULT, "τ⊙ natural for ⊙", naturality_tau_odot),
        LawSpec::new("naturality-sigma-odot", 2, DEFAULT, "σ⊙ natural for ⊙", |m, _| {
            Ok(vec![naturality_sigma(odot, sigma_odot(), m)])
        }),
        LawSpec::new("star-functorial", 4, DEFAULT, "⋆ is a bifunctor", |m, _| Ok(functorial(star, m))),
        LawSpec::new("odot-functorial", 4, DEFAULT, "⊙ is a bifunctor", |m, _| Ok(functorial(odot, m))),
        LawSpec::new("bang-hom", 2, DEFAULT, "! is a monoid homomorphism", bang_hom),
        LawSpec::new("bang-join", 1, DEFAULT, "!(f) as the join of (q‡)^k p‡ f p q^k", bang_join),
        LawSpec::new("fixed-point", 1, DEFAULT, "f ⋆ !(f) = !(f)", fixed_point),
        LawSpec::new("whimper-conj", 1, DEFAULT, "?(g) = σ⊙ !(g) σ⊙", whimper_conj),
        LawSpec::new("whimper-join", 1, DEFAULT, "?(g) as the join of r_g(n)‡-r_n terms", whimper_join),
        LawSpec::new("r-relations", 0, 1 << 10, "r_j r_k‡ = δ_jk and ⋁ r_n‡ r_n = 1", r_relations),
        LawSpec::new("psi-bijection", 0, WIDE, "ψ and ψ⁻¹ are mutually inverse", psi_bijection),
        LawSpec::new("no-residue", 0, WIDE, "every n has a finite copy index", no_residue),
    ]
}
