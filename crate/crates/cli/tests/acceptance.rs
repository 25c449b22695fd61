//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use goi_core::expr::{parse, print_expr, random_expr};
use goi_core::goi::{
    bang, bang_truncated, cantor_code, cantor_decode, exec, exec_eval, gen_p, gen_q, psi, psi_inv, sigma_odot,
    sigma_star, star, star_via_join, succ, tau_star, whimper, ExecOutcome, SelfSimilarStructure, SumIndex,
};
use goi_core::lawcheck::{order_equivalence, random_finite, run_law, RANDOM_MAX_SIZE, RANDOM_VALUE_BOUND};
use goi_core::{Error, Nat, PartialInjection, ProdIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;
const SMALL: u64 = 1 << 12;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn generators() -> Vec<(&'static str, PartialInjection)> {
    vec![
        ("p", gen_p()),
        ("q", gen_q()),
        ("tau", tau_star()),
        ("sigma", sigma_star()),
        ("id", PartialInjection::identity()),
        ("zero", PartialInjection::zero()),
    ]
}

fn random_maps(count: u64, seed: u64) -> Vec<(String, PartialInjection)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let size = rng.gen_range(0..=RANDOM_MAX_SIZE);
            let f = random_finite(rng.gen(), size, RANDOM_VALUE_BOUND).expect("sizes fit the value bound");
            (format!("random#{i}"), f)
        })
        .collect()
}

fn with_generators(count: u64, seed: u64) -> Vec<(String, PartialInjection)> {
    let mut all: Vec<_> = generators().into_iter().map(|(n, f)| (n.to_string(), f)).collect();
    all.extend(random_maps(count, seed));
    all
}

fn agree(what: &str, lhs: &PartialInjection, rhs: &PartialInjection, bound: u64) -> Result<(), String> {
    let outcome = lhs.equal_on(rhs, bound).map_err(|e| format!("{what}: {e}"))?;
    if outcome.holds() {
        Ok(())
    } else {
        Err(format!("{what}: {outcome}"))
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let spent = start.elapsed();
    if spent <= limit {
        Ok(format!("{} ms", spent.as_millis()))
    } else {
        Err(format!("took {} ms, limit {} ms", spent.as_millis(), limit.as_millis()))
    }
}

fn law(name: &str, bound: u64) -> Result<(), String> {
    let report = run_law(name, bound, 100, SEED).map_err(|e| format!("{name}: {e}"))?;
    if report.holds() {
        Ok(())
    } else {
        Err(format!("{name}: {}", report.outcome))
    }
}

fn dynamical_algebra() -> Verdict {
    let start = Instant::now();
    law("dyn-alg", 100_000)?;
    law("dyn-complete", 100_000)?;
    within(start, Duration::from_secs(5))
}

fn pairing_and_psi() -> Verdict {
    let start = Instant::now();
    for n in 0u64..1 << 16 {
        for tag in [false, true] {
            let s = SumIndex { n: Nat::from(n), tag };
            if cantor_decode(&cantor_code(&s)) != s {
                return Err(format!("cantor round trip at ({n}, {tag})"));
            }
        }
    }
    for x in 0u64..256 {
        for y in 0u64..256 {
            let idx = ProdIndex { x: Nat::from(x), y };
            if psi_inv(&psi(&idx)) != idx {
                return Err(format!("psi_inv . psi at ({x}, {y})"));
            }
        }
    }
    for n in 0u64..1 << 16 {
        let n = Nat::from(n);
        if psi(&psi_inv(&n)) != n {
            return Err(format!("psi . psi_inv at {n}"));
        }
    }
    let residue = SelfSimilarStructure::cantor().no_residue(1 << 16).map_err(|e| e.to_string())?;
    if !residue.holds() {
        return Err(format!("no-residue: {residue}"));
    }
    within(start, Duration::from_secs(5))
}

fn coherence() -> Verdict {
    let start = Instant::now();
    law("pentagon-star", 1 << 16)?;
    law("hexagon-star", 1 << 16)?;
    let star_time = within(start, Duration::from_secs(10))?;
    law("pentagon-odot", SMALL)?;
    law("hexagon-odot", SMALL)?;
    Ok(format!("star laws in {star_time}"))
}

fn star_equals_join() -> Verdict {
    let gens = generators();
    let mut checked = 0;
    for (a, f) in &gens {
        for (b, g) in &gens {
            let joined = star_via_join(f, g).map_err(|e| format!("{a} * {b}: {e}"))?;
            agree(&format!("{a} * {b}"), &star(f, g), &joined, SMALL)?;
            checked += 1;
        }
    }
    let maps = random_maps(100, SEED);
    for (i, (a, f)) in maps.iter().enumerate() {
        let (b, g) = &maps[(i + 1) % maps.len()];
        let joined = star_via_join(f, g).map_err(|e| format!("{a} * {b}: {e}"))?;
        agree(&format!("{a} * {b}"), &star(f, g), &joined, SMALL)?;
        checked += 1;
    }
    Ok(format!("{checked} pairs, 0 disagreements"))
}

fn bang_as_join() -> Verdict {
    let maps = with_generators(50, SEED + 1);
    for (name, f) in &maps {
        let truncated = bang_truncated(f, 13).map_err(|e| format!("{name}: {e}"))?;
        agree(&format!("!{name}"), &bang(f), &truncated, SMALL)?;
    }
    Ok(format!("{} maps", maps.len()))
}

fn fixed_point() -> Verdict {
    let start = Instant::now();
    let maps = with_generators(100, SEED + 2);
    for (name, f) in &maps {
        let bf = bang(f);
        agree(&format!("{name} * !{name}"), &star(f, &bf), &bf, SMALL)?;
    }
    let time = within(start, Duration::from_secs(60))?;
    Ok(format!("{} maps in {time}", maps.len()))
}

fn bang_homomorphism() -> Verdict {
    let id = PartialInjection::identity();
    agree("!id", &bang(&id), &id, SMALL)?;
    let maps = random_maps(100, SEED + 3);
    for pair in maps.chunks(2) {
        let [(a, f), (b, g)] = pair else { unreachable!() };
        agree(&format!("!({b} . {a})"), &bang(&g.compose(f)), &bang(g).compose(&bang(f)), SMALL)?;
    }
    Ok("50 pairs".to_string())
}

fn whimper_and_copies() -> Verdict {
    let s = sigma_odot();
    for (name, g) in with_generators(50, SEED + 4) {
        agree(&format!("?{name}"), &whimper(&g), &s.compose(&bang(&g)).compose(&s), SMALL)?;
    }
    law("r-relations", 1 << 10)?;
    Ok("56 maps, r-relations for j, k < 16".to_string())
}

fn inverse_category() -> Verdict {
    for (name, f) in random_maps(100, SEED + 5) {
        agree(&format!("{name} . {name}~ . {name}"), &f.compose(&f.inverse()).compose(&f), &f, SMALL)?;
    }
    let order = order_equivalence(500, SEED, 4);
    if !order.holds() {
        return Err(format!("order definitions differ: {order}"));
    }
    Ok("100 maps, 500 order pairs".to_string())
}

fn execution() -> Verdict {
    let id = PartialInjection::identity();
    agree("ex(sigma)", &exec(&sigma_star()), &id, 1 << 10)?;
    agree("ex(succ)", &exec(&succ()), &succ(), 1 << 10)?;
    let chain = PartialInjection::lazy("odd+2", |n: &Nat| n.bit(0).then(|| n + 2u8), |n: &Nat| {
        (n.bit(0) && *n >= Nat::from(3u8)).then(|| n - 2u8)
    });
    let f = PartialInjection::finite([(0u8, 1u8)]).map_err(|e| e.to_string())?.join(&chain).map_err(|e| e.to_string())?;
    match exec_eval(&f, &Nat::from(0u8), 1000).map_err(|e| e.to_string())? {
        ExecOutcome::Diverged => Ok("sigma, succ and the odd chain".to_string()),
        other => Err(format!("odd chain gave {other}")),
    }
}

fn fuzz_input(rng: &mut ChaCha8Rng) -> String {
    const PIECES: &[&str] = &[
        "p", "q", "id", "zero", "succ", "tau", "sigma2", "r(", "ex(", "(", ")", "{", "}", "->", ",", "+", ".", "*", "&",
        "!", "?", "~", "^", "3", "18446744073709551616", " ", "\u{3bb}", "\0",
    ];
    let len = rng.gen_range(0..24);
    if rng.gen_bool(0.25) {
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        return String::from_utf8_lossy(&bytes).into_owned();
    }
    (0..len).map(|_| PIECES[rng.gen_range(0..PIECES.len())]).collect()
}

fn tooling() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..100_000 {
        let text = fuzz_input(&mut rng);
        let outcome = std::panic::catch_unwind(|| parse(&text).map_err(Box::new));
        match outcome {
            Err(_) => return Err(format!("parser panicked on {text:?}")),
            Ok(Err(err)) => {
                if let Error::Parse(e) = &*err {
                    if e.position > text.len() {
                        return Err(format!("position {} past end of {text:?}", e.position));
                    }
                }
            }
            Ok(Ok(_)) => {}
        }
    }
    for _ in 0..1000 {
        let e = random_expr(&mut rng, 6);
        let text = print_expr(&e);
        if parse(&text).ok().as_ref() != Some(&e) {
            return Err(format!("round trip failed on {text}"));
        }
    }
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_goi"))
        .args(["check", "--law", "all"])
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("goi check --law all: {}", String::from_utf8_lossy(&status.stdout)));
    }
    let time = within(start, Duration::from_secs(300))?;
    Ok(format!("fuzz 100000, round trip 1000, check --law all in {time}"))
}

fn main() {
    let criteria: &[Criterion] = &[
        ("dynamical algebra relations on [0, 10^5)", dynamical_algebra),
        ("pairing, psi round trips and no residue", pairing_and_psi),
        ("pentagon and hexagon for star and odot", coherence),
        ("star agrees with its join form", star_equals_join),
        ("bang agrees with its 13-term join", bang_as_join),
        ("fixed point f * !f = !f", fixed_point),
        ("bang is a homomorphism", bang_homomorphism),
        ("whimper conjugation and r-relations", whimper_and_copies),
        ("inverse axioms and order coincidence", inverse_category),
        ("execution formula", execution),
        ("parser fuzz, round trip and goi check", tooling),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}  ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  ({why})");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
