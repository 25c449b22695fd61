use rand::seq::SliceRandom;
use rand::Rng;

use super::eval::BUILTINS;
use super::Expr;
use crate::Nat;

/// Draws a term of depth at most `depth` over the builtin atoms.
///
/// Literals are injective and small, `r(j)` and powers use small indices,
/// so every result parses back and most evaluate quickly.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Expr {
    if depth <= 1 || rng.gen_ratio(1, 4) {
        return leaf(rng);
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..10) {
        0 => Expr::Inverse(sub(rng)),
        1 => Expr::Power(sub(rng), rng.gen_range(0..4)),
        2 => Expr::Bang(sub(rng)),
        3 => Expr::Whimper(sub(rng)),
        4 => Expr::Compose(sub(rng), sub(rng)),
        5 => Expr::Star(sub(rng), sub(rng)),
        6 => Expr::Odot(sub(rng), sub(rng)),
        7 => Expr::Join(sub(rng), sub(rng)),
        8 => Expr::Exec(sub(rng)),
        _ => leaf(rng),
    }
}

fn leaf<R: Rng + ?Sized>(rng: &mut R) -> Expr {
    match rng.gen_range(0..8) {
        0 => Expr::RGen(rng.gen_range(0..8)),
        1 => {
            let size: u64 = rng.gen_range(1..5);
            let mut outs: Vec<u64> = (0..16).collect();
            outs.shuffle(rng);
            let pairs = (0..size)
                .zip(outs)
                .map(|(i, o)| (Nat::from(i * 3), Nat::from(o)))
                .collect();
            Expr::FiniteLit(pairs)
        }
        _ => Expr::atom(BUILTINS.choose(rng).expect("builtins are non-empty")),
    }
}
