use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::goi;
use crate::pinj::PartialInjection;

use super::Expr;

/// User bindings, consulted before the builtins.
pub type Env = HashMap<String, PartialInjection>;

pub const BUILTINS: &[&str] = &["p", "q", "id", "zero", "succ", "tau", "sigma", "tau2", "sigma2"];

pub fn builtin(name: &str) -> Option<PartialInjection> {
    Some(match name {
        "p" => goi::gen_p(),
        "q" => goi::gen_q(),
        "id" => PartialInjection::identity(),
        "zero" => PartialInjection::zero(),
        "succ" => goi::succ(),
        "tau" => goi::tau_star(),
        "sigma" => goi::sigma_star(),
        "tau2" => goi::tau_odot(),
        "sigma2" => goi::sigma_odot(),
        _ => return None,
    })
}

pub fn eval_expr(e: &Expr) -> Result<PartialInjection> {
    eval_in(e, &Env::new())
}

pub fn eval_in(e: &Expr, env: &Env) -> Result<PartialInjection> {
    let ev = |x: &Expr| eval_in(x, env);
    Ok(match e {
        Expr::Atom(name) => env
            .get(name)
            .cloned()
            .or_else(|| builtin(name))
            .ok_or_else(|| Error::UnknownAtom(name.clone()))?,
        Expr::RGen(j) => goi::r_gen(*j),
        Expr::FiniteLit(pairs) => PartialInjection::finite(pairs.iter().cloned())?,
        Expr::Inverse(a) => ev(a)?.inverse(),
        Expr::Power(a, k) => ev(a)?.power(*k),
        Expr::Bang(a) => goi::bang(&ev(a)?),
        Expr::Whimper(a) => goi::whimper(&ev(a)?),
        Expr::Compose(a, b) => ev(a)?.compose(&ev(b)?),
        Expr::Star(a, b) => goi::star(&ev(a)?, &ev(b)?),
        Expr::Odot(a, b) => goi::odot(&ev(a)?, &ev(b)?),
        Expr::Join(a, b) => ev(a)?.join(&ev(b)?)?,
        Expr::Exec(a) => goi::exec(&ev(a)?),
    })
}
