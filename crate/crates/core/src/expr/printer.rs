use std::fmt::Write;

use super::Expr;

/// Renders with the fewest parentheses that parse back to the same tree.
pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(&mut out, e, 0);
    out
}

fn write_expr(out: &mut String, e: &Expr, min_prec: u8) {
    let wrap = e.precedence() < min_prec;
    if wrap {
        out.push('(');
    }
    let prec = e.precedence();
    match e {
        Expr::Atom(name) => out.push_str(name),
        Expr::RGen(j) => {
            let _ = write!(out, "r({j})");
        }
        Expr::FiniteLit(pairs) => {
            out.push('{');
            for (i, (a, b)) in pairs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{a}->{b}");
            }
            out.push('}');
        }
        Expr::Inverse(a) => {
            write_expr(out, a, prec);
            out.push('~');
        }
        Expr::Power(a, k) => {
            write_expr(out, a, prec);
            let _ = write!(out, "^{k}");
        }
        Expr::Bang(a) | Expr::Whimper(a) => {
            out.push(if matches!(e, Expr::Bang(_)) { '!' } else { '?' });
            write_expr(out, a, prec);
        }
        Expr::Exec(a) => {
            out.push_str("ex(");
            write_expr(out, a, 0);
            out.push(')');
        }
        Expr::Compose(a, b) | Expr::Star(a, b) | Expr::Odot(a, b) | Expr::Join(a, b) => {
            let op = match e {
                Expr::Compose(..) => " . ",
                Expr::Star(..) => " * ",
                Expr::Odot(..) => " & ",
                _ => " + ",
            };
            write_expr(out, a, prec);
            out.push_str(op);
            write_expr(out, b, prec + 1);
        }
    }
    if wrap {
        out.push(')');
    }
}
