//! `goi`: evaluate terms over partial injections, check algebraic laws,
//! trace the execution formula, or explore interactively.

use std::io::{self, BufRead, IsTerminal, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use goi_core::expr::{eval_in, parse, print_expr, Env};
use goi_core::goi::exec_trace;
use goi_core::lawcheck::{find_law, registry, run_spec, LawReport, DEFAULT_SAMPLES};
use goi_core::{Error, EvalError, Nat, PartialInjection};
use serde_json::{json, Value};

const TERM_HELP: &str = "\
Term syntax, loosest binding first:
  a + b        join
  a . b        composition, a after b
  a * b, a & b tensor (star) and exponential tensor (odot)
  !a, ?a       bang and whimper
  a~, a^k      generalized inverse and k-th power
Atoms: p q id zero succ tau sigma tau2 sigma2, r(j), ex(term),
and literal maps such as {0->3, 1->5}. Binary operators associate left.";

#[derive(Parser)]
#[command(name = "goi", version, about = "Partial injections and the geometry of interaction", after_help = TERM_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a term on the inputs 0..bound.
    #[command(after_help = TERM_HELP)]
    Eval {
        expr: String,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Check one law, or every law, on generators and seeded random maps.
    Check {
        #[arg(long, default_value = "all")]
        law: String,
        /// Input prefix to check; each law has its own default.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        bound: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Run the execution formula on one input and show the token path.
    #[command(after_help = TERM_HELP)]
    Exec {
        expr: String,
        #[arg(long)]
        input: Nat,
        #[arg(long, default_value_t = 1000)]
        max_steps: u64,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Read terms and `let name = term` bindings from standard input.
    #[command(after_help = TERM_HELP)]
    Repl {
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
}

/// Failures mapped onto exit codes: 1 for evaluation and law failures, 2 for bad input.
enum Failure {
    Eval(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Eval(_) | Error::NoResidue { .. } | Error::Structure(_) => Failure::Eval(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Eval(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Eval(format!("i/o: {e}"))
    }
}

fn number(n: &Nat) -> Value {
    Value::Number(n.to_string().parse().expect("decimal digits form a JSON number"))
}

fn show(v: &Option<Nat>) -> String {
    v.as_ref().map_or_else(|| "⊥".to_string(), Nat::to_string)
}

fn compile(text: &str, env: &Env) -> Result<PartialInjection, Failure> {
    Ok(eval_in(&parse(text)?, env)?)
}

fn table(f: &PartialInjection, bound: u64) -> Result<Vec<(u64, Option<Nat>)>, EvalError> {
    (0..bound).map(|n| Ok((n, f.apply(&Nat::from(n))?))).collect()
}

fn write_tsv(out: &mut impl Write, rows: &[(u64, Option<Nat>)]) -> io::Result<()> {
    writeln!(out, "n\tvalue")?;
    for (n, v) in rows {
        writeln!(out, "{n}\t{}", show(v))?;
    }
    Ok(())
}

fn cmd_eval(expr: &str, bound: u64, format: Format) -> Result<bool, Failure> {
    let f = compile(expr, &Env::new())?;
    let rows = table(&f, bound)?;
    let mut out = io::stdout().lock();
    match format {
        Format::Tsv => write_tsv(&mut out, &rows)?,
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(n, v)| json!([n, v.as_ref().map_or(Value::Null, number)]))
                .collect();
            writeln!(out, "{}", json!({ "expr": expr, "bound": bound, "values": values }))?;
        }
    }
    Ok(true)
}

fn report_tsv(out: &mut impl Write, r: &LawReport) -> io::Result<()> {
    let verdict = if r.holds() { "ok" } else { "FAIL" };
    writeln!(
        out,
        "{}\t{verdict}\t{}\tbound={}\tsamples={}\tseed={}\t{}ms",
        r.law,
        r.outcome,
        r.bound,
        r.samples,
        r.seed,
        r.elapsed.as_millis()
    )?;
    for w in &r.witnesses {
        write!(out, "  {}\t[{}]\tat {}", w.equation, w.inputs.join(", "), w.point)?;
        match &w.error {
            Some(e) => writeln!(out, "\terror: {e}")?,
            None => writeln!(out, "\t{} vs {}", show(&w.lhs), show(&w.rhs))?,
        }
    }
    Ok(())
}

fn cmd_check(law: &str, bound: Option<u64>, samples: u64, seed: u64, format: Format) -> Result<bool, Failure> {
    let specs = if law == "all" { registry() } else { vec![find_law(law)?] };
    let mut out = io::stdout().lock();
    let mut all_hold = true;
    let mut reports = Vec::new();
    for spec in &specs {
        let report = run_spec(spec, bound.unwrap_or(spec.default_bound), samples, seed)?;
        all_hold &= report.holds();
        match format {
            Format::Tsv => report_tsv(&mut out, &report)?,
            Format::Json => reports.push(report.to_json()),
        }
    }
    match format {
        Format::Tsv => writeln!(out, "{}", if all_hold { "all laws hold" } else { "some laws FAIL" })?,
        Format::Json => writeln!(out, "{}", json!({ "ok": all_hold, "reports": reports }))?,
    }
    Ok(all_hold)
}

fn cmd_exec(expr: &str, input: &Nat, max_steps: u64, format: Format) -> Result<bool, Failure> {
    let f = compile(expr, &Env::new())?;
    let run = exec_trace(&f, input, max_steps)?;
    let diverged = matches!(run.outcome, goi_core::ExecOutcome::Diverged);
    let mut out = io::stdout().lock();
    match format {
        Format::Tsv => {
            let path: Vec<String> = run.trace.iter().map(Nat::to_string).collect();
            writeln!(out, "trace\t{}", path.join(" "))?;
            writeln!(out, "outcome\t{}", run.outcome)?;
        }
        Format::Json => {
            let trace: Vec<Value> = run.trace.iter().map(number).collect();
            let doc = json!({
                "expr": expr,
                "input": number(input),
                "max_steps": max_steps,
                "trace": trace,
                "outcome": run.outcome.to_string(),
            });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(!diverged)
}

fn repl_line(line: &str, env: &mut Env, bound: &mut u64, out: &mut impl Write) -> Result<bool, Failure> {
    if line == ":quit" || line == ":q" {
        return Ok(false);
    }
    if line == ":help" {
        writeln!(out, "{TERM_HELP}\nCommands: let NAME = TERM, :bound N, :quit")?;
    } else if let Some(arg) = line.strip_prefix(":bound") {
        match arg.trim().parse::<u64>() {
            Ok(n) if n >= 1 => *bound = n,
            _ => return Err(Failure::Usage(format!("bad bound {:?}", arg.trim()))),
        }
    } else if let Some(rest) = line.strip_prefix("let ") {
        let (name, term) = rest
            .split_once('=')
            .ok_or_else(|| Failure::Usage("expected `let NAME = TERM`".into()))?;
        let name = name.trim();
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Failure::Usage(format!("bad name {name:?}")));
        }
        let e = parse(term.trim())?;
        let f = eval_in(&e, env)?;
        env.insert(name.to_string(), f);
        writeln!(out, "{name} = {}", print_expr(&e))?;
    } else {
        let f = compile(line, env)?;
        write_tsv(out, &table(&f, *bound)?)?;
    }
    Ok(true)
}

fn cmd_repl(mut bound: u64) -> Result<bool, Failure> {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut env = Env::new();
    let mut out = io::stdout().lock();
    let mut clean = true;
    loop {
        if interactive {
            write!(out, "goi> ")?;
            out.flush()?;
        }
        let mut line = String::new();
        if stdin.lock().read_line(&mut line)? == 0 {
            break;
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match repl_line(line, &mut env, &mut bound, &mut out) {
            Ok(true) => {}
            Ok(false) => break,
            Err(Failure::Eval(msg) | Failure::Usage(msg)) => {
                clean = false;
                eprintln!("error: {msg}");
            }
        }
    }
    Ok(clean || interactive)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval { expr, bound, format } => cmd_eval(expr, *bound, *format),
        Command::Check { law, bound, samples, seed, format } => cmd_check(law, *bound, *samples, *seed, *format),
        Command::Exec { expr, input, max_steps, format } => cmd_exec(expr, input, *max_steps, *format),
        Command::Repl { bound } => cmd_repl(*bound),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Eval(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
