use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use theta_adhm::adhm::{Mode, DEFAULT_MAX_DEGREE, DEFAULT_TERM_CAP};
use theta_adhm::parse::{ParseContext, Value};
use theta_adhm::reduce::{self, ReduceError};
use theta_adhm::suites::{self, SuiteConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Exact verifier for theta-deformed instanton identities.
#[derive(Parser)]
#[command(name = "theta-adhm", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        /// basic, twistor, asd, monad, qgroup, charge-one-family, gauge, count or all
        suite: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: u32,
        /// Specialise to the commutative case mu = 1.
        #[arg(long)]
        theta_zero: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_TERM_CAP)]
        term_cap: usize,
        /// Only the Sp(2) quotient checks of the qgroup suite.
        #[arg(long)]
        sp: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the normal form of an expression.
    Reduce {
        /// C4, S7, S4, CP3, SL2H, Sp2 or monad(k)
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        expr: String,
        /// Degree bound for completing ideals that are not precomputed;
        /// defaults to the input degree plus four.
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        theta_zero: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), u8> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| {
            eprintln!("cannot write {}: {e}", p.display());
            EXIT_USAGE
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, u8> {
    match cli.cmd {
        Cmd::Verify { suite, k, mode, max_degree, theta_zero, json, term_cap, sp, out } => {
            let cfg = SuiteConfig { k, mode, max_degree, theta_zero, term_cap, sp };
            let rep = suites::run_suite(&suite, &cfg).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_USAGE
            })?;
            let mut text = if json { rep.to_json() } else { rep.to_text() };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            emit(&text, &out)?;
            Ok(if rep.budget_exhausted {
                EXIT_BUDGET
            } else if rep.passed() {
                0
            } else {
                EXIT_FAIL
            })
        }
        Cmd::Reduce { algebra, expr, max_degree, theta_zero, json, out } => {
            let mut ctx = ParseContext::named_algebra(&algebra, theta_zero).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_USAGE
            })?;
            let value = ctx.parse(&expr).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_USAGE
            })?;
            if !ctx.ideal.completed && !ctx.ideal.relations.is_empty() {
                let deg = match &value {
                    Value::Elem(e) => e.degree(),
                    Value::Form(f) => f.terms().iter().map(|((m, _), _)| ctx.spec.mono_degree(m)).max().unwrap_or(0),
                };
                let bound = max_degree.unwrap_or(deg + 4);
                ctx.ideal = reduce::groebner(&ctx.ideal.clone().with_max_degree(bound)).map_err(|e| {
                    eprintln!("error: {e}");
                    if matches!(e, ReduceError::DegreeBudget(_)) {
                        EXIT_BUDGET
                    } else {
                        EXIT_USAGE
                    }
                })?;
            }
            let nf = match &value {
                Value::Elem(e) => Value::Elem(reduce::normal_form(e, &ctx.ideal)),
                Value::Form(f) => Value::Form(f.reduce_coeffs(&ctx.ideal)),
            };
            let is_zero = match &nf {
                Value::Elem(e) => e.is_zero(),
                Value::Form(f) => f.is_zero(),
            };
            let text = if json {
                let v = json!({
                    "algebra": ctx.name,
                    "input": expr,
                    "normalForm": nf.to_string(),
                    "isZero": is_zero,
                    "degreeBound": ctx.ideal.max_degree,
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
            } else {
                format!("{nf}\n")
            };
            emit(&text, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli).unwrap_or_else(|c| c))
}
