//! `cohere`: coherence checks, extension intervals and Frank t-norm
//! utilities over exact rationals.
//!
//! Exit codes: 0 success (coherent), 1 incoherent, 2 input error.

mod problem;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use coherence::closed_form::{lambda_solution_tl, lambda_solution_tm, tl_case, TlCase};
use coherence::engine::{check_coherence, dutch_book_gains, extension_interval, value_table};
use coherence::frank::{
    frechet_bounds_conjunction, frechet_bounds_disjunction, solve_lambda, tconorm, tnorm, FrankParameter, Uniqueness,
};
use coherence::{parse_rational, Assessment, Rational};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use problem::Problem;
use report::{exact, Exact, Render};

#[derive(Parser)]
#[command(
    name = "cohere",
    version,
    about = "Exact coherence checking for conditional previsions"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Fractional digits for decimal approximations.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide coherence of the problem's assessment.
    Check {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Coherent extension interval of one quantity given the others.
    Extend {
        #[arg(long)]
        problem: PathBuf,
        /// Quantity to extend to (defaults to `query.quantity`).
        #[arg(long)]
        quantity: Option<String>,
    },
    /// Fréchet–Hoeffding bounds for the conjunction and disjunction.
    Bounds {
        #[arg(long)]
        problem: Option<PathBuf>,
        values: Vec<String>,
    },
    /// Frank t-norm T_λ.
    Tnorm {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        problem: Option<PathBuf>,
        values: Vec<String>,
    },
    /// Frank t-conorm S_λ.
    Tconorm {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        problem: Option<PathBuf>,
        values: Vec<String>,
    },
    /// Frank parameter λ with T_λ(values) = target.
    SolveLambda {
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        problem: Option<PathBuf>,
        values: Vec<String>,
    },
    /// Boundary solution Λ at the Lukasiewicz (default) or minimum bound.
    LambdaSolution {
        /// `lukasiewicz` or `min`.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        problem: Option<PathBuf>,
        values: Vec<String>,
    },
    /// Value table of a quantity over its constituents.
    Table {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        quantity: Option<String>,
    },
}

/// Outcome of a command: a report and whether it signals incoherence.
struct Outcome {
    text: String,
    json: serde_json::Value,
    incoherent: bool,
}

fn outcome<R: Render + Serialize>(report: &R, precision: usize, incoherent: bool) -> Result<Outcome> {
    Ok(Outcome {
        text: report.render(precision),
        json: serde_json::to_value(report)?,
        incoherent,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("reports serialize") + "\n"
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.incoherent {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let p = cli.precision;
    match &cli.command {
        Command::Check { problem } => {
            let (names, assessment) = Problem::load(problem)?.assessment(None)?;
            check(names, &assessment, p)
        }
        Command::Extend { problem, quantity } => extend(&Problem::load(problem)?, quantity.as_deref(), p),
        Command::Bounds { problem, values } => {
            let xs = values_arg(values, problem.as_ref())?;
            let (cl, cu) = frechet_bounds_conjunction(&xs)?;
            let (dl, du) = frechet_bounds_disjunction(&xs)?;
            let r = report::BoundsReport {
                values: exact(&xs),
                conjunction: report::Interval {
                    lower: Exact(cl),
                    upper: Exact(cu),
                },
                disjunction: report::Interval {
                    lower: Exact(dl),
                    upper: Exact(du),
                },
            };
            outcome(&r, p, false)
        }
        Command::Tnorm {
            lambda,
            problem,
            values,
        } => norm(false, lambda.as_deref(), values, problem.as_ref(), p),
        Command::Tconorm {
            lambda,
            problem,
            values,
        } => norm(true, lambda.as_deref(), values, problem.as_ref(), p),
        Command::SolveLambda {
            target,
            problem,
            values,
        } => {
            let loaded = problem.as_deref().map(Problem::load).transpose()?;
            let xs = values_from(values, loaded.as_ref())?;
            let target = match (target, loaded.as_ref().and_then(|q| q.query.target.as_ref())) {
                (Some(t), _) => parse_rational(t).with_context(|| format!("invalid target `{t}`"))?,
                (None, Some(t)) => t.parse()?,
                (None, None) => bail!("a --target value is required"),
            };
            let fit = solve_lambda(&xs, &target)?;
            let r = report::SolveReport {
                values: exact(&xs),
                target: Exact(target),
                lambda: fit.parameter.to_string(),
                unique: fit.uniqueness == Uniqueness::Unique,
            };
            outcome(&r, p, false)
        }
        Command::LambdaSolution {
            lambda,
            problem,
            values,
        } => {
            let loaded = problem.as_deref().map(Problem::load).transpose()?;
            let xs = values_from(values, loaded.as_ref())?;
            let param = parameter(lambda.as_deref(), loaded.as_ref(), FrankParameter::Lukasiewicz)?;
            lambda_solution(param, &xs, p)
        }
        Command::Table { problem, quantity } => table(&Problem::load(problem)?, quantity.as_deref(), p),
    }
}

fn parse_values(values: &[String]) -> Result<Vec<Rational>> {
    values
        .iter()
        .map(|v| parse_rational(v).with_context(|| format!("invalid rational `{v}`")))
        .collect()
}

fn values_from(values: &[String], problem: Option<&Problem>) -> Result<Vec<Rational>> {
    if !values.is_empty() {
        return parse_values(values);
    }
    match problem.and_then(|p| p.query.values.as_ref()) {
        Some(vs) => vs.iter().map(|v| v.parse()).collect(),
        None => bail!("no values given"),
    }
}

fn values_arg(values: &[String], problem: Option<&PathBuf>) -> Result<Vec<Rational>> {
    let loaded = problem.map(|p| Problem::load(p)).transpose()?;
    values_from(values, loaded.as_ref())
}

fn parameter(flag: Option<&str>, problem: Option<&Problem>, default: FrankParameter) -> Result<FrankParameter> {
    match flag.or_else(|| problem.and_then(|p| p.query.lambda.as_deref())) {
        Some(text) => text
            .parse::<FrankParameter>()
            .map_err(|e| anyhow::anyhow!("invalid λ `{text}`: {e}")),
        None => Ok(default),
    }
}

fn check(names: Vec<String>, assessment: &Assessment, p: usize) -> Result<Outcome> {
    let verdict = check_coherence(assessment);
    let named = |ids: &[usize]| ids.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
    let trace = verdict
        .trace
        .iter()
        .map(|level| report::Level {
            members: named(&level.members),
            constituents: level.constituents.clone(),
            solution: level.solution.as_deref().map(exact),
            masses: exact(&level.masses),
            zero_set: named(&level.zero_set),
        })
        .collect();
    let dutch_book = verdict.dutch_book.as_ref().map(|book| report::Book {
        members: named(&book.members),
        stakes: exact(&book.stakes),
        gains: dutch_book_gains(assessment, book)
            .into_iter()
            .map(|(constituent, g)| report::Gain {
                constituent,
                gain: Exact(g),
            })
            .collect(),
    });
    let r = report::CheckReport {
        verdict: if verdict.coherent { "coherent" } else { "incoherent" }.into(),
        family: names,
        values: exact(assessment.values()),
        trace,
        dutch_book,
    };
    outcome(&r, p, !verdict.coherent)
}

fn target_name<'a>(problem: &'a Problem, flag: Option<&'a str>) -> Result<&'a str> {
    flag.or(problem.query.quantity.as_deref())
        .context("no quantity given (use --quantity or query.quantity)")
}

fn extend(problem: &Problem, quantity: Option<&str>, p: usize) -> Result<Outcome> {
    let name = target_name(problem, quantity)?;
    let target = problem.quantity(name)?;
    let (names, base) = problem.assessment(Some(name))?;
    if !check_coherence(&base).coherent {
        eprintln!("the base assessment is not coherent; no extension exists");
        return check(names, &base, p);
    }
    let iv = extension_interval(&base, target)?;
    let r = report::ExtendReport {
        quantity: name.to_string(),
        base: names,
        lower: Exact(iv.lower),
        upper: Exact(iv.upper),
        exact: iv.exact,
    };
    outcome(&r, p, false)
}

fn norm(conorm: bool, lambda: Option<&str>, values: &[String], problem: Option<&PathBuf>, p: usize) -> Result<Outcome> {
    let loaded = problem.map(|p| Problem::load(p)).transpose()?;
    let xs = values_from(values, loaded.as_ref())?;
    let param = parameter(lambda, loaded.as_ref(), FrankParameter::Product)?;
    let eval_exact = |xs: &[Rational]| if conorm { tconorm(param, xs) } else { tnorm(param, xs) };
    let (result, decimal) = match param {
        FrankParameter::Generic(_) => {
            let floats: Vec<f64> = xs.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
            let v = if conorm {
                tconorm(param, &floats)?
            } else {
                tnorm(param, &floats)?
            };
            (None, format!("{v:.p$}"))
        }
        _ => {
            let v = eval_exact(&xs)?;
            let d = coherence::scalar::to_decimal_string(&v, p);
            (Some(Exact(v)), d)
        }
    };
    let r = report::NormReport {
        operation: if conorm { "S" } else { "T" }.into(),
        lambda: param.to_string(),
        values: exact(&xs),
        result,
        decimal,
    };
    outcome(&r, p, false)
}

fn lambda_solution(param: FrankParameter, xs: &[Rational], p: usize) -> Result<Outcome> {
    if xs.is_empty() {
        bail!("no values given");
    }
    if let Some(x) = xs.iter().find(|x| **x < Rational::zero() || **x > Rational::one()) {
        bail!("value {x} is outside [0,1]");
    }
    let components = |l: &coherence::closed_form::LambdaVector<Rational>| {
        l.display_order()
            .into_iter()
            .map(|(s, v)| report::Component {
                signature: s.to_string(),
                value: Exact(v),
            })
            .collect::<Vec<_>>()
    };
    let r = match param {
        FrankParameter::Lukasiewicz => {
            let (case, _) = tl_case(xs);
            let l = lambda_solution_tl(xs);
            report::LambdaReport {
                bound: "lukasiewicz".into(),
                values: exact(xs),
                conjunction: Exact(tnorm(param, xs)?),
                case: Some(
                    match case {
                        TlCase::A => "a",
                        TlCase::B => "b",
                        TlCase::C => "c",
                        TlCase::D => "d",
                        TlCase::E => "e",
                        TlCase::F => "f",
                    }
                    .into(),
                ),
                order: None,
                components: components(&l),
            }
        }
        FrankParameter::Min => {
            let (l, perm) = lambda_solution_tm(xs);
            report::LambdaReport {
                bound: "min".into(),
                values: exact(xs),
                conjunction: Exact(tnorm(param, xs)?),
                case: None,
                order: Some(perm.iter().map(|i| i + 1).collect()),
                components: components(&l),
            }
        }
        other => bail!("boundary solutions exist for λ = min or lukasiewicz, not {other}"),
    };
    outcome(&r, p, false)
}

fn table(problem: &Problem, quantity: Option<&str>, p: usize) -> Result<Outcome> {
    let name = target_name(problem, quantity)?;
    let q = problem.quantity(name)?;
    let generators = q
        .generators()
        .iter()
        .map(|g| {
            problem
                .quantities
                .iter()
                .find(|(_, c)| c.generators().len() == 1 && &c.generators()[0] == g)
                .map_or_else(|| "?".to_string(), |(n, _)| n.clone())
        })
        .collect();
    let rows = value_table(q)
        .into_iter()
        .map(|row| report::Row {
            constituent: row.constituent.label(),
            value: row.value.map(Exact),
        })
        .collect();
    let r = report::TableReport {
        quantity: name.to_string(),
        generators,
        rows,
    };
    outcome(&r, p, false)
}
