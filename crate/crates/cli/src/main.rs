use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gjp::bench::{self, RunRow, RunStatus, HEADER};
use gjp::domains::{self, BenchSet};
use gjp::parser::{parse_domain, parse_formula, parse_problem, parse_trace};
use gjp::perspective::justified_perspective;
use gjp::planner::{Domain, SearchLimits};
use gjp::{Evaluator, ParseError, Signature, StateSequence};

const EXIT_PARSE: u8 = 2;
const EXIT_UNSOLVABLE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "gjp", version, about = "Epistemic planning with justified perspectives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Set {
    Number,
    Grapevine,
    Bbl,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a shortest plan.
    Solve {
        domain: PathBuf,
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        /// Overrides the problem's own `max-depth` (default 12).
        #[arg(long)]
        max_depth: Option<usize>,
        /// Give up after generating this many nodes.
        #[arg(long)]
        max_generated: Option<u64>,
        /// Accepted for harness compatibility; search is deterministic.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate a formula at the end of a trace.
    Eval {
        domain: PathBuf,
        trace: PathBuf,
        formula: String,
        /// Also print every agent's justified perspective.
        #[arg(long)]
        explain: bool,
    },
    /// Run the shipped benchmark instances.
    Bench {
        #[arg(value_enum)]
        set: Set,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        /// Overrides the per-set generation budget.
        #[arg(long)]
        max_generated: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(path: &Path, err: ParseError) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: format!("{}:{err}", path.display()),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::internal(format!("cannot read {}: {e}", path.display())))
}

fn load_domain(path: &Path) -> Result<Domain, Failure> {
    parse_domain(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::internal(e.to_string()))
}

fn solve(
    domain: &Path,
    problem: &Path,
    format: Format,
    max_depth: Option<usize>,
    max_generated: Option<u64>,
) -> Result<u8, Failure> {
    let d = load_domain(domain)?;
    let mut p = parse_problem(&read(problem)?, &d).map_err(|e| Failure::parse(problem, e))?;
    if max_depth.is_some() {
        p.max_depth = None;
    }
    let limits = SearchLimits {
        max_depth: max_depth.unwrap_or(SearchLimits::default().max_depth),
        max_generated,
    };
    let row = bench::run_problem(&d, &p.name, &p, limits);
    match format {
        Format::Json => println!("{}", json(&row)?),
        Format::Tsv => {
            match (&row.status, &row.plan) {
                (RunStatus::Solved, Some(plan)) => {
                    println!("plan {}", plan.len());
                    for (k, a) in plan.iter().enumerate() {
                        println!("{}\t{a}", k + 1);
                    }
                }
                (RunStatus::Budget, _) => println!("BUDGET EXHAUSTED"),
                _ => println!("UNSOLVABLE"),
            }
            println!("{}", HEADER.join("\t"));
            println!("{}", row.tsv());
        }
    }
    Ok(if row.status == RunStatus::Solved { 0 } else { EXIT_UNSOLVABLE })
}

fn table(sig: &Signature, title: &str, seq: &StateSequence) -> String {
    let mut out = format!("{title}\nt");
    for v in sig.vars() {
        if sig.var(v).agent.is_none() {
            write!(out, "\t{}", sig.var_name(v)).unwrap();
        }
    }
    for (t, s) in seq.iter().enumerate() {
        write!(out, "\n{t}").unwrap();
        for v in sig.vars().filter(|v| sig.var(*v).agent.is_none()) {
            let cell = s.get(v).map_or_else(|| "-".to_string(), |x| sig.fmt_value(x));
            write!(out, "\t{cell}").unwrap();
        }
    }
    out
}

fn eval(domain: &Path, trace: &Path, formula: &str, explain: bool) -> Result<u8, Failure> {
    let d = load_domain(domain)?;
    let t = parse_trace(&read(trace)?, &d).map_err(|e| Failure::parse(trace, e))?;
    let seq = t.sequence(&d).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", trace.display()),
    })?;
    let phi = parse_formula(formula, &d.sig).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("formula:{e}"),
    })?;
    let value = Evaluator::new(&*d.model, &d.sig).eval(&seq, &phi);
    println!("{value}");
    if explain {
        println!("\n{}", table(&d.sig, "global", &seq));
        for a in d.sig.agents() {
            let w = justified_perspective(&*d.model, a, &seq);
            println!("\n{}", table(&d.sig, &format!("perspective {}", d.sig.agent_name(a)), &w));
        }
    }
    Ok(0)
}

fn bench_cmd(set: Set, format: Format, max_generated: Option<u64>) -> Result<u8, Failure> {
    let sets: Vec<BenchSet> = match set {
        Set::Number => vec![BenchSet::Number],
        Set::Grapevine => vec![BenchSet::Grapevine],
        Set::Bbl => vec![BenchSet::Bbl],
        Set::All => BenchSet::ALL.to_vec(),
    };
    let mut rows: Vec<RunRow> = Vec::new();
    let mut failed = false;
    if let Format::Tsv = format {
        println!("{}", HEADER.join("\t"));
    }
    for s in sets {
        let d = bench::domain(s).map_err(|e| Failure::internal(format!("built-in {s} domain: {e}")))?;
        let mut limits = bench::default_limits(s);
        if max_generated.is_some() {
            limits.max_generated = max_generated;
        }
        for inst in domains::instances(s) {
            match bench::run_instance(&d, &inst, limits) {
                Ok(row) => {
                    if let Format::Tsv = format {
                        println!("{}", row.tsv());
                    }
                    rows.push(row);
                }
                Err(e) => {
                    eprintln!("{}: {e}", inst.id);
                    failed = true;
                }
            }
        }
    }
    if let Format::Json = format {
        println!("{}", json(&rows)?);
    }
    Ok(if failed { EXIT_INTERNAL } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            domain,
            problem,
            format,
            max_depth,
            max_generated,
            seed: _,
        } => solve(&domain, &problem, format, max_depth, max_generated),
        Command::Eval {
            domain,
            trace,
            formula,
            explain,
        } => eval(&domain, &trace, &formula, explain),
        Command::Bench {
            set,
            format,
            max_generated,
        } => bench_cmd(set, format, max_generated),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
