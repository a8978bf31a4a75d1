//! `itercurves`: command-line access to the library.
//!
//! Exit status 0 means the computation ran, whatever a verification found.
//! Mathematical errors exit 1 and carry a stable code; usage errors exit 2.

mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use itercurves::exact::parse_rat;
use itercurves::{BigRat, Limits};

/// Version of the JSON layout emitted under `--json`.
pub const SCHEMA: &str = "itercurves/1";

#[derive(Parser, Debug)]
#[command(name = "itercurves", version, about = "Iterates of x^2 + c: Galois stages, curves, point counts")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest polynomial degree to expand.
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    /// Largest field size to enumerate.
    #[arg(long, global = true)]
    q_width: Option<u64>,
    /// Add the wall time to the report (makes the output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

pub fn rational(s: &str) -> Result<BigRat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Critical orbit f(0), ..., f^n(0).
    Orbit {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: BigRat,
        #[arg(long)]
        n: usize,
    },
    /// Stage-by-stage maximality of G_n(f_c).
    Stages {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: BigRat,
        #[arg(long)]
        n: usize,
    },
    /// Values c for which G_n(f_c) first becomes small at stage n.
    Scan {
        #[arg(long)]
        n: usize,
        /// Integers with |c| <= bound.
        #[arg(long, conflicts_with = "height", required_unless_present = "height")]
        int_bound: Option<u64>,
        /// Rationals of height <= H.
        #[arg(long)]
        height: Option<u64>,
    },
    /// Build a curve and print its model.
    Curve(CurveArgs),
    /// Number of points over F_{p^m}.
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Characteristic polynomial of Frobenius at p.
    Charpoly {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
    },
    /// Exact checks of individual statements.
    #[command(subcommand)]
    Verify(Verify),
    /// Integer points by Runge's method.
    Runge {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Rational points up to a height.
    Points {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        height: u64,
    },
    /// gcd of p^(2^n) + 1 over the given primes.
    GcdBound {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "5,13")]
        primes: Vec<u64>,
    },
    /// Height inequality and square witnesses for c = 3.
    MordellScan,
    /// Points, Runge and local obstructions for F_1 .. F_7.
    S4Survey {
        #[arg(long, default_value_t = 100)]
        height: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Frobenius polynomial of B_n at c = -2 against t^(2^n) + p^(2^(n-1)).
    Chebyshev {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
    /// chi(C_n) = prod chi(B_m) over m < n.
    Decomp {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: BigRat,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
    /// The point bijection between B_n^+ and B_n^- over F_{p^m}.
    Bijection {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// #(y^2 = x(x^(2^(n+1)) + 1))(F_{p^m}) = p^m + 1 for m < 2^n.
    Charsum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
    /// Expansion of 1/sqrt(h) for F_1' and the formal integrals.
    Series {
        #[arg(long, default_value_t = 7)]
        order: usize,
    },
    /// The [sqrt -2] map identities on B_1 and B_1^-.
    Cm,
    /// disc(f^m) against the recurrence.
    Disc {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        c: BigRat,
        #[arg(long)]
        m: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// y^2 = f^n(x)
    C,
    /// y^2 = (x - c) f^n(x)
    B,
    /// y^2 = (x + 2) f^n(x) at c = -2
    BPlus,
    /// y^2 = (x - 2) f^n(x) at c = -2
    BMinus,
    /// y^2 = x (x^(2^n) + 1)
    Frak,
    F0,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    /// F_1 after x -> -x - 2
    F1Prime,
    /// f^n at c = -31/48 times the first 4-cycle factor
    AAlpha,
    /// f^n at c = -31/48 times the second 4-cycle factor
    ABeta,
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: Option<BigRat>,
    #[arg(long)]
    n: Option<u32>,
    /// Quadratic twist by this squarefree integer.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    twist: Option<BigRat>,
}

/// Everything a command produces.
pub struct Output {
    pub inputs: serde_json::Value,
    pub result: serde_json::Value,
    pub text: String,
}

#[derive(Serialize)]
struct RunReport<'a> {
    schema: &'static str,
    command: &'a str,
    version: &'static str,
    inputs: &'a serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<u128>,
}

#[derive(Serialize)]
struct ErrorReport {
    code: &'static str,
    message: String,
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let curve_args = match &cli.command {
        Command::Curve(a) | Command::Count { curve: a, .. } | Command::Charpoly { curve: a, .. } => Some(a),
        Command::Runge { curve: a } | Command::Points { curve: a, .. } => Some(a),
        _ => None,
    };
    if let Some(flag) = curve_args.and_then(commands::missing_params) {
        Cli::command()
            .error(ErrorKind::MissingRequiredArgument, format!("this family needs {flag}"))
            .exit();
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool set twice");
    }
    let mut limits = Limits::default();
    if let Some(d) = cli.degree_cap {
        limits.degree_cap = d;
    }
    if let Some(q) = cli.q_width {
        limits.q_width = q;
    }
    let name = commands::name(&cli.command);
    let start = Instant::now();
    let outcome = commands::run(&cli.command, &limits);
    let wall = cli.timing.then(|| start.elapsed().as_millis());
    match outcome {
        Ok(out) => {
            if cli.json {
                let report = RunReport {
                    schema: SCHEMA,
                    command: &name,
                    version: env!("CARGO_PKG_VERSION"),
                    inputs: &out.inputs,
                    result: Some(&out.result),
                    error: None,
                    wall_time_ms: wall,
                };
                emit(&(serde_json::to_string_pretty(&report).unwrap() + "\n"));
            } else {
                emit(&out.text);
                if let Some(ms) = wall {
                    emit(&format!("time: {ms} ms\n"));
                }
            }
            ExitCode::SUCCESS
        }
        Err((inputs, e)) => {
            if cli.json {
                let report = RunReport {
                    schema: SCHEMA,
                    command: &name,
                    version: env!("CARGO_PKG_VERSION"),
                    inputs: &inputs,
                    result: None,
                    error: Some(ErrorReport { code: e.code(), message: e.to_string() }),
                    wall_time_ms: wall,
                };
                emit(&(serde_json::to_string_pretty(&report).unwrap() + "\n"));
            } else {
                eprintln!("error [{}]: {e}", e.code());
            }
            ExitCode::from(1)
        }
    }
}
