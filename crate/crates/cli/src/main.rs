//! `mxsum`: evaluate S±_μ(a; λ), print expansion coefficients, reproduce the
//! reference tables and run the consistency checks.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mxsum::coefficients::{a_coefficients, b_coefficients, bhat_coefficients, CoefficientTable};
use mxsum::evaluators::{evaluate, Route, RouteOptions, SeriesParams, Sign};
use mxsum::harness::{self, Convention, ReportRow};
use mxsum::Error;
use num_complex::Complex64;
use output::{Destination, Format};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_ROW_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_NONCONVERGENCE: u8 = 4;

#[derive(Parser)]
#[command(name = "mxsum", version, about = "Mathieu-exponential series S±_μ(a; λ) = Σ (±1)^n e^{−λn}/(n² + a²)^μ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the series at one parameter point.
    Eval(EvalArgs),
    /// Reproduce a reference table and report every cell.
    Table(TableArgs),
    /// Print the expansion coefficients A_k, B_k or B̂_k as CSV.
    Coeffs(CoeffsArgs),
    /// Run the tail-agreement, decay-rate and μ-step checks.
    Check(OutputArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    /// Alternating (minus) or non-alternating (plus) series.
    #[arg(long, value_enum)]
    sign: SignArg,
    /// Exponent μ ≥ 0.
    #[arg(long)]
    mu: f64,
    /// Damping λ ≥ 0.
    #[arg(long)]
    lambda: f64,
    /// Real part of a (must be positive).
    #[arg(long)]
    a: f64,
    /// Imaginary part of a.
    #[arg(long = "a-im", default_value_t = 0.0)]
    a_im: f64,
    /// Route: oracle, small-a, algebraic, full, tail, j-mu, integer-mu or
    /// lambda0. Defaults to full for 0 < μ < 1 and λ > 0, oracle otherwise.
    #[arg(long, value_parser = parse_route)]
    method: Option<Route>,
    /// Truncation index of the small-a and algebraic expansions.
    #[arg(long = "K", short = 'K', default_value_t = 8)]
    k: usize,
    /// Tolerance for the oracle and the quadratures.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Table number (1, 2 or 3).
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    id: u8,
    /// Angle reading for table 2 (pi_phi: a = 6e^{iπφ}, phi: a = 6e^{iφ}).
    /// Without it both are run and the matching one is reported.
    #[arg(long, value_parser = parse_convention)]
    convention: Option<Convention>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "Bhat", alias = "bhat")]
    Bhat,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Coefficient family.
    #[arg(value_enum)]
    kind: KindArg,
    /// Damping λ > 0.
    #[arg(long)]
    lambda: f64,
    /// Highest index (at most 60 for A, 100 for B and Bhat).
    #[arg(long = "K", short = 'K')]
    k: usize,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_route(s: &str) -> Result<Route, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self { code: EXIT_INVALID, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence { .. } | Error::IntegrandFailure(_) => EXIT_NONCONVERGENCE,
            Error::Io { .. } => EXIT_INVALID,
            _ => EXIT_PRECONDITION,
        };
        Self { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Table(args) => run_table(args),
        Command::Coeffs(args) => run_coeffs(args),
        Command::Check(args) => run_check(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("mxsum: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run_eval(args: EvalArgs) -> Result<u8, Failure> {
    let a = Complex64::new(args.a, args.a_im);
    let p = SeriesParams::new(args.sign.into(), args.mu, args.lambda, a).map_err(|e| Failure::invalid(e.to_string()))?;
    if !(args.tol > 0.0) {
        return Err(Failure::invalid(format!("--tol must be positive, got {}", args.tol)));
    }
    let route = args.method.unwrap_or_else(|| Route::default_for(&p));
    let opts = RouteOptions { k: args.k, tol: args.tol, ..RouteOptions::default() };
    let eval = evaluate(route, &p, &opts)?;
    let text = output::render_evaluation(&p, route, &eval, args.out.format)?;
    Destination::from(args.out.output).write(&text)?;
    Ok(0)
}

fn run_table(args: TableArgs) -> Result<u8, Failure> {
    let (rows, ok) = match (args.id, args.convention) {
        (1, _) => all_pass(harness::reproduce_table1()),
        (3, _) => all_pass(harness::reproduce_table3()),
        (2, Some(c)) => all_pass(harness::reproduce_table2(c)),
        (2, None) => {
            let r = harness::resolve_table2();
            match r.matching {
                Some(c) => eprintln!("table 2: every cell matches under convention {c}"),
                None => eprintln!("table 2: no single convention matches every cell"),
            }
            (r.rows, r.matching.is_some())
        }
        (id, _) => return Err(Failure::invalid(format!("unknown table {id}"))),
    };
    emit_rows(&rows, &args.out)?;
    Ok(if ok { 0 } else { EXIT_ROW_FAILED })
}

fn run_check(args: OutputArgs) -> Result<u8, Failure> {
    let (rows, ok) = all_pass(harness::check_suite());
    emit_rows(&rows, &args)?;
    Ok(if ok { 0 } else { EXIT_ROW_FAILED })
}

fn run_coeffs(args: CoeffsArgs) -> Result<u8, Failure> {
    let table: CoefficientTable = match args.kind {
        KindArg::A => a_coefficients(args.lambda, args.k),
        KindArg::B => b_coefficients(args.lambda, args.k),
        KindArg::Bhat => bhat_coefficients(args.lambda, args.k),
    }
    .map_err(|e| Failure::invalid(e.to_string()))?;
    for w in &table.warnings {
        eprintln!("mxsum: warning: {w}");
    }
    let text = output::render_coefficients(&table, args.out.format)?;
    Destination::from(args.out.output).write(&text)?;
    Ok(0)
}

fn all_pass(rows: Vec<ReportRow>) -> (Vec<ReportRow>, bool) {
    let ok = rows.iter().all(|r| r.pass);
    (rows, ok)
}

fn emit_rows(rows: &[ReportRow], out: &OutputArgs) -> Result<(), Failure> {
    let text = output::render_rows(rows, out.format)?;
    Destination::from(out.output.clone()).write(&text)?;
    Ok(())
}
