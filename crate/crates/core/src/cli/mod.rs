//! Command-line front end.
//!
//! ```text
//! feedback-zeta primes   --count N [--out FILE]
//! feedback-zeta eval     --method M --s S [--primes N] [--format F] [--out FILE]
//! feedback-zeta table3   [--primes N] [--format F] [--out FILE]
//! feedback-zeta table4   [--primes N] [--format F] [--out FILE]
//! feedback-zeta simulate (--K k --L l | --p p --a a) [--horizon H] [--compare pi|fopdt|pade]
//!                        [--format F] [--out FILE]
//! ```
//!
//! Exit codes: [`EXIT_OK`], [`EXIT_USAGE`] for unparsable or inconsistent
//! flags, [`EXIT_DOMAIN`] when the requested point lies outside a method's
//! domain (poles, `Re(s)` out of range), [`EXIT_INTERNAL`] for I/O failures.

pub mod literal;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::evaluator::{self, EvalRequest, Method};
use crate::primes::generate_primes;
use crate::simulator::{self, ApproxKind, Approximant};
use crate::{ComplexValue, PrimeTable};

pub use literal::{parse_complex, ParseComplexError};
pub use output::{Cell, Format, OutputRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Prime count used when `--primes` is not given.
pub const DEFAULT_PRIME_COUNT: usize = 1_000_000;

/// Real parts evaluated by `table3`.
pub const TABLE3_EXPONENTS: [u32; 10] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

/// Imaginary parts evaluated by `table4`, all at real part 2.
pub fn table4_frequencies() -> Vec<f64> {
    (1..=10).map(|k| k as f64 / 10.0).collect()
}

fn closed_form(a: u32) -> Option<&'static str> {
    match a {
        2 => Some("pi^2/6"),
        4 => Some("pi^4/90"),
        6 => Some("pi^6/945"),
        8 => Some("pi^8/9450"),
        10 => Some("pi^10/93555"),
        12 => Some("691pi^12/638512875"),
        _ => None,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "feedback-zeta",
    version,
    about = "Riemann zeta through delay feedback loops, PI controllers and FOPDT models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the first N primes, one per line.
    Primes {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one product (or the reference oracle) at a point s.
    Eval(EvalArgs),
    /// Real values zeta(a) for a = 2..10, 12 through the FOPDT product.
    Table3(TableArgs),
    /// Complex values zeta(2 + ib) for b = 0.1..1.0 through the FOPDT product.
    Table4(TableArgs),
    /// Exact step response of a delay feedback loop, optionally against an approximant.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// csv, json or pretty.
    #[arg(long)]
    format: Option<Format>,
    /// Write to FILE instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// euler, pi, fopdt, pade or reference.
    #[arg(long)]
    method: Method,
    /// Point such as `2`, `2+0.3i` or `0.5-14.1i`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: ComplexValue,
    #[arg(long)]
    primes: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, default_value_t = DEFAULT_PRIME_COUNT)]
    primes: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Loop gain, 0 < K <= 1.
    #[arg(long = "K", requires = "l", conflicts_with_all = ["p", "a"], allow_negative_numbers = true)]
    k: Option<f64>,
    /// Loop delay, L > 0.
    #[arg(long = "L", requires = "k", allow_negative_numbers = true)]
    l: Option<f64>,
    /// Prime giving the delay L = ln p.
    #[arg(long, requires = "a")]
    p: Option<u64>,
    /// Real part a giving the gain K = p^-a.
    #[arg(long, requires = "p", allow_negative_numbers = true)]
    a: Option<f64>,
    /// Simulated time span; defaults to ten delays.
    #[arg(long, allow_negative_numbers = true)]
    horizon: Option<f64>,
    /// Approximant sampled at every breakpoint: pi, fopdt or pade.
    #[arg(long)]
    compare: Option<ApproxKind>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] crate::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

/// Parses `args` (including the program name) and runs one command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, stderr) {
        Ok((text, out)) => match emit(&text, out, stdout) {
            Ok(()) => EXIT_OK,
            Err(e) => report(stderr, &CliError::Io(e)),
        },
        Err(e) => report(stderr, &e),
    }
}

fn report(stderr: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    e.exit_code()
}

fn emit(text: &str, out: Option<PathBuf>, stdout: &mut dyn Write) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn primes_for(count: usize) -> Result<PrimeTable, CliError> {
    generate_primes(count).map_err(|e| CliError::Usage(format!("--primes: {e}")))
}

fn execute(
    command: Command,
    stderr: &mut dyn Write,
) -> Result<(String, Option<PathBuf>), CliError> {
    match command {
        Command::Primes { count, out } => {
            let table =
                generate_primes(count).map_err(|e| CliError::Usage(format!("--count: {e}")))?;
            let mut text = String::with_capacity(table.len() * 9);
            for p in table.primes() {
                text.push_str(&p.to_string());
                text.push('\n');
            }
            Ok((text, out))
        }
        Command::Eval(args) => {
            let rec = eval_record(&args, stderr)?;
            Ok((
                rec.render(args.output.format.unwrap_or(Format::Pretty)),
                args.output.out,
            ))
        }
        Command::Table3(args) => {
            let rec = table3_cli(args.primes)?;
            Ok((
                rec.render(args.output.format.unwrap_or(Format::Pretty)),
                args.output.out,
            ))
        }
        Command::Table4(args) => {
            let rec = table4_cli(args.primes)?;
            Ok((
                rec.render(args.output.format.unwrap_or(Format::Pretty)),
                args.output.out,
            ))
        }
        Command::Simulate(args) => {
            let rec = simulate(&args)?;
            Ok((
                rec.render(args.output.format.unwrap_or(Format::Csv)),
                args.output.out,
            ))
        }
    }
}

fn optional_complex(v: Option<ComplexValue>) -> Cell {
    v.map_or(Cell::Empty, Cell::Complex)
}

fn eval_record(args: &EvalArgs, stderr: &mut dyn Write) -> Result<OutputRecord, CliError> {
    let prime_count = args.primes.unwrap_or(DEFAULT_PRIME_COUNT);
    let mut rec = OutputRecord::new(["method", "s", "primes", "value", "reference", "abs_error"]);

    if args.method == Method::Reference {
        let value = evaluator::reference_zeta(args.s)?;
        rec.push(vec![
            Cell::Text(args.method.to_string()),
            Cell::Complex(args.s),
            Cell::Empty,
            Cell::Complex(value),
            Cell::Empty,
            Cell::Empty,
        ]);
        return Ok(rec);
    }

    if args.method == Method::Pi && args.s.im == 0.0 {
        let _ = writeln!(
            stderr,
            "warning: the PI product has no limit as primes are added (factors tend to 1/2); \
             this value depends on --primes"
        );
    }
    let table = primes_for(prime_count)?;
    let req = EvalRequest {
        method: args.method,
        s: args.s,
        prime_count,
    };
    let result = evaluator::evaluate(&req, &table)?;
    rec.push(vec![
        Cell::Text(result.method.to_string()),
        Cell::Complex(result.s),
        Cell::Int(result.prime_count as u64),
        Cell::Complex(result.value),
        optional_complex(result.reference),
        result.abs_error.map_or(Cell::Empty, Cell::Sci),
    ]);
    Ok(rec)
}

/// FOPDT values at the real points of [`TABLE3_EXPONENTS`].
pub fn table3(prime_count: usize) -> Result<OutputRecord, crate::Error> {
    let table = generate_primes(prime_count)?;
    let mut rec = OutputRecord::new(["a", "fopdt", "reference", "abs_error", "closed_form"]);
    for a in TABLE3_EXPONENTS {
        let s = ComplexValue::new(a as f64, 0.0);
        let value = evaluator::fopdt_zeta(s, &table)?;
        let reference = evaluator::reference_zeta(s)?;
        rec.push(vec![
            Cell::Int(a as u64),
            Cell::Real(value.re),
            Cell::Real(reference.re),
            Cell::Sci((value - reference).norm()),
            closed_form(a).map_or(Cell::Empty, |f| Cell::Text(f.to_string())),
        ]);
    }
    Ok(rec)
}

/// FOPDT values at `s = 2 + ib` for the frequencies of [`table4_frequencies`].
pub fn table4(prime_count: usize) -> Result<OutputRecord, crate::Error> {
    let table = generate_primes(prime_count)?;
    let mut rec = OutputRecord::new(["b", "fopdt", "reference", "abs_error"]);
    for b in table4_frequencies() {
        let s = ComplexValue::new(2.0, b);
        let value = evaluator::fopdt_zeta(s, &table)?;
        let reference = evaluator::reference_zeta(s)?;
        rec.push(vec![
            Cell::Text(format!("{b:.1}")),
            Cell::Complex(value),
            Cell::Complex(reference),
            Cell::Sci((value - reference).norm()),
        ]);
    }
    Ok(rec)
}

fn table_error(e: crate::Error) -> CliError {
    match e {
        crate::Error::InvalidArgument(msg) => CliError::Usage(format!("--primes: {msg}")),
        other => CliError::Domain(other),
    }
}

fn table3_cli(prime_count: usize) -> Result<OutputRecord, CliError> {
    table3(prime_count).map_err(table_error)
}

fn table4_cli(prime_count: usize) -> Result<OutputRecord, CliError> {
    table4(prime_count).map_err(table_error)
}

fn simulate(args: &SimulateArgs) -> Result<OutputRecord, CliError> {
    let (gain, delay) = match (args.k, args.l, args.p, args.a) {
        (Some(k), Some(l), None, None) => (k, l),
        (None, None, Some(p), Some(a)) => {
            if p < 2 {
                return Err(CliError::Usage(format!("--p must be at least 2, got {p}")));
            }
            if a.is_nan() || a < 0.0 {
                return Err(CliError::Usage(format!(
                    "--a must be non-negative, got {a}"
                )));
            }
            let ln_p = (p as f64).ln();
            ((-a * ln_p).exp(), ln_p)
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --K/--L or --p/--a".to_string(),
            ))
        }
    };
    let usage = |e: crate::Error| CliError::Usage(e.to_string());
    let horizon = args.horizon.unwrap_or(10.0 * delay);
    let trace = simulator::simulate_feedback_step(gain, delay, horizon).map_err(usage)?;

    let Some(kind) = args.compare else {
        let mut rec = OutputRecord::new(["t", "y"]);
        for &(t, y) in &trace.breakpoints {
            rec.push(vec![Cell::Real(t), Cell::Real(y)]);
        }
        return Ok(rec);
    };
    let approx = Approximant::for_loop(kind, gain, delay).map_err(usage)?;
    let mut rec = OutputRecord::new(["t", "y", kind.name(), "deviation"]);
    for &(t, y) in &trace.breakpoints {
        let v = approx.value(t);
        rec.push(vec![
            Cell::Real(t),
            Cell::Real(y),
            Cell::Real(v),
            Cell::Real((y - v).abs()),
        ]);
    }
    Ok(rec)
}
