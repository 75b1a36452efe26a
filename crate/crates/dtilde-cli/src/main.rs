//! `dtilde`: F-polynomials, CC variables and invariant checks for D̃ₙ quivers.

mod input;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dtilde::formulas::{cc_from_fpoly, Engine};
use dtilde::laurent::{render_with_denominator, to_json, LaurentPoly};
use dtilde::quiver::QuiverDn;
use dtilde::Error;
use serde_json::json;

use input::{QuiverArgs, Target, TargetArgs, TubeArgs};
use verify::{Depth, Suite, SuiteReport};

#[derive(Parser, Debug)]
#[command(name = "dtilde", version, about = "F-polynomials and CC variables for affine D̃ₙ quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the F-polynomial of an indecomposable representation.
    Fpoly(FpolyArgs),
    /// Print the Caldero–Chapoton Laurent polynomial of a representation.
    Cc(CcArgs),
    /// Run invariant suites and report PASS or FAIL for each.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
struct FpolyArgs {
    #[command(flatten)]
    quiver: QuiverArgs,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    tube: TubeArgs,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct CcArgs {
    #[command(flatten)]
    quiver: QuiverArgs,
    #[command(flatten)]
    target: TargetArgs,
    #[command(flatten)]
    tube: TubeArgs,
    /// Accept multiples of δ, which give no cluster variable.
    #[arg(long)]
    allow_imaginary: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    quiver: QuiverArgs,
    /// Suite to run; repeat for several. Without this flag every suite runs.
    #[arg(long, value_enum)]
    suite: Vec<Suite>,
    /// Largest multiple of δ checked by `formhom`.
    #[arg(long, default_value_t = 4)]
    rmax: usize,
    /// Root height bound, overriding each suite's default.
    #[arg(long)]
    height: Option<i64>,
    /// Number of primes used to test the covering hypothesis in `bgpeuler`.
    #[arg(long, default_value_t = 3)]
    primes: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Exit status for library errors: 2 for bad input, 3 for everything else.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::NotARoot(_) | Error::Parse(_) | Error::BadParameter(_) | Error::OutOfCategory(_) => {
            2
        }
        _ => 3,
    }
}

fn fpoly_json(q: &QuiverDn, target: &Target, key: &str, p: &LaurentPoly, text: String) -> String {
    let mut v = json!({
        "n": q.n(),
        "orientation": q.orientation_string(),
        "dim": target.dim().to_json(),
        "text": text,
    });
    v[key] = to_json(p);
    serde_json::to_string_pretty(&v).expect("JSON values always serialize")
}

fn run_fpoly(args: &FpolyArgs) -> dtilde::Result<String> {
    let q = args.quiver.quiver()?;
    let target = Target::resolve(&q, &args.target, &args.tube)?;
    let f = target.fpoly(&q, &Engine::new())?;
    Ok(match args.format {
        Format::Text => f.render(),
        Format::Json => fpoly_json(&q, &target, "fpoly", &f, f.render()),
    })
}

fn run_cc(args: &CcArgs) -> dtilde::Result<String> {
    let q = args.quiver.quiver()?;
    let target = Target::resolve(&q, &args.target, &args.tube)?;
    if !args.allow_imaginary && target.is_imaginary(&q)? {
        return Err(Error::BadParameter(format!(
            "{} is a multiple of δ; pass --allow-imaginary to compute it anyway",
            target.dim()
        )));
    }
    let f = target.fpoly(&q, &Engine::new())?;
    let x = cc_from_fpoly(&q, target.dim(), &f);
    let text = render_with_denominator(&x);
    Ok(match args.format {
        Format::Text => text,
        Format::Json => fpoly_json(&q, &target, "cc", &x, text),
    })
}

fn render_reports(reports: &[SuiteReport], format: Format) -> String {
    let passed = reports.iter().all(SuiteReport::passed);
    match format {
        Format::Json => {
            let v = json!({
                "passed": passed,
                "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&v).expect("JSON values always serialize")
        }
        Format::Text => {
            let mut lines = Vec::new();
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let mut line = format!("{status} {}: {} checks", r.suite.name(), r.checks);
                if r.skipped > 0 {
                    line.push_str(&format!(", skipped {}", r.skipped));
                }
                if let Some(c) = &r.counterexample {
                    line.push_str(&format!("; counterexample: {c}"));
                }
                lines.push(line);
                for (item, ok) in &r.items {
                    lines.push(format!("  {} {item}", if *ok { "equal" } else { "DIFFERENT" }));
                }
            }
            lines.join("\n")
        }
    }
}

fn run_verify(args: &VerifyArgs) -> dtilde::Result<(String, bool)> {
    let q = args.quiver.quiver()?;
    let mut suites = args.suite.clone();
    if suites.is_empty() {
        suites = Suite::value_variants().to_vec();
    }
    suites.sort();
    suites.dedup();
    let depth = Depth { rmax: args.rmax, height: args.height, primes: args.primes };
    let engine = Engine::new();
    let reports = suites
        .into_iter()
        .map(|s| verify::run(s, &q, &depth, &engine))
        .collect::<dtilde::Result<Vec<_>>>()?;
    let passed = reports.iter().all(SuiteReport::passed);
    Ok((render_reports(&reports, args.format), passed))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Fpoly(a) => run_fpoly(a).map(|s| (s, true)),
        Command::Cc(a) => run_cc(a).map(|s| (s, true)),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok((out, ok)) => {
            println!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
