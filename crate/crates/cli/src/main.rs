//! `fizzle`: build, check and falsify epsilon-delta limit witnesses.
//!
//! Exit codes: 0 success, 1 violation or counterexample, 2 usage or syntax
//! error, 3 mathematical precondition failure, 4 indeterminate.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fizzle::algebra::{to_ratfunc, AlgebraError};
use fizzle::emit::{deserialize_witness, render_proof, serialize_witness, ProofFormat};
use fizzle::numeric::Rat;
use fizzle::syntax::{parse_delta, parse_expression};
use fizzle::verify::{check_limit_value, falsify, verify_witness, FalsifyStatus, Status, VerificationReport, VerifyConfig};
use fizzle::witness::{w_auto, Center, Claim, LimitSpec, Rule, Side, Strategy, Witness, WitnessError};

#[derive(Parser)]
#[command(name = "fizzle", version, about = "Constructive epsilon-delta limit witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a witness, verify it by sampling and print its proof.
    Prove {
        #[arg(allow_hyphen_values = true)]
        expression: String,
        #[command(flatten)]
        at: Target,
        /// Stated limit, or `auto` to compute it.
        #[arg(long, default_value = "auto")]
        limit: LimitSpec,
        /// Polynomial threshold recipe: `i` per term, `ii` coefficient sum.
        #[arg(long, default_value = "ii")]
        strategy: Strategy,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Omit the notes on corrected constants.
        #[arg(long)]
        no_errata: bool,
        #[command(flatten)]
        verify: VerifyFlags,
    },
    /// Verify a serialized witness, optionally with a replacement threshold.
    Check {
        /// Witness JSON file, or `-` for standard input.
        file: PathBuf,
        /// Threshold to audit in place of the witness's own.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        verify: VerifyFlags,
    },
    /// Search for a counterexample to a claimed threshold; prints JSON.
    Falsify {
        #[arg(allow_hyphen_values = true)]
        expression: String,
        #[command(flatten)]
        at: Target,
        /// Stated limit, or `auto` for rational functions.
        #[arg(long, default_value = "auto")]
        limit: LimitSpec,
        /// Claimed threshold, e.g. `min{1, eps/6}`.
        #[arg(long)]
        delta: String,
        /// Maximum number of evaluated points over the grid.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[command(flatten)]
        verify: VerifyFlags,
    },
    /// Print the exact limit value.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expression: String,
        #[command(flatten)]
        at: Target,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct Target {
    /// Centre: a rational such as `1`, `-3/2`, or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    at: Center,
}

#[derive(Args)]
struct VerifyFlags {
    /// Comma-separated rationals, e.g. `1/100,1/10,1`.
    #[arg(long, value_delimiter = ',')]
    eps_grid: Option<Vec<Rat>>,
    /// Sample points per eps value, at least 8.
    #[arg(long)]
    samples: Option<usize>,
    /// Base seed for the deterministic sampler.
    #[arg(long)]
    seed: Option<u64>,
    /// Binary precision of root lower bounds.
    #[arg(long)]
    root_bits: Option<u32>,
    /// Odd Taylor degree for sin enclosures.
    #[arg(long)]
    sin_degree: Option<u32>,
}

impl VerifyFlags {
    fn config(&self) -> Result<VerifyConfig, Failure> {
        let mut cfg = VerifyConfig::default();
        if let Some(g) = &self.eps_grid {
            cfg.eps_grid = g.clone();
        }
        if let Some(n) = self.samples {
            cfg.samples_per_eps = n;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(b) = self.root_bits {
            cfg.root_precision_bits = b;
        }
        if let Some(d) = self.sin_degree {
            cfg.sin_degree = d;
        }
        cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

// a closed pipe must not turn into a panic exit code
macro_rules! out {
    ($($a:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($a)*);
    }};
}

macro_rules! outln {
    ($($a:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($a)*);
    }};
}

macro_rules! errln {
    ($($a:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stderr(), $($a)*);
    }};
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INDETERMINATE: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Failure {
        if e.is_precondition_failure() {
            Failure::precondition(e.to_string())
        } else {
            Failure::usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            errln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Prove {
            expression,
            at,
            limit,
            strategy,
            format,
            no_errata,
            verify,
        } => prove(&expression, &at.at, &limit, strategy, format, !no_errata, &verify.config()?),
        Command::Check {
            file,
            delta,
            format,
            verify,
        } => check(&file, delta.as_deref(), format, &verify.config()?),
        Command::Falsify {
            expression,
            at,
            limit,
            delta,
            budget,
            verify,
        } => run_falsify(&expression, &at.at, &limit, &delta, budget, &verify.config()?),
        Command::Eval { expression, at, format } => eval(&expression, &at.at, format),
    }
}

fn parse_expr(src: &str) -> Result<fizzle::algebra::Expr, Failure> {
    parse_expression(src).map_err(|e| Failure::usage(e.to_string()))
}

fn status_code(report: &VerificationReport) -> u8 {
    match report.status {
        Status::Corroborated => 0,
        Status::Violations => EXIT_VIOLATION,
        Status::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn summarize(report: &VerificationReport) {
    errln!(
        "verification: {} ({} eps values, {} points, {} violations, {} poles, {} indeterminate)",
        status_name(report.status),
        report.eps_checked,
        report.points_checked,
        report.violations.len(),
        report.poles.len(),
        report.indeterminate.len()
    );
    for a in &report.assumptions {
        errln!("assumption: {a}");
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Corroborated => "corroborated",
        Status::Violations => "violations",
        Status::Indeterminate => "indeterminate",
    }
}

fn witness_value(w: &Witness) -> Value {
    serde_json::from_str(&serialize_witness(w)).expect("serialized witness is JSON")
}

fn report_value(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn prove(
    src: &str,
    center: &Center,
    limit: &LimitSpec,
    strategy: Strategy,
    format: Format,
    errata: bool,
    cfg: &VerifyConfig,
) -> Result<u8, Failure> {
    let e = parse_expr(src)?;
    let w = w_auto(&e, center, limit, strategy)?;
    let report = verify_witness(&w, cfg).map_err(|e| Failure::usage(e.to_string()))?;
    summarize(&report);
    match format {
        Format::Json => {
            let out = json!({ "witness": witness_value(&w), "report": report_value(&report) });
            outln!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Text | Format::Latex if report.status == Status::Violations => {
            outln!("{}", report.to_json());
        }
        Format::Text | Format::Latex => {
            let pf = if format == Format::Latex {
                ProofFormat::Latex
            } else {
                ProofFormat::Text
            };
            let doc = render_proof(&w, pf, errata).map_err(|e| Failure::usage(e.to_string()))?;
            out!("{}", doc.render());
            if pf == ProofFormat::Text {
                outln!();
            }
        }
    }
    Ok(status_code(&report))
}

fn read_input(file: &PathBuf) -> Result<String, Failure> {
    if file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::usage(format!("reading standard input: {e}")))
    } else {
        std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("reading {}: {e}", file.display())))
    }
}

fn check(file: &PathBuf, delta: Option<&str>, format: Format, cfg: &VerifyConfig) -> Result<u8, Failure> {
    let text = read_input(file)?;
    // also accepts the `{witness, report}` document printed by `prove --format json`
    let inner = match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(mut m)) if m.contains_key("witness") => m.remove("witness").expect("present").to_string(),
        _ => text,
    };
    let mut w = deserialize_witness(&inner).map_err(|e| Failure::usage(e.to_string()))?;
    if let Some(d) = delta {
        w.delta = parse_delta(d).map_err(|e| Failure::usage(e.to_string()))?;
    }
    let report = verify_witness(&w, cfg).map_err(|e| Failure::usage(e.to_string()))?;
    summarize(&report);
    match format {
        Format::Json => outln!("{}", report.to_json()),
        Format::Text | Format::Latex => {
            outln!("status: {}", status_name(report.status));
            outln!("delta: {}", w.delta);
            outln!("eps checked: {}", report.eps_checked);
            outln!("points checked: {}", report.points_checked);
            outln!("violations: {}", report.violations.len());
            for v in &report.violations {
                outln!("  eps = {}, t = {}, error >= {}", v.eps, v.t, v.error_lower_bound);
            }
            outln!("poles: {}", report.poles.len());
            outln!("indeterminate: {}", report.indeterminate.len());
        }
    }
    Ok(status_code(&report))
}

/// Exact limit of a rational function at `center`.
fn rational_limit(e: &fizzle::algebra::Expr, center: &Center) -> Result<Option<Rat>, Failure> {
    match to_ratfunc(e) {
        Ok(f) => check_limit_value(&f, center)
            .map(Some)
            .map_err(|e| Failure::precondition(e.to_string())),
        Err(AlgebraError::Unsupported(_)) => Ok(None),
        Err(other) => Err(Failure::precondition(other.to_string())),
    }
}

fn run_falsify(
    src: &str,
    center: &Center,
    limit: &LimitSpec,
    delta: &str,
    budget: usize,
    cfg: &VerifyConfig,
) -> Result<u8, Failure> {
    let e = parse_expr(src)?;
    let d = parse_delta(delta).map_err(|e| Failure::usage(e.to_string()))?;
    let limit = match limit {
        LimitSpec::Value(v) => v.clone(),
        LimitSpec::Auto => rational_limit(&e, center)?
            .ok_or_else(|| Failure::usage("--limit auto needs a rational function; state the limit"))?,
    };
    let claim = Claim::new(e, center.clone(), limit, Side::TwoSided);
    let report = falsify(&claim, &d, budget, cfg).map_err(|e| Failure::usage(e.to_string()))?;
    outln!("{}", report.to_json());
    Ok(match report.status {
        FalsifyStatus::Counterexample | FalsifyStatus::Pole => EXIT_VIOLATION,
        FalsifyStatus::NoCounterexampleAtBudget => 0,
    })
}

fn eval(src: &str, center: &Center, format: Format) -> Result<u8, Failure> {
    let e = parse_expr(src)?;
    let value = match rational_limit(&e, center)? {
        Some(v) => v,
        None => {
            let w = w_auto(&e, center, &LimitSpec::Auto, Strategy::II)?;
            if let Rule::SinAt { c } = &w.derivation.rule {
                return Err(WitnessError::IrrationalLimit(format!("sin({c})")).into());
            }
            w.claim.limit
        }
    };
    match format {
        Format::Json => outln!("{}", json!({ "limit": value.to_string() })),
        Format::Text | Format::Latex => outln!("{value}"),
    }
    Ok(0)
}
