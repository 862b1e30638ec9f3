//! `pexp`: exact partition numbers, expansion coefficients, bounded
//! evaluations and verification reports from the command line.
//!
//! Exit status: 0 on success (every verified case passed), 1 if any case
//! failed or stayed ambiguous, 2 on usage, domain or I/O errors.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partition_expansions::harness::{run_suite, Suite, SuiteParams, TightnessProfile};
use partition_expansions::numerics::{to_decimal, DEFAULT_BITS};
use partition_expansions::{Error, ExactPartitionTable, ExpansionTable, Kind, PrecisionContext};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "pexp",
    version,
    about = "Certified asymptotic expansions of partition quotients",
    long_about = "Certified asymptotic expansions of p(n+k)/p(n), p(n+k) and 1/p(n), \
                  with exact partition numbers as the reference.\n\n\
                  Exit status: 0 success, 1 a verified bound failed or was ambiguous, \
                  2 usage or domain error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exact partition number p(n).
    Exact {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Print the coefficients, error constant and cutoff of an expansion.
    Coeffs {
        #[command(flatten)]
        expansion: Expansion,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate an expansion at n with its certified radius.
    Approx {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        expansion: Expansion,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite and print its report (JSON by default).
    Verify {
        #[command(flatten)]
        suite: SuiteArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Print the ratio |error|/bound for every case of a suite (JSON by default).
    Tightness {
        #[command(flatten)]
        suite: SuiteArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Working precision in bits (at least 64).
    #[arg(long, default_value_t = DEFAULT_BITS)]
    bits: u32,
    /// Precision cap for re-evaluating undecided comparisons [default: 4 * bits].
    #[arg(long)]
    max_bits: Option<u32>,
    /// Output format [default: text for exact/coeffs/approx, json for verify/tightness].
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Binary cache file for the exact partition table.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Expansion {
    /// Which expansion.
    #[arg(long, value_enum, default_value_t = KindArg::Ratio)]
    kind: KindArg,
    /// Shift k (ignored for the inverse expansion).
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// Truncation order N.
    #[arg(long = "N", default_value_t = 1)]
    n_trunc: u64,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Suite to run.
    #[arg(long)]
    suite: String,
    /// Seed of the ChaCha8 sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random n per (k, N) besides the boundary [default: 50].
    #[arg(long)]
    samples: Option<usize>,
    /// Largest shift k [default: 3; 5 for omega_envelopes].
    #[arg(long)]
    k_max: Option<u64>,
    /// Largest truncation order N [default: 4].
    #[arg(long = "N-max")]
    n_trunc_max: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Ratio,
    Shift,
    Inverse,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ratio => Kind::Ratio,
            KindArg::Shift => Kind::Shift,
            KindArg::Inverse => Kind::Inverse,
        }
    }
}

/// A failure with its exit code.
enum Failure {
    /// Exit 1: a verified bound failed or was ambiguous.
    Violation,
    /// Exit 2: usage, domain or I/O error.
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn context(common: &Common) -> Result<PrecisionContext, Failure> {
    let max_bits = common.max_bits.unwrap_or(common.bits.saturating_mul(4));
    Ok(PrecisionContext::with_max_bits(common.bits, max_bits)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Exact { n, common } => {
            context(&common)?;
            let table = match &common.cache {
                Some(path) => ExactPartitionTable::load_or_build(path, n)?,
                None => ExactPartitionTable::build(n),
            };
            let p = table.get(n)?.to_string();
            match common.format.unwrap_or(Format::Text) {
                Format::Text => writeln!(out, "{p}")?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "n": n, "p": p }))?)?,
                Format::Csv => write!(out, "n,p\n{n},{p}\n")?,
            }
        }
        Command::Coeffs { expansion, common } => {
            let ctx = context(&common)?;
            let table = build_table(&expansion, &ctx)?;
            print_coeffs(&mut out, &table, &ctx, common.format.unwrap_or(Format::Text))?;
        }
        Command::Approx { n, expansion, common } => {
            let ctx = context(&common)?;
            let table = build_table(&expansion, &ctx)?;
            let approx = table.evaluate(n)?;
            let d = |x| to_decimal(x, ctx.digits());
            let (prefactor, center, radius) = (d(&approx.prefactor), d(&approx.center), d(&approx.radius));
            let kind = table.kind.to_string();
            match common.format.unwrap_or(Format::Text) {
                Format::Text => {
                    writeln!(out, "kind      {kind}")?;
                    writeln!(out, "n         {n}")?;
                    writeln!(out, "prefactor {prefactor}")?;
                    writeln!(out, "center    {center}")?;
                    writeln!(out, "radius    {radius}")?;
                }
                Format::Json => {
                    let v = json!({
                        "kind": kind, "k": table.k, "N": table.n_trunc, "n": n, "bits": ctx.bits,
                        "prefactor": prefactor, "center": center, "radius": radius,
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
                }
                Format::Csv => {
                    writeln!(out, "kind,k,N,n,prefactor,center,radius")?;
                    let k = table.k.map(|k| k.to_string()).unwrap_or_default();
                    writeln!(out, "{kind},{k},{},{n},{prefactor},{center},{radius}", table.n_trunc)?;
                }
            }
        }
        Command::Verify { suite, common } => {
            let ctx = context(&common)?;
            let (name, params) = suite_params(&suite, &common)?;
            let report = run_suite(name, &params, &ctx)?;
            match common.format.unwrap_or(Format::Json) {
                Format::Json => out.write_all(report.to_json()?.as_bytes())?,
                Format::Csv => report.write_csv(&mut out)?,
                Format::Text => writeln!(out, "{}", report.summary_line())?,
            }
            out.flush()?;
            if !report.all_pass() {
                return Err(Failure::Violation);
            }
        }
        Command::Tightness { suite, common } => {
            let ctx = context(&common)?;
            let (name, params) = suite_params(&suite, &common)?;
            let profile = TightnessProfile::from_report(&run_suite(name, &params, &ctx)?);
            match common.format.unwrap_or(Format::Json) {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&profile)?)?,
                Format::Csv => profile.write_csv(&mut out)?,
                Format::Text => {
                    for row in &profile.rows {
                        let params: Vec<String> = row.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        let flag = if row.flagged { "  VIOLATION" } else { "" };
                        writeln!(out, "{} {} {}{flag}", row.check, params.join(" "), row.ratio)?;
                    }
                }
            }
            out.flush()?;
            if profile.any_flagged() {
                return Err(Failure::Violation);
            }
        }
    }
    Ok(())
}

fn build_table(e: &Expansion, ctx: &PrecisionContext) -> Result<ExpansionTable, Failure> {
    Ok(ExpansionTable::build(e.kind.into(), e.k, e.n_trunc, ctx)?)
}

fn suite_params(args: &SuiteArgs, common: &Common) -> Result<(Suite, SuiteParams), Failure> {
    let suite: Suite = args.suite.parse()?;
    let mut params = SuiteParams::for_suite(suite);
    params.seed = args.seed;
    if let Some(s) = args.samples {
        params.samples = s;
    }
    if let Some(k) = args.k_max {
        params.k_max = k;
    }
    if let Some(n) = args.n_trunc_max {
        params.n_trunc_max = n;
    }
    params.cache = common.cache.clone();
    Ok((suite, params))
}

fn print_coeffs<W: Write>(
    out: &mut W,
    table: &ExpansionTable,
    ctx: &PrecisionContext,
    format: Format,
) -> Result<(), Failure> {
    let d = |x| to_decimal(x, ctx.digits());
    let coeffs: Vec<String> = table.coefficients.iter().map(d).collect();
    let error_constant = d(&table.error_constant);
    let relation = if table.strict { ">" } else { ">=" };
    match format {
        Format::Text => {
            writeln!(out, "kind {}", table.kind)?;
            if let Some(k) = table.k {
                writeln!(out, "k {k}")?;
            }
            writeln!(out, "N {}", table.n_trunc)?;
            for (t, c) in coeffs.iter().enumerate() {
                writeln!(out, "coefficient[{t}] {c}")?;
            }
            writeln!(out, "error_constant {error_constant}")?;
            writeln!(out, "valid for n {relation} {}", table.cutoff)?;
        }
        Format::Json => {
            let v = json!({
                "kind": table.kind.to_string(),
                "k": table.k,
                "N": table.n_trunc,
                "bits": ctx.bits,
                "coefficients": coeffs,
                "error_constant": error_constant,
                "cutoff": table.cutoff,
                "strict": table.strict,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Format::Csv => {
            writeln!(out, "t,coefficient")?;
            for (t, c) in coeffs.iter().enumerate() {
                writeln!(out, "{t},{c}")?;
            }
        }
    }
    Ok(())
}
