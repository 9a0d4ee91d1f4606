use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbert_lambda::hilbert::MuOptions;
use hilbert_lambda::oracles::{
    additivity_suite, entropy_additivity_suite, oracle_equivalence_suite, SuiteReport, DEFAULT_SEED,
};
use hilbert_lambda::slices::{series, SeriesKind, SliceOptions, SlicePath};
use hlambda_cli::report::{mu_report, render_mu, series_csv, to_json, MuVariant};
use hlambda_cli::table::{paper_table, render_table};
use hlambda_cli::{CliError, Problem};

#[derive(Parser)]
#[command(name = "hlambda", version, about = "Hilbert series and length-function invariants of finitely presented modules")]
struct Cli {
    /// Worker threads; defaults to the available cores. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a growth, slice, intrinsic, Samuel or box series.
    Series(SeriesArgs),
    /// Leading monomial, dimension, degree and entropies.
    Mu(MuArgs),
    /// Recompute the table for quotients of Z[x] and Z[x,y]/(xy).
    PaperTable(TableArgs),
    /// Run the randomized consistency suites.
    Check(CheckArgs),
    /// Print the canonical form of a problem file.
    Normalize(NormalizeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Sink {
    /// Output format.
    #[arg(long = "out", value_enum)]
    format: Option<Format>,
    /// Write to FILE (atomically) instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Growth,
    Samuel,
    Intrinsic,
    Multibox,
    Graded,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Auto,
    Groebner,
    Homogeneous,
}

#[derive(Args)]
struct SeriesArgs {
    /// Problem file, or `-` for stdin.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value = "growth")]
    kind: KindArg,
    /// Largest index sampled.
    #[arg(long, default_value_t = 10)]
    n: u64,
    #[arg(long, value_enum, default_value = "auto")]
    path: PathArg,
    /// Variable blocks for box series, e.g. `1,2;3` (1-based variable numbers).
    #[arg(long)]
    blocks: Option<String>,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plain,
    Hat,
    Intrinsic,
    Samuel,
}

#[derive(Args)]
struct MuArgs {
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value = "plain")]
    variant: VariantArg,
    /// Largest sample count tried while fitting.
    #[arg(long, default_value_t = 64)]
    budget: u64,
    /// Chain length J for the hat variant (moduli lcm(1..j), j <= J).
    #[arg(long, default_value_t = 8)]
    chain: u64,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 64)]
    budget: u64,
    #[arg(long, default_value_t = 8)]
    chain: u64,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    sink: Sink,
}

#[derive(Args)]
struct NormalizeArgs {
    #[arg(long)]
    input: String,
    #[command(flatten)]
    sink: Sink,
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path)?;
    }
    Ok(s)
}

fn load(path: &str) -> Result<Problem, CliError> {
    Problem::from_json(&read_input(path)?, path)
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Some(p) => {
            let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.flush()?;
            tmp.persist(p).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}

fn parse_blocks(s: &str, k: usize) -> Result<Vec<Vec<usize>>, CliError> {
    let bad = |m: String| CliError::Problem(format!("--blocks {s:?}: {m}"));
    s.split(';')
        .map(|b| {
            b.split(',')
                .map(|v| {
                    let i: usize = v.trim().parse().map_err(|_| bad(format!("{v:?} is not a variable number")))?;
                    if i == 0 || i > k {
                        return Err(bad(format!("variable {i} is out of range 1..={k}")));
                    }
                    Ok(i - 1)
                })
                .collect()
        })
        .collect()
}

fn run_series(a: &SeriesArgs) -> Result<(), CliError> {
    let p = load(&a.input)?;
    let kind = match a.kind {
        KindArg::Growth => SeriesKind::Growth,
        KindArg::Samuel => SeriesKind::Samuel,
        KindArg::Intrinsic => SeriesKind::IntrinsicStep,
        KindArg::Multibox => SeriesKind::MultiBox,
        KindArg::Graded => SeriesKind::GradedSlice,
    };
    let opts = SliceOptions {
        path: match a.path {
            PathArg::Auto => SlicePath::Auto,
            PathArg::Groebner => SlicePath::Groebner,
            PathArg::Homogeneous => SlicePath::Homogeneous,
        },
        blocks: a.blocks.as_deref().map(|b| parse_blocks(b, p.module.k())).transpose()?,
        ..SliceOptions::default()
    };
    let s = series(&p.module, &p.v0, a.n, kind, p.length, &opts)?;
    let text = match a.sink.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&s),
        Format::Csv | Format::Text => series_csv(&s),
    };
    emit(&text, a.sink.output.as_deref())
}

fn run_mu(a: &MuArgs) -> Result<(), CliError> {
    let p = load(&a.input)?;
    let variant = match a.variant {
        VariantArg::Plain => MuVariant::Plain,
        VariantArg::Hat => MuVariant::Hat,
        VariantArg::Intrinsic => MuVariant::Intrinsic,
        VariantArg::Samuel => MuVariant::Samuel,
    };
    let opts = MuOptions {
        budget: a.budget,
        ..MuOptions::default()
    };
    let r = mu_report(&p, variant, &opts, a.chain)?;
    let text = match a.sink.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&r),
        Format::Text | Format::Csv => render_mu(&r),
    };
    emit(&text, a.sink.output.as_deref())
}

fn run_table(a: &TableArgs) -> Result<(), CliError> {
    let opts = MuOptions {
        budget: a.budget,
        ..MuOptions::default()
    };
    let rows = paper_table(&opts, a.chain)?;
    let text = match a.sink.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&rows),
        Format::Text | Format::Csv => render_table(&rows),
    };
    emit(&text, a.sink.output.as_deref())?;
    let bad = rows.iter().filter(|r| !r.ok).count();
    if bad > 0 {
        return Err(CliError::Mismatch(format!("{bad} table cells differ from the expected values")));
    }
    Ok(())
}

fn run_check(a: &CheckArgs) -> Result<(), CliError> {
    let reports: Vec<SuiteReport> = vec![
        additivity_suite(a.seed, 50, 20, 8),
        entropy_additivity_suite(a.seed.wrapping_add(1), 10, 10),
        oracle_equivalence_suite(a.seed, 100),
    ];
    let text = match a.sink.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&reports),
        Format::Text | Format::Csv => reports
            .iter()
            .map(|r| {
                let mut line = format!(
                    "{}: {}/{} passed (seed {})",
                    r.suite, r.passed, r.cases, r.seed
                );
                for f in &r.failures {
                    line.push_str("\n  ");
                    line.push_str(f);
                }
                line + "\n"
            })
            .collect(),
    };
    emit(&text, a.sink.output.as_deref())?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.ok()).map(|r| r.suite.as_str()).collect();
    if !failed.is_empty() {
        return Err(CliError::Mismatch(format!("suites failed: {}", failed.join(", "))));
    }
    Ok(())
}

fn run_normalize(a: &NormalizeArgs) -> Result<(), CliError> {
    let p = load(&a.input)?;
    emit(&(p.to_file().to_json() + "\n"), a.sink.output.as_deref())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Problem(format!("--threads {n}: {e}")))?;
    }
    match &cli.command {
        Command::Series(a) => run_series(a),
        Command::Mu(a) => run_mu(a),
        Command::PaperTable(a) => run_table(a),
        Command::Check(a) => run_check(a),
        Command::Normalize(a) => run_normalize(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hlambda: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
