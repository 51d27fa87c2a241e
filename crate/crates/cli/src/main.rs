//! `npslab`: run the generalized NPS sort and its statistics from the shell.
//!
//! Exit codes: 0 success, 2 input error, 3 capacity exceeded, 4 invariant
//! violation (including any failed `verify` check).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use npslab::report::{aggregate_json, write_csv};
use npslab::verify::{default_orders, verify, Check, OrderSpec, VerifyConfig};
use npslab::{aggregate_exhaustive, aggregate_sampled, Error, Int, Partition, Sorter, Tableau};

const DEFAULT_CAP: usize = 10;

#[derive(Parser)]
#[command(name = "npslab", version, about = "Generalized Novelli-Pak-Stoyanovskii sorting on Young tableaux")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sort one filling and print its trace.
    Sort(SortArgs),
    /// Aggregate statistics over all (or sampled) fillings of a shape.
    Stats(StatsArgs),
    /// Check the identities over a shape for one or more orders.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    /// Partition, comma separated, e.g. `3,2,1`.
    #[arg(long)]
    shape: String,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run exhaustively even above the size cap.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SortArgs {
    #[arg(long)]
    shape: String,
    /// column, row, strip:<R/C string> or file:<path>.
    #[arg(long, default_value = "column")]
    order: String,
    /// Tableau JSON (`{"shape":…,"rows":…}` or just the rows); `-` reads stdin.
    #[arg(long)]
    input: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "column")]
    order: String,
    /// `exhaustive`, `sample`, or `sample:<N>:seed=<S>`.
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Orders to check (repeatable); default column, row and every strip order.
    #[arg(long)]
    order: Vec<String>,
    /// Comma separated checks; default all.
    #[arg(long, value_delimiter = ',')]
    which: Vec<String>,
    /// Append the gcd-conjecture log lines here as well as to stderr.
    #[arg(long)]
    log: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Usage(String),
    ChecksFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Sort(a) => run_sort(a),
        Command::Stats(a) => run_stats(a),
        Command::Verify(a) => run_verify(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::ChecksFailed(m) => (4, m),
                Failure::Lib(e) => {
                    let code = match e {
                        Error::Capacity(_) => 3,
                        Error::InvariantViolation(_) => 4,
                        _ => 2,
                    };
                    (code, e.to_string())
                }
            };
            eprintln!("npslab: {msg}");
            ExitCode::from(code)
        }
    }
}

fn parse_shape(s: &str) -> Outcome<Partition> {
    Ok(s.parse::<Partition>()?)
}

fn cap() -> Outcome<usize> {
    match std::env::var("NPSLAB_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("NPSLAB_CAP must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn check_cap(p: &Partition, force: bool) -> Outcome {
    let cap = cap()?;
    if p.size() > cap && !force {
        return Err(Error::Capacity(format!(
            "exhaustive run over n = {} exceeds the cap of {cap}; use --force or NPSLAB_CAP",
            p.size()
        ))
        .into());
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Outcome {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes(v: &serde_json::Value) -> Outcome<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(v).map_err(Error::from)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn read_tableau(src: &str, shape: &Partition) -> Outcome<Tableau> {
    let text = if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(src)?
    };
    let t = match serde_json::from_str::<Tableau>(&text) {
        Ok(t) => t,
        Err(first) => match serde_json::from_str::<Vec<Vec<usize>>>(&text) {
            Ok(rows) => Tableau::from_rows(&rows)?,
            Err(_) => return Err(Error::Parse(format!("{src}: {first}")).into()),
        },
    };
    if t.shape() != shape {
        return Err(Error::Parse(format!("input has shape {} but --shape is {shape}", t.shape())).into());
    }
    Ok(t)
}

fn run_sort(a: SortArgs) -> Outcome {
    let p = parse_shape(&a.shape)?;
    let u = a.order.parse::<OrderSpec>()?.resolve(&p)?;
    let t = read_tableau(&a.input, &p)?;
    let trace = Sorter::new(&u)?.sort(&t)?;
    let v = serde_json::to_value(&trace).map_err(Error::from)?;
    emit(&a.out, &json_bytes(&v)?)
}

enum RunMode {
    Exhaustive,
    Sample { samples: u64, seed: u64 },
}

fn parse_mode(mode: &str, samples: Option<u64>, seed: Option<u64>) -> Outcome<RunMode> {
    let bad = || Failure::Usage(format!("bad --mode {mode:?}; expected exhaustive, sample or sample:<N>:seed=<S>"));
    match mode {
        "exhaustive" => Ok(RunMode::Exhaustive),
        "sample" => {
            let samples = samples.ok_or_else(|| Failure::Usage("sample mode needs --samples".into()))?;
            let seed = seed.ok_or_else(|| Failure::Usage("sample mode needs an explicit --seed".into()))?;
            if samples == 0 {
                return Err(Failure::Usage("--samples must be at least 1".into()));
            }
            Ok(RunMode::Sample { samples, seed })
        }
        _ => {
            let rest = mode.strip_prefix("sample:").ok_or_else(bad)?;
            let (n, s) = rest.split_once(':').ok_or_else(bad)?;
            let n: u64 = n.parse().map_err(|_| bad())?;
            let s: u64 = s.strip_prefix("seed=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            parse_mode("sample", Some(n), Some(s))
        }
    }
}

fn run_stats(a: StatsArgs) -> Outcome {
    let p = parse_shape(&a.common.shape)?;
    let spec = a.order.parse::<OrderSpec>()?;
    let u = spec.resolve(&p)?;
    let agg = match parse_mode(&a.mode, a.samples, a.seed)? {
        RunMode::Exhaustive => {
            check_cap(&p, a.common.force)?;
            let agg = aggregate_exhaustive::<Int>(&u, a.common.workers)?;
            agg.check_invariants()?;
            agg
        }
        RunMode::Sample { samples, seed } => aggregate_sampled::<Int>(&u, samples, seed, a.common.workers)?,
    };
    let bytes = match a.format {
        Format::Json => json_bytes(&aggregate_json(&agg, &spec.to_string())?)?,
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&agg, &mut buf)?;
            buf
        }
    };
    emit(&a.common.out, &bytes)
}

fn run_verify(a: VerifyArgs) -> Outcome {
    let p = parse_shape(&a.common.shape)?;
    check_cap(&p, a.common.force)?;
    let orders = if a.order.is_empty() {
        default_orders(&p)
    } else {
        a.order
            .iter()
            .map(|s| {
                let spec = s.parse::<OrderSpec>()?;
                Ok((spec.to_string(), spec.resolve(&p)?))
            })
            .collect::<Result<Vec<_>, Error>>()?
    };
    let which = if a.which.is_empty() {
        Check::ALL.to_vec()
    } else {
        a.which.iter().map(|s| s.parse::<Check>()).collect::<Result<Vec<_>, _>>()?
    };
    let cfg = VerifyConfig { which, workers: a.common.workers, ..VerifyConfig::default() };
    let report = verify::<Int>(&p, &orders, &cfg)?;
    for line in &report.conj66_log {
        eprintln!("{line}");
    }
    if let Some(path) = &a.log {
        let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
        for line in &report.conj66_log {
            writeln!(f, "{line}")?;
        }
    }
    emit(&a.common.out, &json_bytes(&report.to_json())?)?;
    if !report.passed() {
        let failed: Vec<String> =
            report.orders.iter().flat_map(|o| o.failed.iter().map(move |c| format!("{c} on {}", o.order))).collect();
        return Err(Failure::ChecksFailed(format!("checks failed: {}", failed.join(", "))));
    }
    Ok(())
}
