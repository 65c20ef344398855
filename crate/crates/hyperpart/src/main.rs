//! Command-line interface: exact counts, generating series, vector
//! partition tables, growth constants and the inequality verification
//! suite, with persistent result caching.
//!
//! Exit codes: 0 success, 1 verification failure or cache conflict,
//! 2 node budget exhausted, 64 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hyperpart::bounds::{constants, crossing_table, verify_suite};
use hyperpart::cache::CountCache;
use hyperpart::enumerate::{
    count_a, count_b, count_by_corner_hook, count_by_cvector, count_p, count_p_tilde,
    enumerate_downsets, RegionConstraint, SearchConfig, DEFAULT_NODE_BUDGET,
};
use hyperpart::output::{
    constants_output, count_output, crossing_output, json_line, report_exit_ok, report_output,
    series_output, table_output, Format,
};
use hyperpart::series::{macmahon_numbers, partition_numbers_oracle, vector_partition_table};
use hyperpart::{Error, Result};

#[derive(Parser)]
#[command(name = "hyperpart", version, about = "Exact counting for higher-dimensional partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count partition families exactly (p, ptilde, a, b, chv, cvec)
    Count(CountArgs),
    /// Print coefficients of a generating series
    Series(SeriesArgs),
    /// Vector partition numbers: a table within caps, or one diagonal value
    Vector(VectorArgs),
    /// Growth constants per dimension, or the alpha/gamma crossing table
    Bounds(BoundsArgs),
    /// Run the inequality verification suite for one dimension
    Verify(VerifyArgs),
    /// Stream every diagram satisfying a region constraint
    Enumerate(EnumerateArgs),
}

#[derive(Args)]
struct CountArgs {
    /// One of: p, ptilde (count by volume), a, b (simplex families),
    /// chv (by corner-hook volume), cvec (by c-vector, needs --target)
    #[arg(long)]
    family: String,
    #[arg(long)]
    d: u32,
    /// Volume or corner-hook index (families p, ptilde, chv)
    #[arg(long)]
    n: Option<u64>,
    /// Simplex size (families a, b)
    #[arg(long)]
    k: Option<u32>,
    /// Comma-separated c-vector target (family cvec)
    #[arg(long)]
    target: Option<String>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Cache directory (default: $HYPERPART_CACHE_DIR, then the platform cache dir)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Recompute even on a cache hit and verify the stored value
    #[arg(long)]
    recompute: bool,
}

#[derive(Args)]
struct SeriesArgs {
    /// One of: macmahon, partitions
    #[arg(long)]
    kind: String,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    order: u64,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VectorArgs {
    #[arg(long)]
    d: u32,
    /// Comma-separated caps, e.g. 4,4
    #[arg(long)]
    caps: Option<String>,
    /// Diagonal value p(n, ..., n)
    #[arg(long)]
    diagonal: Option<u64>,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BoundsArgs {
    /// Constants for a single dimension
    #[arg(long)]
    d: Option<u32>,
    /// Crossing table for dimensions 1..=d_max
    #[arg(long)]
    d_max: Option<u32>,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n_max: u64,
    #[arg(long)]
    k_max: u32,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    d: u32,
    /// Diagrams of volume at most this
    #[arg(long)]
    volume: Option<u64>,
    /// Diagrams inside the simplex x_1 + ... + x_{d+1} <= k
    #[arg(long)]
    simplex: Option<u32>,
    /// Diagrams inside a box, comma-separated side bounds
    #[arg(long, name = "box")]
    box_bounds: Option<String>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(64)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(Outcome { stdout, ok }) => {
            print!("{stdout}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => 2,
                Error::InvalidArgument(_) | Error::MalformedInput(_) => 64,
                _ => 1,
            })
        }
    }
}

struct Outcome {
    stdout: String,
    ok: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, ok: true }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Count(args) => run_count(args),
        Command::Series(args) => run_series(args),
        Command::Vector(args) => run_vector(args),
        Command::Bounds(args) => run_bounds(args),
        Command::Verify(args) => run_verify(args),
        Command::Enumerate(args) => run_enumerate(args),
    }
}

fn run_count(args: CountArgs) -> Result<Outcome> {
    let config = SearchConfig { node_budget: args.budget, jobs: args.jobs.max(1) };
    let dim = args.d as usize;
    let need_n = || {
        args.n.ok_or_else(|| {
            Error::InvalidArgument(format!("family {} needs --n", args.family))
        })
    };
    let need_k = || {
        args.k.ok_or_else(|| {
            Error::InvalidArgument(format!("family {} needs --k", args.family))
        })
    };
    let (index, compute): (serde_json::Value, Box<dyn FnOnce() -> Result<String>>) =
        match args.family.as_str() {
            "p" => {
                let n = need_n()?;
                (json!(n), Box::new(move || Ok(count_p(dim, n, &config)?.to_string())))
            }
            "ptilde" => {
                let n = need_n()?;
                (json!(n), Box::new(move || Ok(count_p_tilde(dim, n, &config)?.to_string())))
            }
            "a" => {
                let k = need_k()?;
                (json!(k), Box::new(move || Ok(count_a(dim, k, &config)?.to_string())))
            }
            "b" => {
                let k = need_k()?;
                (json!(k), Box::new(move || Ok(count_b(dim, k, &config)?.to_string())))
            }
            "chv" => {
                let n = need_n()?;
                (
                    json!(n),
                    Box::new(move || Ok(count_by_corner_hook(dim, n, &config)?.to_string())),
                )
            }
            "cvec" => {
                let target = parse_list_u64(args.target.as_deref().ok_or_else(|| {
                    Error::InvalidArgument("family cvec needs --target".into())
                })?)?;
                (
                    json!(target.clone()),
                    Box::new(move || {
                        Ok(count_by_cvector(dim, &target, &config)?.to_string())
                    }),
                )
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown family {other:?}; expected p, ptilde, a, b, chv or cvec"
                )))
            }
        };

    let cache = CountCache::open(CountCache::resolve_dir(args.cache_dir.as_deref()))?;
    let cached = cache.lookup(&args.family, args.d, &index)?;
    let value = match (cached, args.recompute) {
        (Some(record), false) => record.value,
        (existing, _) => {
            let fresh = compute()?;
            // store() compares against any existing record and aborts on
            // disagreement
            cache.store(&args.family, args.d, &index, &fresh)?;
            if let Some(record) = existing {
                debug_assert_eq!(record.value, fresh);
            }
            fresh
        }
    };
    Ok(Outcome::ok(count_output(&args.family, args.d, &index, &value, args.format)))
}

fn run_series(args: SeriesArgs) -> Result<Outcome> {
    let series = match args.kind.as_str() {
        "macmahon" => {
            let d = args.d.ok_or_else(|| {
                Error::InvalidArgument("series --kind macmahon needs --d".into())
            })?;
            if d < 1 {
                return Err(Error::InvalidArgument("dimension must be >= 1".into()));
            }
            macmahon_numbers(d, args.order)
        }
        "partitions" => partition_numbers_oracle(args.order),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown series kind {other:?}; expected macmahon or partitions"
            )))
        }
    };
    Ok(Outcome::ok(series_output(&args.kind, args.d, &series, args.format)))
}

fn run_vector(args: VectorArgs) -> Result<Outcome> {
    let dim = args.d as usize;
    match (&args.caps, args.diagonal) {
        (Some(caps), None) => {
            let caps = parse_list_u64(caps)?;
            let table = vector_partition_table(dim, &caps)?;
            Ok(Outcome::ok(table_output(&table, args.format)))
        }
        (None, Some(n)) => {
            let value = hyperpart::series::vector_partition_diagonal(dim, n)?;
            let out = match args.format {
                Format::Text => format!("{value}\n"),
                Format::Csv => format!("d,n,value\n{},{n},{value}\n", args.d),
                Format::Json => json_line(&json!({
                    "d": args.d,
                    "kind": "vector-diagonal",
                    "n": n,
                    "value": value.to_string(),
                })),
            };
            Ok(Outcome::ok(out))
        }
        _ => Err(Error::InvalidArgument(
            "vector needs exactly one of --caps or --diagonal".into(),
        )),
    }
}

fn run_bounds(args: BoundsArgs) -> Result<Outcome> {
    match (args.d, args.d_max) {
        (Some(d), None) => {
            let c = constants(d)?;
            Ok(Outcome::ok(constants_output(&[c], args.format)))
        }
        (None, Some(d_max)) => {
            let rows = crossing_table(d_max)?;
            Ok(Outcome::ok(crossing_output(&rows, args.format)))
        }
        _ => Err(Error::InvalidArgument(
            "bounds needs exactly one of --d or --d-max".into(),
        )),
    }
}

fn run_verify(args: VerifyArgs) -> Result<Outcome> {
    let config = SearchConfig { node_budget: args.budget, jobs: args.jobs.max(1) };
    let report = verify_suite(args.d, args.n_max, args.k_max, &config)?;
    Ok(Outcome {
        stdout: report_output(&report, args.format),
        ok: report_exit_ok(&report),
    })
}

fn run_enumerate(args: EnumerateArgs) -> Result<Outcome> {
    let constraint = match (args.volume, args.simplex, &args.box_bounds) {
        (Some(n), None, None) => RegionConstraint::VolumeBudget(n),
        (None, Some(k), None) => RegionConstraint::Simplex(k),
        (None, None, Some(bounds)) => {
            let bounds64 = parse_list_u64(bounds)?;
            let mut sides = Vec::with_capacity(bounds64.len());
            for b in bounds64 {
                sides.push(u32::try_from(b).map_err(|_| {
                    Error::InvalidArgument("box bound too large".into())
                })?);
            }
            RegionConstraint::BoxBounds(sides)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "enumerate needs exactly one of --volume, --simplex or --box".into(),
            ))
        }
    };
    let config = SearchConfig::with_budget(args.budget);
    let mut out = String::new();
    if args.format == Format::Csv {
        out.push_str("volume,cells\n");
    }
    for item in enumerate_downsets(args.d as usize, &constraint, &config)? {
        let diagram = item?;
        match args.format {
            Format::Json => out.push_str(&json_line(&diagram.to_json())),
            Format::Text => {
                let cells: Vec<String> = diagram
                    .cells()
                    .iter()
                    .map(|c| {
                        c.coords()
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                out.push_str(&format!("{{{}}}\n", cells.join(" ")));
            }
            Format::Csv => {
                let cells: Vec<String> = diagram
                    .cells()
                    .iter()
                    .map(|c| {
                        c.coords()
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(":")
                    })
                    .collect();
                out.push_str(&format!("{},{}\n", diagram.len(), cells.join(";")));
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn parse_list_u64(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("bad integer {part:?} in list")))
        })
        .collect()
}
