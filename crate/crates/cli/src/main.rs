//! `arbo`: enumerate, convert, sample and analyse relaxed binary trees of
//! right height at most one and plane increasing trees.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage error, 3 size guard
//! refusal, 4 malformed input data.

mod check;

use std::io::{self, BufRead, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use arbo::bijection::{increasing_to_relaxed, relaxed_to_increasing};
use arbo::enumerate::{partition, Codes, SizeGuard, DEFAULT_MAX_SIZE};
use arbo::sample::{stream_increasing, stream_relaxed};
use arbo::series::{egf_series, Family};
use arbo::stats::{exact_distribution, sampled_distribution, Distribution, ParamId};
use arbo::subclass::{count_members, profile, SubclassId};
use arbo::trees::{decode, parse, AnyTree, PlaneIncreasingTree};

#[derive(Parser)]
#[command(name = "arbo", version, about = "Relaxed binary trees and plane increasing trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every tree of a size as JSON lines
    Enumerate(EnumerateArgs),
    /// Convert JSON lines from stdin through the bijection
    Map {
        #[arg(long, value_enum)]
        dir: Direction,
    },
    /// Print uniformly random trees as JSON lines
    Sample(SampleArgs),
    /// Distribution of a tree parameter
    Stats(StatsArgs),
    /// Coefficients of a generating function, one per line
    Series(SeriesArgs),
    /// Count subclass members among all relaxed trees of a size
    Classify(ClassifyArgs),
    /// Run a verification suite and print a pass/fail table
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Increasing,
    Relaxed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    R2i,
    I2r,
}

#[derive(Args)]
struct GuardArgs {
    /// Ignore the enumeration size bound
    #[arg(long)]
    force: bool,
    /// Largest size enumerated without --force
    #[arg(long, env = "ARBO_MAX_SIZE", default_value_t = DEFAULT_MAX_SIZE, hide_env_values = true)]
    max_enumerate: usize,
}

impl GuardArgs {
    fn guard(&self) -> SizeGuard {
        if self.force {
            SizeGuard::unbounded()
        } else {
            SizeGuard { bound: self.max_enumerate }
        }
    }
}

#[derive(Args)]
struct Parallel {
    /// Worker threads (defaults to all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Emit results as workers finish instead of in canonical order
    #[arg(long)]
    unordered: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    size: usize,
    /// Keep only relaxed trees in this subclass (kind relaxed or increasing
    /// via the bijection)
    #[arg(long)]
    class: Option<SubclassId>,
    /// Stop after this many trees
    #[arg(long)]
    limit: Option<u64>,
    #[command(flatten)]
    guard: GuardArgs,
    #[command(flatten)]
    parallel: Parallel,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    parallel: Parallel,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct StatsArgs {
    /// level0_nodes, branches, max_young_leaf_insertions, dominating_young_leaves,
    /// depth_of_last, leaf_count, root_degree, height or outdegree_histogram
    #[arg(long)]
    param: ParamId,
    #[arg(long)]
    size: usize,
    /// Aggregate over all trees of the size
    #[arg(long, conflicts_with_all = ["samples", "seed"], required_unless_present = "samples")]
    exhaustive: bool,
    /// Number of uniform samples
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0, requires = "samples")]
    seed: u64,
    #[arg(long, conflicts_with = "json")]
    csv: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    guard: GuardArgs,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesOutput {
    Counts,
    Egf,
}

#[derive(Args)]
struct SeriesArgs {
    /// ALL, R1..R10 or T1..T12
    #[arg(long)]
    class: Family,
    /// Largest index printed; indices 0..=terms
    #[arg(long)]
    terms: usize,
    #[arg(long = "as", value_enum, default_value = "counts")]
    output: SeriesOutput,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    size: usize,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    class: Option<SubclassId>,
    #[arg(long)]
    all: bool,
    /// Also print every member as a JSON line (single class only)
    #[arg(long, requires = "class")]
    witness: bool,
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    guard: GuardArgs,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    suite: check::Suite,
    #[arg(long, default_value_t = 6)]
    max_size: usize,
    #[command(flatten)]
    guard: GuardArgs,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Guard(String),
    Data(String),
    Io(io::Error),
    Check,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out<'a> = BufWriter<io::StdoutLock<'a>>;

fn build_pool(workers: Option<usize>) -> Result<Option<rayon::ThreadPool>, Failure> {
    match workers {
        None => Ok(None),
        Some(0) => Err(Failure::Usage("--workers must be positive".into())),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map(Some)
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn within<T: Send>(pool: &Option<rayon::ThreadPool>, f: impl FnOnce() -> T + Send) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn run_in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    Ok(within(&build_pool(workers)?, f))
}

/// Runs `job` on each batch in parallel and writes its lines, in batch order
/// or, when `unordered`, in completion order.
fn emit_batches<B: Sync>(
    pool: &Option<rayon::ThreadPool>,
    batches: &[B],
    unordered: bool,
    mut limit: u64,
    job: impl Fn(&B) -> Vec<String> + Sync,
    out: &mut Out,
) -> Result<(), Failure> {
    if limit == 0 {
        return Ok(());
    }
    let width = within(pool, rayon::current_num_threads) * 4;
    for group in batches.chunks(width) {
        let lines: Vec<Vec<String>> = within(pool, || {
            if unordered {
                let (tx, rx) = std::sync::mpsc::channel();
                group.par_iter().for_each_with(tx, |tx, b| {
                    let _ = tx.send(job(b));
                });
                rx.into_iter().collect()
            } else {
                group.par_iter().map(&job).collect()
            }
        });
        for line in lines.iter().flatten() {
            writeln!(out, "{line}")?;
            limit -= 1;
            if limit == 0 {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn guard_check(guard: SizeGuard, size: usize) -> Result<(), Failure> {
    guard.check(size).map_err(|e| Failure::Guard(e.to_string()))
}

fn render(kind: Kind, t: PlaneIncreasingTree) -> String {
    match kind {
        Kind::Increasing => t.to_json(),
        Kind::Relaxed => increasing_to_relaxed(&t).to_json(),
    }
}

/// Serialized trees with code ranks in `[a, b)`, filtered by class.
fn enumerate_chunk(args: &EnumerateArgs, a: u64, b: u64) -> Vec<String> {
    Codes::range(args.size, a, b)
        .map(|c| decode(&c))
        .filter(|t| match args.class {
            None => true,
            Some(c) => {
                let r = increasing_to_relaxed(t);
                profile(&r).expect("valid by construction").satisfies(&arbo::series::ClassSpec::of(c))
            }
        })
        .map(|t| render(args.kind, t))
        .collect()
}

fn cmd_enumerate(args: EnumerateArgs, out: &mut Out) -> Result<(), Failure> {
    guard_check(args.guard.guard(), args.size)?;
    let total = arbo::enumerate::count_all_u64(args.size)
        .ok_or_else(|| Failure::Guard(format!("size {} exceeds the addressable code space", args.size)))?;
    const CHUNK: u64 = 8192;
    let chunks = partition(args.size, total.div_ceil(CHUNK) as usize);
    let pool = build_pool(args.parallel.workers)?;
    let limit = args.limit.unwrap_or(u64::MAX);
    emit_batches(&pool, &chunks, args.parallel.unordered, limit, |&(a, b)| enumerate_chunk(&args, a, b), out)
}

fn cmd_map(dir: Direction, out: &mut Out) -> Result<(), Failure> {
    let stdin = io::stdin();
    for (i, line) in stdin.lock().lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |e: String| Failure::Data(format!("line {}: {e}", i + 1));
        let converted = match (dir, parse(&line).map_err(|e| bad(e.to_string()))?) {
            (Direction::R2i, AnyTree::Relaxed(t)) => relaxed_to_increasing(&t).map_err(|e| bad(e.to_string()))?.to_json(),
            (Direction::I2r, AnyTree::Increasing(t)) => increasing_to_relaxed(&t).to_json(),
            (Direction::R2i, AnyTree::Increasing(_)) => return Err(bad("expected a relaxed tree".into())),
            (Direction::I2r, AnyTree::Relaxed(_)) => return Err(bad("expected an increasing tree".into())),
        };
        writeln!(out, "{converted}")?;
    }
    Ok(())
}

fn cmd_sample(args: SampleArgs, out: &mut Out) -> Result<(), Failure> {
    let (n, seed, kind) = (args.size, args.seed, args.kind);
    const BATCH: u64 = 256;
    let batches: Vec<(u64, u64)> =
        (0..args.count.div_ceil(BATCH)).map(|b| (b * BATCH, ((b + 1) * BATCH).min(args.count))).collect();
    let pool = build_pool(args.parallel.workers)?;
    let job = |&(a, b): &(u64, u64)| -> Vec<String> {
        (a..b)
            .map(|j| match kind {
                Kind::Increasing => stream_increasing(n, seed, j).to_json(),
                Kind::Relaxed => stream_relaxed(n, seed, j).to_json(),
            })
            .collect()
    };
    emit_batches(&pool, &batches, args.parallel.unordered, u64::MAX, job, out)
}

fn write_distribution(d: &Distribution, format: Format, out: &mut Out) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for (v, c) in &d.counts {
                writeln!(out, "{v}\t{c}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["value", "count"]).map_err(|e| Failure::Io(e.into()))?;
            for (v, c) in &d.counts {
                w.serialize((v, c)).map_err(|e| Failure::Io(e.into()))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut doc = serde_json::to_value(d).expect("serializable");
            if d.total() > 0 {
                doc["mean"] = d.mean().into();
                doc["variance"] = d.variance().into();
                if let (Some(m), Some(v)) = (d.exact_mean(), d.exact_variance()) {
                    doc["exact_mean"] = m.to_string().into();
                    doc["exact_variance"] = v.to_string().into();
                }
            }
            writeln!(out, "{doc}")?;
        }
    }
    Ok(())
}

fn cmd_stats(args: StatsArgs, out: &mut Out) -> Result<(), Failure> {
    let format = if args.json {
        Format::Json
    } else if args.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let dist = match args.samples {
        Some(samples) => run_in_pool(args.workers, || sampled_distribution(args.param, args.size, samples, args.seed))?,
        None => {
            guard_check(args.guard.guard(), args.size)?;
            let guard = args.guard.guard();
            run_in_pool(args.workers, || exact_distribution(args.param, args.size, guard))?
                .map_err(|e| Failure::Guard(e.to_string()))?
        }
    };
    write_distribution(&dist, format, out)
}

fn cmd_series(args: SeriesArgs, out: &mut Out) -> Result<(), Failure> {
    let series = egf_series(args.class, args.terms).map_err(|e| Failure::Data(e.to_string()))?;
    match args.output {
        SeriesOutput::Counts => {
            for c in series.egf_counts().map_err(|e| Failure::Data(e.to_string()))? {
                writeln!(out, "{c}")?;
            }
        }
        SeriesOutput::Egf => {
            for c in series.coeffs() {
                writeln!(out, "{c}")?;
            }
        }
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs, out: &mut Out) -> Result<(), Failure> {
    let guard = args.guard.guard();
    guard_check(guard, args.size)?;
    let classes: Vec<SubclassId> = match args.class {
        Some(c) => vec![c],
        None => SubclassId::ALL.to_vec(),
    };
    let counts = run_in_pool(args.workers, || count_members(args.size, &classes, guard))?
        .map_err(|e| Failure::Guard(e.to_string()))?;
    if args.csv {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(["class", "size", "count"]).map_err(|e| Failure::Io(e.into()))?;
        for (c, k) in classes.iter().zip(&counts) {
            w.serialize((c.name(), args.size, k)).map_err(|e| Failure::Io(e.into()))?;
        }
        w.flush()?;
    } else {
        for (c, k) in classes.iter().zip(&counts) {
            writeln!(out, "{c}\t{k}")?;
        }
    }
    if args.witness {
        let spec = arbo::series::ClassSpec::of(classes[0]);
        for t in arbo::enumerate::enumerate_relaxed(args.size, guard).map_err(|e| Failure::Guard(e.to_string()))? {
            if profile(&t).expect("valid by construction").satisfies(&spec) {
                writeln!(out, "{}", t.to_json())?;
            }
        }
    }
    Ok(())
}

fn cmd_check(args: CheckArgs, out: &mut Out) -> Result<(), Failure> {
    let guard = args.guard.guard();
    guard_check(guard, args.max_size)?;
    let rows = run_in_pool(args.workers, || check::run(args.suite, args.max_size, guard))?;
    let mut all = true;
    for row in &rows {
        all &= row.pass;
        writeln!(out, "{}", row)?;
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a, &mut out),
        Command::Map { dir } => cmd_map(dir, &mut out),
        Command::Sample(a) => cmd_sample(a, &mut out),
        Command::Stats(a) => cmd_stats(a, &mut out),
        Command::Series(a) => cmd_series(a, &mut out),
        Command::Classify(a) => cmd_classify(a, &mut out),
        Command::Check(a) => cmd_check(a, &mut out),
    }?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Check => (1, "one or more checks failed".to_string()),
                Failure::Usage(m) => (2, m),
                Failure::Guard(m) => (3, m),
                Failure::Data(m) => (4, m),
                Failure::Io(e) => (4, e.to_string()),
            };
            eprintln!("arbo: {msg}");
            ExitCode::from(code)
        }
    }
}
