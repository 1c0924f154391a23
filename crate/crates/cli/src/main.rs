//! `permq`: enumerate, verify, and query pattern-replacement equivalence
//! classes of permutations.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource refusal.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::rc::Rc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permq_core::engine::{
    cache, class_of, enumerate_partition, Census, ClassPartition, EnumerateOptions,
    DEFAULT_CLASS_CAP,
};
use permq_core::verify::{
    check_assembly, check_b_count, check_closed_form, check_creating_primary,
    check_leader_classes, check_parity, check_parity_moves, check_primary_classes,
    check_recurrence, tag_class, CheckKind, CheckReport, DEFAULT_MOVE_SAMPLES,
    DEFAULT_TRIPLE_SAMPLES,
};
use permq_core::{Error as CoreError, Parity, PatternSet, Permutation};

const DEFAULT_SEED: u64 = 330395;
const DEFAULT_CACHE_DIR: &str = ".permq-cache";

#[derive(Parser)]
#[command(
    name = "permq",
    version,
    about = "Pattern-replacement equivalence classes of permutations",
    after_help = "The PERMQ_CACHE environment variable overrides --cache."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate partitions and print one census record per n.
    Enumerate(RunArgs),
    /// Run checkers over a range of n and print one JSON report per check.
    Verify(VerifyArgs),
    /// Print the nontrivial-class counts in OEIS b-file format.
    Sequence(RunArgs),
    /// Print the equivalence class of one permutation (targeted BFS).
    Class(ClassArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Inclusive range of lengths, e.g. "7..9" or "7"; endpoints in [2, 12].
    #[arg(long = "n", value_parser = parse_n_range)]
    n: NRange,

    /// Same-length patterns, e.g. "1234,3412".
    #[arg(long, default_value = "1234,3412")]
    patterns: String,

    /// Worker threads for enumeration: a number or "auto".
    #[arg(long, default_value = "auto", value_parser = parse_workers)]
    workers: Workers,

    /// Partition cache directory.
    #[arg(long, default_value = DEFAULT_CACHE_DIR)]
    cache: PathBuf,

    /// Seed for the sampling checkers.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Permit n = 12 despite its ~1.9 GiB union-find.
    #[arg(long = "allow-big-n")]
    allow_big_n: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: RunArgs,

    /// Comma-separated check names, or "all".
    #[arg(long, default_value = "all")]
    checks: String,
}

#[derive(Args)]
struct ClassArgs {
    /// The permutation, comma-separated ("7,1,6,2,4,3,5") or compact for
    /// n <= 9 ("7162435").
    #[arg(long)]
    perm: String,

    /// Same-length patterns, e.g. "1234,3412".
    #[arg(long, default_value = "1234,3412")]
    patterns: String,

    /// Abort after exploring this many states.
    #[arg(long = "class-cap", default_value_t = DEFAULT_CLASS_CAP)]
    class_cap: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy)]
struct NRange {
    lo: usize,
    hi: usize,
}

impl NRange {
    fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

fn parse_n_range(s: &str) -> Result<NRange, String> {
    let parse_endpoint = |tok: &str| -> Result<usize, String> {
        let n: usize = tok
            .trim()
            .parse()
            .map_err(|_| format!("bad length {tok:?}"))?;
        if !(2..=12).contains(&n) {
            return Err(format!("length {n} outside the supported range 2..12"));
        }
        Ok(n)
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok(NRange { lo: parse_endpoint(lo)?, hi: parse_endpoint(hi)? }),
        None => {
            let n = parse_endpoint(s)?;
            Ok(NRange { lo: n, hi: n })
        }
    }
}

#[derive(Clone, Copy)]
enum Workers {
    Auto,
    Count(usize),
}

fn parse_workers(s: &str) -> Result<Workers, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Workers::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(Workers::Count(n)),
        _ => Err(format!("workers must be a positive number or \"auto\", got {s:?}")),
    }
}

struct RunConfig {
    range: NRange,
    patterns: PatternSet,
    workers: usize,
    cache_dir: PathBuf,
    seed: u64,
    format: OutputFormat,
    allow_big_n: bool,
}

impl RunConfig {
    fn resolve(args: &RunArgs) -> Result<RunConfig, CliError> {
        let patterns: PatternSet = args.patterns.parse()?;
        let workers = match args.workers {
            Workers::Auto => EnumerateOptions::default().resolved_workers(),
            Workers::Count(n) => n,
        };
        let cache_dir = match std::env::var_os("PERMQ_CACHE") {
            Some(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => args.cache.clone(),
        };
        Ok(RunConfig {
            range: args.n,
            patterns,
            workers,
            cache_dir,
            seed: args.seed,
            format: args.format,
            allow_big_n: args.allow_big_n,
        })
    }

    fn engine_options(&self) -> EnumerateOptions {
        EnumerateOptions { workers: self.workers, allow_big_n: self.allow_big_n }
    }
}

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Io(std::io::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(CoreError::Resource(_)) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("permq: error: {err}");
            err.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Enumerate(args) => cmd_enumerate(&RunConfig::resolve(&args)?),
        Command::Verify(args) => {
            let config = RunConfig::resolve(&args.run)?;
            cmd_verify(&config, &args.checks)
        }
        Command::Sequence(args) => cmd_sequence(&RunConfig::resolve(&args)?),
        Command::Class(args) => cmd_class(&args),
    }
}

// ---------------------------------------------------------------------------
// Partition store: load from cache or compute, then cache
// ---------------------------------------------------------------------------

struct Store<'a> {
    config: &'a RunConfig,
    partitions: HashMap<usize, Rc<ClassPartition>>,
}

impl<'a> Store<'a> {
    fn new(config: &'a RunConfig) -> Self {
        Store { config, partitions: HashMap::new() }
    }

    fn partition(&mut self, n: usize) -> Result<Rc<ClassPartition>, CliError> {
        if let Some(part) = self.partitions.get(&n) {
            return Ok(part.clone());
        }
        let dir = &self.config.cache_dir;
        let patterns = &self.config.patterns;
        let cached = match cache::read_partition(dir, n, patterns) {
            Ok(found) => found,
            Err(err) => {
                eprintln!("permq: n={n}: ignoring unreadable cache entry: {err}");
                None
            }
        };
        let part = match cached {
            Some(part) => {
                eprintln!(
                    "permq: n={n}: cache hit ({})",
                    cache::cache_path(dir, n, patterns).display()
                );
                part
            }
            None => {
                let started = Instant::now();
                let part = enumerate_partition(n, patterns, &self.config.engine_options())?;
                eprintln!(
                    "permq: n={n}: enumerated {} states in {:.2}s with {} workers",
                    part.total_states(),
                    started.elapsed().as_secs_f64(),
                    self.config.workers
                );
                match cache::write_partition(dir, &part) {
                    Ok(path) => eprintln!("permq: n={n}: cached to {}", path.display()),
                    Err(err) => eprintln!("permq: n={n}: cache write failed: {err}"),
                }
                part
            }
        };
        let part = Rc::new(part);
        self.partitions.insert(n, part.clone());
        Ok(part)
    }

    fn census(&mut self, n: usize) -> Result<Census, CliError> {
        Ok(self.partition(n)?.census())
    }
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CensusRecord<'a> {
    n: usize,
    patterns: &'a str,
    total_classes: u64,
    nontrivial_classes: u64,
    b_count: u64,
    size_histogram: &'a std::collections::BTreeMap<u32, u64>,
    workers: usize,
}

fn histogram_compact(census: &Census) -> String {
    census
        .size_histogram
        .iter()
        .map(|(size, count)| format!("{size}:{count}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn cmd_enumerate(config: &RunConfig) -> Result<ExitCode, CliError> {
    let mut store = Store::new(config);
    let stdout = std::io::stdout();
    let mut csv_writer = match config.format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(stdout.lock());
            w.write_record([
                "n",
                "patterns",
                "total_classes",
                "nontrivial_classes",
                "b_count",
                "size_histogram",
                "workers",
            ])
            .map_err(io_from_csv)?;
            Some(w)
        }
        _ => None,
    };
    for n in config.range.iter() {
        let census = store.census(n)?;
        let record = CensusRecord {
            n,
            patterns: &census.patterns,
            total_classes: census.total_classes,
            nontrivial_classes: census.nontrivial_classes,
            b_count: census.b_count,
            size_histogram: &census.size_histogram,
            workers: config.workers,
        };
        match config.format {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string(&record).expect("record serializes"));
            }
            OutputFormat::Csv => {
                csv_writer
                    .as_mut()
                    .expect("csv writer initialized")
                    .write_record([
                        record.n.to_string(),
                        record.patterns.to_string(),
                        record.total_classes.to_string(),
                        record.nontrivial_classes.to_string(),
                        record.b_count.to_string(),
                        histogram_compact(&census),
                        record.workers.to_string(),
                    ])
                    .map_err(io_from_csv)?;
            }
            OutputFormat::Plain => {
                println!(
                    "n={} patterns={} total={} nontrivial={} b_count={} histogram={} workers={}",
                    record.n,
                    record.patterns,
                    record.total_classes,
                    record.nontrivial_classes,
                    record.b_count,
                    histogram_compact(&census),
                    record.workers
                );
            }
        }
    }
    if let Some(mut w) = csv_writer {
        w.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

fn io_from_csv(err: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(err))
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn parse_checks(spec: &str) -> Result<Vec<CheckKind>, CliError> {
    if spec.trim() == "all" {
        return Ok(CheckKind::ALL.to_vec());
    }
    spec.split(',')
        .map(|tok| {
            let name = tok.trim();
            CheckKind::from_name(name).ok_or_else(|| {
                let known = CheckKind::ALL
                    .iter()
                    .map(|k| k.name())
                    .collect::<Vec<_>>()
                    .join(", ");
                CliError::Usage(format!("unknown check {name:?}; known checks: {known}"))
            })
        })
        .collect()
}

fn run_check(
    kind: CheckKind,
    n: usize,
    store: &mut Store<'_>,
    config: &RunConfig,
) -> Result<CheckReport, CliError> {
    let report = match kind {
        CheckKind::ClosedForm => {
            let part = store.partition(n)?;
            check_closed_form(&part)?
        }
        CheckKind::Recurrence => {
            let c = store.census(n)?;
            let c1 = store.census(n - 1)?;
            let c2 = store.census(n - 2)?;
            check_recurrence(&c, &c1, &c2)?
        }
        CheckKind::BCount => check_b_count(&store.census(n)?)?,
        CheckKind::LeaderClasses => {
            let part = store.partition(n)?;
            check_leader_classes(&part)?
        }
        CheckKind::Parity => {
            let part = store.partition(n)?;
            check_parity(&part)
        }
        CheckKind::ParityMoves => {
            check_parity_moves(n, &config.patterns, DEFAULT_MOVE_SAMPLES, config.seed)?
        }
        CheckKind::PrimaryClasses => {
            let part = store.partition(n)?;
            check_primary_classes(&part)?
        }
        CheckKind::CreatingPrimary => {
            check_creating_primary(n, DEFAULT_TRIPLE_SAMPLES, config.seed)?
        }
        CheckKind::Assembly => {
            let part = store.partition(n)?;
            check_assembly(&part)?
        }
    };
    Ok(report)
}

fn cmd_verify(config: &RunConfig, checks_spec: &str) -> Result<ExitCode, CliError> {
    let explicit = checks_spec.trim() != "all";
    let kinds = parse_checks(checks_spec)?;
    let quad = config.patterns == PatternSet::quad_standard();

    // With an explicit list, a request outside a check's stated domain is a
    // usage error; with "all", out-of-domain combinations are skipped.
    let mut plan: Vec<(usize, CheckKind)> = Vec::new();
    for n in config.range.iter() {
        for &kind in &kinds {
            let in_domain = n >= kind.min_n() && (quad || !kind.requires_quad());
            if in_domain {
                plan.push((n, kind));
            } else if explicit {
                if n < kind.min_n() {
                    return Err(CliError::Usage(format!(
                        "check {} requires n >= {} (requested {n})",
                        kind.name(),
                        kind.min_n()
                    )));
                }
                return Err(CliError::Usage(format!(
                    "check {} is specific to the 1234,3412 relation (got {})",
                    kind.name(),
                    config.patterns
                )));
            }
        }
    }

    let mut store = Store::new(config);
    let mut all_passed = true;
    for (n, kind) in plan {
        let report = run_check(kind, n, &mut store, config)?;
        all_passed &= report.passed;
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ---------------------------------------------------------------------------
// sequence
// ---------------------------------------------------------------------------

fn cmd_sequence(config: &RunConfig) -> Result<ExitCode, CliError> {
    let mut store = Store::new(config);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for n in config.range.iter() {
        // always the enumerated count, never the closed form
        let census = store.census(n)?;
        writeln!(out, "{n} {}", census.nontrivial_classes)?;
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// class
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ClassListing {
    perm: String,
    patterns: String,
    size: usize,
    parity: String,
    tags: Vec<permq_core::verify::ClassTag>,
    members: Vec<String>,
}

fn cmd_class(args: &ClassArgs) -> Result<ExitCode, CliError> {
    let perm: Permutation = args.perm.parse()?;
    let patterns: PatternSet = args.patterns.parse()?;
    let class = class_of(&perm, &patterns, args.class_cap)?;
    let parities: std::collections::BTreeSet<Parity> =
        class.iter().map(|p| p.inversion_parity()).collect();
    let parity = if parities.len() == 1 {
        parities.iter().next().unwrap().to_string()
    } else {
        "mixed".to_string()
    };
    let tags = tag_class(&class);
    let listing = ClassListing {
        perm: perm.to_string(),
        patterns: patterns.canonical_string(),
        size: class.len(),
        parity,
        tags,
        members: class.iter().map(|p| p.to_string()).collect(),
    };
    match args.format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string(&listing).expect("listing serializes"));
        }
        OutputFormat::Csv => {
            let tags_text = listing
                .tags
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(";");
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            w.write_record(["member", "size", "parity", "tags"]).map_err(io_from_csv)?;
            for member in &listing.members {
                w.write_record([member.as_str(), &listing.size.to_string(), &listing.parity, &tags_text])
                    .map_err(io_from_csv)?;
            }
            w.flush()?;
        }
        OutputFormat::Plain => {
            println!("perm: {}", listing.perm);
            println!("patterns: {}", listing.patterns);
            println!("size: {}", listing.size);
            println!("parity: {}", listing.parity);
            let tags_text = listing
                .tags
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            println!("tags: {tags_text}");
            println!("members:");
            for member in &listing.members {
                println!("{member}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
