//! `marks`: conjugacy classes of subgroups and tables of marks from the
//! command line.
//!
//! Exit codes: 0 success, 2 input error, 3 unsupported path (for example a
//! non-solvable group without a base pattern), 4 validation failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use marks::catalog::{lookup, CatalogEntry};
use marks::conjugacy::normalizer;
use marks::document::PatternDocument;
use marks::engine::{table_of_marks_by_cyclic_extension, table_of_marks_solvable, table_of_marks_solvable_chain};
use marks::extension::{all_subgroup_classes_solvable, subgroups_by_cyclic_extension, ExtensionContext};
use marks::oracle::{subgroup_classes_brute, table_of_marks_brute_with_cap, DEFAULT_MAX_ORDER};
use marks::series::is_solvable;
use marks::verify::verify_pattern;
use marks::{Group, Permutation, SubgroupPattern};

#[derive(Parser)]
#[command(
    name = "marks",
    version,
    about = "Subgroup classes and tables of marks of permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// Catalog name, or the degree when --gens is given.
    group: String,
    /// Generators in cycle notation separated by spaces or semicolons,
    /// e.g. "(1,2) (1,2,3,4)".
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Extension,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the conjugacy classes of subgroups: index, order, class length,
    /// normalizer order.
    Subgroups {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "extension")]
        via: Via,
        /// Pattern file of a normal subgroup of prime index.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Compute the table of marks.
    Tom {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "extension")]
        via: Via,
        /// Pattern file of a normal subgroup of prime index.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a pattern file against the invariants of tables of marks.
    Verify { file: PathBuf },
    /// Time the extension step for catalog groups and print CSV.
    Bench { names: Vec<String> },
}

enum Failure {
    Input(String),
    Unsupported(String),
    Validation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::Validation(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unsupported(m) | Failure::Validation(m) => m,
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Errors from the library after the input was accepted.
fn computation(e: marks::Error) -> Failure {
    match e {
        marks::Error::OrderCap { .. } | marks::Error::NotSolvable | marks::Error::DegreeLimit { .. } => {
            Failure::Unsupported(e.to_string())
        }
        other => Failure::Validation(other.to_string()),
    }
}

const BENCH_DEFAULT: [&str; 7] = ["C2", "S3", "S4", "GL23", "S5", "S6", "L2(32):5"];

fn max_order() -> Outcome<u64> {
    match std::env::var("MARKS_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("MARKS_MAX_ORDER must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn resolve(args: &GroupArgs) -> Outcome<(String, Group)> {
    match &args.gens {
        Some(gens) => {
            let degree: usize = args
                .group
                .parse()
                .map_err(|_| Failure::Input(format!("with --gens the argument is a degree, got {:?}", args.group)))?;
            let gens = gens
                .split(|c: char| c.is_whitespace() || c == ';')
                .filter(|w| !w.is_empty())
                .map(|w| Permutation::parse(w, degree))
                .collect::<marks::Result<Vec<_>>>()
                .map_err(input)?;
            Ok(("G".to_string(), Group::new(degree, gens).map_err(input)?))
        }
        None => {
            let entry = lookup(&args.group).ok_or_else(|| Failure::Input(format!("unknown group {:?}", args.group)))?;
            Ok((entry.name.clone(), entry.group().map_err(input)?))
        }
    }
}

fn read_document(path: &Path) -> Outcome<PatternDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        PatternDocument::from_json(&text)
    } else {
        PatternDocument::from_text(&text)
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Loads a base pattern and checks it describes a normal subgroup of prime
/// index of `g` with a valid table.
fn load_base(path: &Path, g: &Group) -> Outcome<SubgroupPattern> {
    let doc = read_document(path)?;
    let base = doc
        .to_pattern()
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    if base.group.degree() != g.degree() {
        return Err(Failure::Validation(format!(
            "base pattern has degree {}, the group has degree {}",
            base.group.degree(),
            g.degree()
        )));
    }
    ExtensionContext::new(g, &base.group).map_err(|e| Failure::Validation(format!("base group: {e}")))?;
    let report = verify_pattern(&base).map_err(computation)?;
    if let Some(v) = report.violations.first() {
        return Err(Failure::Validation(format!("base pattern fails verification: {v}")));
    }
    Ok(base)
}

fn not_solvable(name: &str) -> Failure {
    Failure::Unsupported(format!(
        "{name} is not solvable; pass --base with the pattern of a normal subgroup of prime index, or use --via oracle"
    ))
}

fn cmd_subgroups(args: &GroupArgs, via: Via, base: Option<&Path>) -> Outcome<()> {
    let (name, g) = resolve(args)?;
    let classes = match (via, base) {
        (Via::Oracle, _) => subgroup_classes_brute(&g, max_order()?).map_err(computation)?,
        (Via::Extension, Some(path)) => {
            let base = load_base(path, &g)?;
            let ctx = ExtensionContext::new(&g, &base.group).map_err(computation)?;
            subgroups_by_cyclic_extension(&base.classes, &ctx).map_err(computation)?
        }
        (Via::Extension, None) if is_solvable(&g) => all_subgroup_classes_solvable(&g).map_err(computation)?,
        (Via::Extension, None) => return Err(not_solvable(&name)),
    };
    for (i, h) in classes.iter().enumerate() {
        let n = normalizer(&g, h).map_err(computation)?.order();
        println!("{:>4} {:>8} {:>8} {:>8}", i + 1, h.order(), g.order() / n, n);
    }
    Ok(())
}

fn cmd_tom(args: &GroupArgs, via: Via, base: Option<&Path>, format: Format) -> Outcome<()> {
    let (name, g) = resolve(args)?;
    let pattern = match (via, base) {
        (Via::Oracle, _) => table_of_marks_brute_with_cap(&g, max_order()?).map_err(computation)?,
        (Via::Extension, Some(path)) => {
            let base = load_base(path, &g)?;
            table_of_marks_by_cyclic_extension(&base, &g).map_err(computation)?
        }
        (Via::Extension, None) if is_solvable(&g) => table_of_marks_solvable(&g).map_err(computation)?,
        (Via::Extension, None) => return Err(not_solvable(&name)),
    };
    let doc = PatternDocument::from_pattern(&name, &pattern);
    match format {
        Format::Text => print!("{}", doc.to_text()),
        Format::Json => println!("{}", doc.to_json()),
    }
    Ok(())
}

fn cmd_verify(path: &Path) -> Outcome<()> {
    let doc = read_document(path)?;
    let pattern = doc
        .to_pattern()
        .map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    let report = verify_pattern(&pattern).map_err(computation)?;
    for s in &report.skipped {
        println!("skipped: {s}");
    }
    for v in &report.violations {
        println!("FAIL {v}");
    }
    if report.passed() {
        println!("PASS {}: {} conditions checked", doc.group, report.checked);
        Ok(())
    } else {
        Err(Failure::Validation(format!("{} violations", report.violations.len())))
    }
}

/// One extension step: the pattern below and the timed extension.
fn bench_step(entry: &CatalogEntry) -> Outcome<(usize, SubgroupPattern)> {
    let g = entry.group().map_err(input)?;
    if let Some(base_name) = &entry.base {
        let a = lookup(base_name)
            .ok_or_else(|| Failure::Input(format!("unknown base {base_name}")))?
            .group()
            .map_err(input)?;
        // catalog bases are small enough for the oracle regardless of the cap
        let below = if is_solvable(&a) {
            table_of_marks_solvable(&a)
        } else {
            table_of_marks_brute_with_cap(&a, a.order())
        }
        .map_err(computation)?;
        let start = Instant::now();
        let mut p = table_of_marks_by_cyclic_extension(&below, &g).map_err(computation)?;
        p.stats.millis = start.elapsed().as_millis() as u64;
        return Ok((below.classes.len(), p));
    }
    if !is_solvable(&g) {
        return Err(not_solvable(&entry.name));
    }
    let mut chain = table_of_marks_solvable_chain(&g).map_err(computation)?;
    let top = chain.pop().expect("chain starts with the trivial group");
    let below = chain.last().map_or(0, |p| p.classes.len());
    Ok((below, top))
}

fn cmd_bench(names: &[String]) -> Outcome<()> {
    let names: Vec<String> = if names.is_empty() {
        BENCH_DEFAULT.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let entries = names
        .iter()
        .map(|n| lookup(n).ok_or_else(|| Failure::Input(format!("unknown group {n:?}"))))
        .collect::<Outcome<Vec<_>>>()?;
    let mut out = csv::Writer::from_writer(std::io::stdout());
    let io = |e: csv::Error| Failure::Input(e.to_string());
    out.write_record(["group", "classes_in", "classes_out", "probes", "max_probe", "millis"])
        .map_err(io)?;
    for entry in &entries {
        let (below, p) = bench_step(entry)?;
        out.write_record([
            entry.name.clone(),
            below.to_string(),
            p.classes.len().to_string(),
            p.stats.probes.to_string(),
            p.stats.max_probe.to_string(),
            p.stats.millis.to_string(),
        ])
        .map_err(io)?;
        out.flush().map_err(|e| Failure::Input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Subgroups { group, via, base } => cmd_subgroups(group, *via, base.as_deref()),
        Command::Tom {
            group,
            via,
            base,
            format,
        } => cmd_tom(group, *via, base.as_deref(), *format),
        Command::Verify { file } => cmd_verify(file),
        Command::Bench { names } => cmd_bench(names),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("marks: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
