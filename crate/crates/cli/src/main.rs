use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghz_core::document::{parse_document, render_table, to_json, ParadoxDocument};
use ghz_core::family::{catalog_entry, catalog_names, generate, generate_even_parties, FamilyParams};
use ghz_core::oracle::OracleConfig;
use ghz_core::search::{conjecture_report, run_search, SearchSpec};
use ghz_core::{Dimension, Error, ParadoxTable};

mod report;

#[derive(Parser)]
#[command(name = "ghz", version, about = "Verify, generate and search GHZ paradoxes for qudits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a table (catalog name or JSON document) for the paradox conditions.
    Verify(VerifyArgs),
    /// Emit a table from family parameters or the built-in catalog.
    Generate(GenerateArgs),
    /// Enumerate paradoxes in a bounded region and tally the parity conjecture.
    Search(SearchArgs),
    /// Print a joint eigenbasis of all rows.
    Eigenbasis(EigenbasisArgs),
    /// Compress every party onto a subspace and re-verify.
    Project(ProjectArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog name or path to a JSON document.
    table: String,
    /// Cross-check with dense matrices.
    #[arg(long)]
    oracle: bool,
    /// Report multipartite and dimensional genuineness.
    #[arg(long)]
    genuine: bool,
    /// Refute classical value assignments.
    #[arg(long)]
    lhv: bool,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// `family`, `even-m`, or a catalog name.
    what: String,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long = "M", alias = "parties")]
    parties: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    c: Option<u32>,
    /// Write the JSON document here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the fixed-width table.
    #[arg(long)]
    show: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Family,
    Exhaustive,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "family")]
    mode: Mode,
    /// Dimension range `lo..hi` (inclusive) or a single value.
    #[arg(long)]
    d: String,
    /// Party range `lo..hi` (inclusive) or a single value.
    #[arg(long = "M", alias = "parties")]
    parties: String,
    /// Cap on the exponents a, b, c (family) or entry exponents (exhaustive).
    #[arg(long)]
    exp_max: Option<u32>,
    /// Largest table size in exhaustive mode.
    #[arg(long)]
    maxrows: Option<usize>,
    /// Family mode: also report parameter sets that fail validation.
    #[arg(long)]
    all: bool,
    /// Keep tables that are equal up to party and row order.
    #[arg(long)]
    no_dedupe: bool,
    /// Node budget for exhaustive mode.
    #[arg(long)]
    budget: Option<u64>,
    /// Write JSON-lines results here (`-` for stdout).
    #[arg(long)]
    jsonl: Option<PathBuf>,
}

#[derive(Args)]
struct EigenbasisArgs {
    table: String,
    /// Print at most this many vectors.
    #[arg(long, default_value_t = 16)]
    limit: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProjectArgs {
    table: String,
    /// Spanning vectors for a party subspace, e.g. `1,0,1,0;0,1,0,1`. Give one
    /// to use it for every party, or one per party.
    #[arg(long, required = true)]
    span: Vec<String>,
    #[arg(long)]
    json: bool,
}

/// Failure categories mapped to exit codes.
pub enum Failure {
    /// A requested check ran and the claim failed.
    Claim,
    Input(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

/// Resolves a catalog name or reads a JSON document.
pub fn load_table(spec: &str) -> Result<(ParadoxTable, Option<ParadoxDocument>), Failure> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let doc = parse_document(&text).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
        let table = doc.to_table().map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
        return Ok((table, Some(doc)));
    }
    catalog_entry(spec).map(|t| (t, None)).map_err(|_| {
        Failure::Input(format!(
            "`{spec}` is neither a file nor a catalog entry (known: {})",
            catalog_names().join(", ")
        ))
    })
}

fn parse_range<T: std::str::FromStr>(s: &str, what: &str) -> Result<(T, T), Failure> {
    let bad = || Failure::Input(format!("bad {what} range `{s}` (expected `lo..hi` or a single value)"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let table = match args.what.as_str() {
        "family" => {
            let need = |v: Option<u32>, name: &str| v.ok_or_else(|| Failure::Input(format!("family needs --{name}")));
            let need_us =
                |v: Option<usize>, name: &str| v.ok_or_else(|| Failure::Input(format!("family needs --{name}")));
            let d = Dimension::new(need(args.d, "d")?)?;
            let m = need_us(args.parties, "M")?;
            let n = need_us(args.n, "n")?;
            let q = args.q.unwrap_or(0);
            let (a, b, c) = (need(args.a, "a")?, need(args.b, "b")?, need(args.c, "c")?);
            let fp = FamilyParams::from_segments(m, d, n, q, a, b, c).ok_or_else(|| {
                Failure::Input(format!(
                    "invalid family parameters: M - n - q = {m} - {n} - {q} must be even and non-negative (violates segment-lengths)"
                ))
            })?;
            generate(&fp).map_err(|e| Failure::Input(e.to_string()))?
        }
        "even-m" => {
            let d = args.d.ok_or_else(|| Failure::Input("even-m needs --d".into()))?;
            generate_even_parties(Dimension::new(d)?)?
        }
        name => load_table(name)?.0,
    };
    let json = to_json(&table);
    if let Some(out) = &args.out {
        std::fs::write(out, format!("{json}\n"))?;
    }
    if args.show {
        print!("{}", render_table(&table));
    } else if args.out.is_none() {
        println!("{json}");
    }
    Ok(())
}

fn cmd_search(args: SearchArgs) -> CmdResult {
    let d = parse_range::<u32>(&args.d, "dimension")?;
    let m = parse_range::<usize>(&args.parties, "party")?;
    let mut spec = match args.mode {
        Mode::Family => SearchSpec::family(d, m),
        Mode::Exhaustive => SearchSpec::exhaustive(d, m),
    };
    spec.exp_max = args.exp_max;
    spec.max_rows = args.maxrows;
    spec.include_all = args.all;
    spec.dedupe = !args.no_dedupe;
    if let Some(b) = args.budget {
        spec.node_budget = b;
    }
    spec.validate()?;
    let results = run_search(&spec)?;
    let lines: Vec<String> = results.iter().map(|r| r.to_json_line()).collect();
    match args.jsonl.as_deref() {
        Some(p) if p.as_os_str() == "-" => {
            for l in &lines {
                println!("{l}");
            }
        }
        Some(p) => std::fs::write(p, lines.iter().map(|l| format!("{l}\n")).collect::<String>())?,
        None => {
            for r in &results {
                println!("{}", report::result_line(r));
            }
        }
    }
    let summary = report::search_summary(&results, &conjecture_report(&spec, results.clone()), &spec);
    if args.jsonl.as_deref().is_some_and(|p| p.as_os_str() == "-") {
        eprint!("{summary}");
    } else {
        print!("{summary}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = OracleConfig::from_env();
    let result = match cli.command {
        Command::Verify(a) => report::cmd_verify(&a.table, a.oracle, a.genuine, a.lhv, a.json, &cfg),
        Command::Generate(a) => cmd_generate(a),
        Command::Search(a) => cmd_search(a),
        Command::Eigenbasis(a) => report::cmd_eigenbasis(&a.table, a.limit, a.json, &cfg),
        Command::Project(a) => report::cmd_project(&a.table, &a.span, a.json, &cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
