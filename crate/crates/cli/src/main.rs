use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pmd_core::lss::{self, PresentationMatrix};
use pmd_core::pmd::{self, PmdDecompositionFile};
use pmd_core::{family, positive, random, tree};
use pmd_core::{Dialect, Error, Hypergraph, ScanMode, SearchBudget, StatusOptions};

#[derive(Parser)]
#[command(name = "pmd", version, about = "Positive matching decompositions and LSS-ideal reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a hypergraph and report its basic structure.
    Validate(InputArgs),
    /// Compute a positive matching decomposition.
    Pmd(PmdArgs),
    /// Decide whether a matching is positive.
    Certify(CertifyArgs),
    /// Decompose a k-uniform tree into Δ parts.
    TreePmd(InputArgs),
    /// Certify every E_{l1,l2} class of the complete 3-uniform hypergraph.
    Scan(ScanArgs),
    /// Count the label pairs for n and compare with the closed formula.
    Count(CountArgs),
    /// Decomposition bound from peeling label classes.
    Peel(PeelArgs),
    /// LSS generators, presentation matrix, minors, or a CAS script.
    Ideal(IdealArgs),
    /// Primality and complete-intersection status of L_H(d).
    Status(StatusArgs),
    /// Largest H_{W,c} contained in the hypergraph.
    Obstruct(ObstructArgs),
    /// Seeded random k-uniform tree.
    RandomTree(RandomTreeArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Hypergraph file (JSON, or text with one edge per line).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PmdModeArg {
    Tree,
    Exact,
    Greedy,
    Bounds,
}

#[derive(Args)]
struct PmdArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = PmdModeArg::Exact)]
    mode: PmdModeArg,
    /// Node budget for the exact search.
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    budget: u64,
    /// Expand the exact search in parallel; the witness may then differ.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Edge indices, e.g. `0,3`.
    #[arg(long, value_delimiter = ',', conflicts_with = "edges", required_unless_present = "edges")]
    matching: Vec<usize>,
    /// Explicit edges, e.g. `1 2 3;4 5 6`.
    #[arg(long)]
    edges: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanModeArg {
    Full,
    Residual,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = ScanModeArg::Full)]
    mode: ScanModeArg,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: u32,
    /// Also report count(n+1) - count(n) against 3n - 6.
    #[arg(long)]
    increment: bool,
}

#[derive(Args)]
struct PeelArgs {
    /// A 3-uniform hypergraph; defaults to the complete one on [n].
    #[arg(long, conflicts_with = "n", required_unless_present = "n")]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DialectArg {
    Macaulay2,
    Singular,
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    d: usize,
    /// Emit a CAS script in this dialect instead of JSON.
    #[arg(long, value_enum)]
    dialect: Option<DialectArg>,
    #[arg(long, default_value_t = 0)]
    characteristic: u64,
    /// Include the presentation matrix at this pivot (default: a vertex of maximum degree).
    #[arg(long)]
    pivot: Option<u32>,
    /// Include the presentation matrix and its leading minors.
    #[arg(long)]
    minors: bool,
}

#[derive(Args)]
struct StatusArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    d: usize,
    /// Run the exact pmd search with this node budget.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    max_c: Option<usize>,
}

#[derive(Args)]
struct ObstructArgs {
    #[arg(long)]
    input: PathBuf,
    /// Largest apex set; defaults to n - k + 1.
    #[arg(long)]
    max_c: Option<usize>,
}

#[derive(Args)]
struct RandomTreeArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    edges: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the text format instead of JSON.
    #[arg(long)]
    text: bool,
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|ext| ext == "json") || text.trim_start().starts_with('{');
    Ok(if is_json { Hypergraph::from_json(&text)? } else { Hypergraph::from_text(&text)? })
}

fn parse_edges(h: &Hypergraph, spec: &str) -> Result<BTreeSet<usize>, Failure> {
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let mut edge = s
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad vertex {t:?}"))))
                .collect::<Result<Vec<u32>, Error>>()?;
            edge.sort_unstable();
            h.index_of(&edge).ok_or_else(|| Error::Parse(format!("{edge:?} is not an edge")).into())
        })
        .collect()
}

fn run(command: Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Validate(args) => {
            let h = read_hypergraph(&args.input)?;
            Output::Json(json!({
                "n": h.num_vertices(),
                "edges": h.num_edges(),
                "uniformity": h.uniformity(),
                "max_degree": h.max_degree(),
                "isolated_vertices": h.isolated_vertices(),
                "components": h.connected_components().len(),
                "tree": tree::check_tree(&h),
            }))
        }
        Command::Pmd(args) => {
            let h = read_hypergraph(&args.input)?;
            let budget = SearchBudget { max_nodes: args.budget, parallel: args.parallel };
            let dec = match args.mode {
                PmdModeArg::Bounds => return Ok(Output::Json(to_value(&pmd::pmd_bounds(&h, Some(budget))?))),
                PmdModeArg::Tree => pmd::pmd_tree(&h)?,
                PmdModeArg::Greedy => pmd::greedy_decomposition(&h)?,
                PmdModeArg::Exact => pmd::pmd_exact(&h, budget)?.1,
            };
            dec.verify(&h)?;
            let mut value = to_value(&dec.to_file(&h));
            value["parallel"] = json!(args.parallel && matches!(args.mode, PmdModeArg::Exact));
            Output::Json(value)
        }
        Command::Certify(args) => {
            let h = read_hypergraph(&args.input)?;
            let matching: BTreeSet<usize> = match &args.edges {
                Some(spec) => parse_edges(&h, spec)?,
                None => args.matching.iter().copied().collect(),
            };
            let verdict = positive::certify_positive(&h, &matching)?;
            let mut value = to_value(&verdict);
            value["matching"] = json!(matching);
            value["verified"] = json!(positive::verify_verdict(&h, &matching, &verdict)?);
            Output::Json(value)
        }
        Command::TreePmd(args) => {
            let h = read_hypergraph(&args.input)?;
            let (dec, rounds) = pmd::pmd_tree_traced(&h)?;
            dec.verify(&h)?;
            let file: PmdDecompositionFile = dec.to_file(&h);
            Output::Json(json!({
                "max_degree": h.max_degree(),
                "decomposition": file,
                "lp_fallbacks": rounds.iter().filter(|r| r.lp_fallback).count(),
            }))
        }
        Command::Scan(args) => {
            let mode = match args.mode {
                ScanModeArg::Full => ScanMode::Full,
                ScanModeArg::Residual => ScanMode::Residual,
            };
            Output::Json(to_value(&family::scan_conjecture(args.n, mode)?))
        }
        Command::Count(args) => {
            let count = family::count_labels(args.n)?;
            let formula = family::closed_formula(args.n as u64);
            let mut value = json!({ "n": args.n, "count": count, "formula": formula, "match": count == formula });
            if args.increment {
                let next = family::count_labels(args.n + 1)?;
                let expected = 3 * args.n as u64 - 6;
                value["increment"] =
                    json!({ "count": next - count, "expected": expected, "match": next - count == expected });
            }
            Output::Json(value)
        }
        Command::Peel(args) => {
            let h = match (&args.input, args.n) {
                (Some(path), _) => read_hypergraph(path)?,
                (None, Some(n)) => family::complete_uniform(n, 3).map_err(|_| Error::NTooSmall(n))?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let (dec, report) = family::peel_decomposition(&h)?;
            dec.verify(&h)?;
            let mut value = to_value(&report);
            value["decomposition"] = to_value(&dec.to_file(&h));
            Output::Json(value)
        }
        Command::Ideal(args) => {
            let h = read_hypergraph(&args.input)?;
            if let Some(dialect) = args.dialect {
                let dialect = match dialect {
                    DialectArg::Macaulay2 => Dialect::Macaulay2,
                    DialectArg::Singular => Dialect::Singular,
                };
                return Ok(Output::Text(lss::emit_cas_script(&h, args.d, dialect, args.characteristic)?));
            }
            let gens: Vec<String> = lss::generators(&h, args.d)?.iter().map(|p| p.to_string()).collect();
            let mut value = json!({ "n": h.num_vertices(), "d": args.d, "generators": gens });
            if args.minors || args.pivot.is_some() {
                let pivot = match args.pivot {
                    Some(p) => p,
                    None => PresentationMatrix::default_pivot(&h).ok_or(Error::NoEdges)?,
                };
                let m = PresentationMatrix::new(&h, pivot, args.d)?;
                let entries: Vec<Vec<String>> =
                    (0..m.u()).map(|i| (0..m.d).map(|j| m.entry(i, j).to_string()).collect()).collect();
                value["matrix"] = json!({ "pivot": pivot, "rows": m.rows, "entries": entries });
                if args.minors {
                    let minors = (1..=m.u().min(m.d))
                        .map(|t| {
                            let minor = m.leading_minor(t)?;
                            Ok(json!({
                                "t": t,
                                "minor": minor.to_string(),
                                "support_check": lss::support_check(&minor, m.k, t),
                            }))
                        })
                        .collect::<Result<Vec<Value>, Error>>()?;
                    value["minors"] = json!(minors);
                }
            }
            Output::Json(value)
        }
        Command::Status(args) => {
            let h = read_hypergraph(&args.input)?;
            let options = StatusOptions {
                budget: args.budget.map(|max_nodes| SearchBudget { max_nodes, parallel: false }),
                max_c: args.max_c,
            };
            Output::Json(to_value(&lss::status_report(&h, args.d, options)?))
        }
        Command::Obstruct(args) => {
            let h = read_hypergraph(&args.input)?;
            let k = h.require_uniform()?;
            let max_c = args.max_c.unwrap_or(h.num_vertices() as usize + 1 - k);
            let witness = lss::obstruction_search(&h, max_c)?;
            Output::Json(json!({
                "n": h.num_vertices(),
                "k": k,
                "max_c": max_c,
                "value": witness.as_ref().map(|w| w.value),
                "witness": witness,
            }))
        }
        Command::RandomTree(args) => {
            let h = random::random_tree(args.k, args.edges, args.seed)?;
            if args.text {
                Output::Text(h.to_text())
            } else {
                Output::Json(to_value(&h))
            }
        }
    })
}

/// Scalars as `key: value`, arrays one item per line.
fn render_pretty(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (key, v) in map {
                match v {
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        out.push_str(&format!("{key}:\n"));
                        for item in items {
                            out.push_str(&format!("  {item}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{key:width$}  {v}\n")),
                }
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    out
}

fn error_json(failure: &Failure) -> Value {
    match failure {
        Failure::Io(message) => json!({ "error": "Io", "message": message }),
        Failure::Domain(e) => {
            let debug = format!("{e:?}");
            let kind: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
            let mut value = json!({ "error": kind, "message": e.to_string() });
            if let Error::BudgetExceeded { lower, upper } = e {
                value["lower"] = json!(lower);
                value["upper"] = json!(upper);
            }
            value
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.threads)
        .build_global()
        .expect("thread pool is configured once");

    let text = match run(cli.command) {
        Ok(Output::Text(text)) => text,
        Ok(Output::Json(value)) if cli.common.pretty => render_pretty(&value),
        Ok(Output::Json(value)) => format!("{value}\n"),
        Err(failure) => {
            eprintln!("{}", error_json(&failure));
            return ExitCode::from(1);
        }
    };
    let written = match &cli.common.out {
        Some(path) => fs::write(path, &text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("{}", error_json(&Failure::Io(e.to_string())));
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
