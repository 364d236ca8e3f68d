//! Command-line frontend: generate graphs, classify them, construct
//! bounded orientations, solve exactly at desk scale, validate, and audit.
//!
//! Reports are JSON with a fixed schema tag and contain no wall-clock
//! values, so identical invocations produce byte-identical output; elapsed
//! time goes to stderr. Exit codes: 0 success, 2 usage or malformed input,
//! 3 unsupported graph class, 4 validation reject, 5 budget exhausted.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spo::decompose::{classify, ClassTag, GraphClass};
use spo::exact::{
    chi_s_brute, chi_s_labeling, inequality_audit, ArcWeights, Budget, ExactError, SolveOutcome,
    SolveReport,
};
use spo::gadget::WeightDomain;
use spo::generate::{
    generate, Family, GeneratorSpec, DEFAULT_CACTUS_BLOCKS, DEFAULT_CACTUS_EDGE_PERCENT,
    DEFAULT_CACTUS_MAX_CYCLE,
};
use spo::graph::{max_degree, parse_graph, parse_orientation, serialize_graph,
    serialize_orientation, Graph, Orientation};
use spo::orient::{orient_cactus, orient_graph, Oriented};
use spo::validate::{validate_orientation, ValidateOptions, Verdict};

const SCHEMA: &str = "spo-report-v1";

const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_REJECTED: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(
    name = "spo",
    version,
    about = "Semi-proper orientations: bounded constructions and exact desk-scale solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family and write it with a metadata sidecar.
    Gen(GenArgs),
    /// Report the block-structure class of a graph.
    Classify(ClassifyArgs),
    /// Construct a semi-proper orientation with the class-specific bound.
    Orient(OrientArgs),
    /// Compute an orientation number exactly (budgeted search).
    Exact(ExactArgs),
    /// Check an orientation file against its graph.
    Validate(ValidateArgs),
    /// Recompute the bound chain omega-1 <= chi-1 <= chi_s <= chi_proper <= max_degree.
    Audit(AuditArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Graph family to generate.
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Main size parameter (levels, vertices, pages, ... depending on family).
    #[arg(long)]
    param: Option<u64>,
    /// PRNG seed for the random families.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of blocks (random-cactus; alias for --param).
    #[arg(long)]
    blocks: Option<u64>,
    /// Largest cycle block length (random-cactus).
    #[arg(long)]
    max_cycle: Option<u64>,
    /// Chance in percent of an edge block (random-cactus) or of each edge
    /// (random-graph).
    #[arg(long)]
    edge_percent: Option<u64>,
    /// Where to write the graph; metadata goes to "<output>.meta.json".
    #[arg(short, long)]
    output: PathBuf,
    /// Also write the stdout report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Uop,
    CactusTight,
    RandomCactus,
    RandomMaximalOuterplanar,
    Cycle,
    Path,
    Complete,
    Star,
    RandomGraph,
    Book,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Graph file to classify.
    #[arg(short, long)]
    input: PathBuf,
    /// Also write the stdout report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct OrientArgs {
    /// Graph file to orient.
    #[arg(short, long)]
    input: PathBuf,
    /// Where to write the orientation (default: input with extension .orn).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Class expectation: auto dispatches, anything else asserts.
    #[arg(long, value_enum, default_value_t = ClassArg::Auto)]
    class: ClassArg,
    /// Also write the full construction trace (JSON) to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Also write the stdout report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Auto,
    Cactus,
    EarPeelable,
}

#[derive(Args)]
struct ExactArgs {
    /// Graph file to solve.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Largest maximum in-weight to consider (default: max degree).
    #[arg(long)]
    mu_cap: Option<u32>,
    /// Arc weight menu for the brute method: 2 = {1,2}, 3 = {1,2,3}.
    #[arg(long, default_value_t = 2)]
    weight_domain: u32,
    /// Wall-clock budget; absent means unlimited.
    #[arg(long)]
    budget_secs: Option<u64>,
    /// Node-count budget; absent means unlimited.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Worker threads for the labeling method.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Also write the stdout report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Per-edge direction and weight enumeration.
    Brute,
    /// Proper-labeling enumeration with flow realizability.
    Labeling,
    /// Unit weights only (the proper orientation number).
    Proper,
}

#[derive(Args)]
struct ValidateArgs {
    /// Graph file.
    #[arg(short, long)]
    graph: PathBuf,
    /// Orientation file to check against the graph.
    #[arg(short = 'd', long)]
    orientation: PathBuf,
    /// Reject when the maximum in-weight exceeds this bound.
    #[arg(long)]
    mu: Option<u32>,
    /// Reject weights above this value: 1 = unit only, 2 = {1,2}.
    #[arg(long)]
    weight_domain: Option<u32>,
    /// Also write the stdout report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// Graph file to audit (at most 10 vertices and 16 edges).
    #[arg(short, long)]
    input: PathBuf,
    /// Wall-clock budget; absent means unlimited.
    #[arg(long)]
    budget_secs: Option<u64>,
    /// Also write the stdout report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Orient(args) => cmd_orient(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Audit(args) => cmd_audit(args),
    };
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    code
}

// ---------------------------------------------------------------- reports

/// Envelope shared by every report; `body` carries command specifics.
#[derive(Serialize)]
struct RunReport<T: Serialize> {
    schema: &'static str,
    version: &'static str,
    /// The invocation, echoed (binary name omitted).
    command: String,
    #[serde(flatten)]
    body: T,
}

fn run_report<T: Serialize>(body: T) -> RunReport<T> {
    RunReport {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        body,
    }
}

/// Prints the report to stdout and mirrors the same bytes to `path`.
fn emit<T: Serialize>(body: T, path: Option<&Path>) -> ExitCode {
    let report = run_report(body);
    let text = match serde_json::to_string_pretty(&report) {
        Ok(text) => text + "\n",
        Err(err) => return usage_error(&format!("cannot serialize report: {err}")),
    };
    print!("{text}");
    if let Some(path) = path {
        if let Err(err) = std::fs::write(path, &text) {
            return usage_error(&format!("cannot write {}: {err}", path.display()));
        }
    }
    ExitCode::SUCCESS
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

/// 64-bit FNV-1a over the exact file bytes, hex-encoded; stable across
/// platforms, good enough to pin artifacts to reports.
fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

fn load_graph(path: &Path) -> Result<(Graph, String), String> {
    let bytes = std::fs::read(path)
        .map_err(|err| format!("cannot read {}: {err}", path.display()))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| format!("{} is not UTF-8", path.display()))?;
    let graph =
        parse_graph(&text).map_err(|err| format!("{}: {err}", path.display()))?;
    Ok((graph, digest(text.as_bytes())))
}

// -------------------------------------------------------------------- gen

#[derive(Serialize)]
struct GenBody {
    input_digest: Option<String>,
    family: &'static str,
    seed: u64,
    vertex_count: u32,
    edge_count: usize,
    graph_digest: String,
    outputs: GenOutputs,
}

#[derive(Serialize)]
struct GenOutputs {
    graph: String,
    metadata: String,
}

fn cmd_gen(args: GenArgs) -> ExitCode {
    let family = match resolve_family(&args) {
        Ok(family) => family,
        Err(msg) => return usage_error(&msg),
    };
    let spec = GeneratorSpec {
        family,
        seed: args.seed,
    };
    let generated = match generate(&spec) {
        Ok(generated) => generated,
        Err(err) => return usage_error(&err.to_string()),
    };

    let graph_text = serialize_graph(&generated.graph);
    let meta_text = match serde_json::to_string_pretty(&generated.metadata) {
        Ok(text) => text + "\n",
        Err(err) => return usage_error(&format!("cannot serialize metadata: {err}")),
    };
    let meta_path = PathBuf::from(format!("{}.meta.json", args.output.display()));
    if let Err(err) = std::fs::write(&args.output, &graph_text) {
        return usage_error(&format!("cannot write {}: {err}", args.output.display()));
    }
    if let Err(err) = std::fs::write(&meta_path, &meta_text) {
        return usage_error(&format!("cannot write {}: {err}", meta_path.display()));
    }

    emit(
        GenBody {
            input_digest: None,
            family: generated.metadata.family,
            seed: args.seed,
            vertex_count: generated.graph.vertex_count(),
            edge_count: generated.graph.edge_count(),
            graph_digest: digest(graph_text.as_bytes()),
            outputs: GenOutputs {
                graph: args.output.display().to_string(),
                metadata: meta_path.display().to_string(),
            },
        },
        args.report.as_deref(),
    )
}

fn resolve_family(args: &GenArgs) -> Result<Family, String> {
    fn size(args: &GenArgs, what: &str) -> Result<u64, String> {
        args.param
            .ok_or_else(|| format!("--family {what} requires --param"))
    }
    fn u32_of(value: u64, what: &str) -> Result<u32, String> {
        u32::try_from(value).map_err(|_| format!("{what} {value} out of range"))
    }
    let family = match args.family {
        FamilyArg::Uop => Family::Uop {
            levels: u32_of(size(args, "uop")?, "--param")?,
        },
        FamilyArg::CactusTight => Family::CactusTight,
        FamilyArg::RandomCactus => Family::RandomCactus {
            blocks: u32_of(
                args.blocks
                    .or(args.param)
                    .unwrap_or(DEFAULT_CACTUS_BLOCKS as u64),
                "--blocks",
            )?,
            max_cycle: u32_of(
                args.max_cycle.unwrap_or(DEFAULT_CACTUS_MAX_CYCLE as u64),
                "--max-cycle",
            )?,
            edge_percent: u32_of(
                args.edge_percent.unwrap_or(DEFAULT_CACTUS_EDGE_PERCENT as u64),
                "--edge-percent",
            )?,
        },
        FamilyArg::RandomMaximalOuterplanar => Family::RandomMaximalOuterplanar {
            vertices: u32_of(size(args, "random-maximal-outerplanar")?, "--param")?,
        },
        FamilyArg::Cycle => Family::Cycle {
            vertices: u32_of(size(args, "cycle")?, "--param")?,
        },
        FamilyArg::Path => Family::Path {
            vertices: u32_of(size(args, "path")?, "--param")?,
        },
        FamilyArg::Complete => Family::Complete {
            vertices: u32_of(size(args, "complete")?, "--param")?,
        },
        FamilyArg::Star => Family::Star {
            leaves: u32_of(size(args, "star")?, "--param")?,
        },
        FamilyArg::RandomGraph => Family::RandomGraph {
            vertices: u32_of(size(args, "random-graph")?, "--param")?,
            edge_percent: u32_of(args.edge_percent.unwrap_or(50), "--edge-percent")?,
        },
        FamilyArg::Book => Family::Book {
            pages: u32_of(size(args, "book")?, "--param")?,
        },
    };
    Ok(family)
}

// --------------------------------------------------------------- classify

#[derive(Serialize)]
struct ClassifyBody {
    input_digest: String,
    input: String,
    class: GraphClass,
}

fn cmd_classify(args: ClassifyArgs) -> ExitCode {
    let (graph, input_digest) = match load_graph(&args.input) {
        Ok(loaded) => loaded,
        Err(msg) => return usage_error(&msg),
    };
    emit(
        ClassifyBody {
            input_digest,
            input: args.input.display().to_string(),
            class: classify(&graph),
        },
        args.report.as_deref(),
    )
}

// ----------------------------------------------------------------- orient

#[derive(Serialize)]
struct OrientBody {
    input_digest: String,
    input: String,
    class: ClassTag,
    /// Class-specific guarantee the output was checked against.
    bound: u32,
    mu: u32,
    weight_two_arcs: usize,
    construction_steps: usize,
    outputs: OrientOutputs,
}

#[derive(Serialize)]
struct OrientOutputs {
    orientation: String,
}

fn cmd_orient(args: OrientArgs) -> ExitCode {
    let (graph, input_digest) = match load_graph(&args.input) {
        Ok(loaded) => loaded,
        Err(msg) => return usage_error(&msg),
    };

    if args.class != ClassArg::Auto {
        let found = classify(&graph).tag;
        let wanted = match args.class {
            ClassArg::Cactus => ClassTag::Cactus,
            ClassArg::EarPeelable => ClassTag::EarPeelable,
            ClassArg::Auto => unreachable!(),
        };
        if found != wanted {
            eprintln!("error: graph classifies as {found:?}, not {wanted:?}");
            return ExitCode::from(EXIT_UNSUPPORTED);
        }
    }

    let oriented = match orient_for(&graph, args.class) {
        Ok(oriented) => oriented,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_UNSUPPORTED);
        }
    };
    let bound = match oriented.plan.class.tag {
        ClassTag::Cactus => 3,
        ClassTag::EarPeelable => 4,
        ClassTag::Unsupported => unreachable!("orienter never reports unsupported success"),
    };

    // The guarantee is checked in-process with the independent validator;
    // a failure here is a bug in the orienter, not bad input.
    let verdict = validate_orientation(
        &graph,
        &oriented.orientation,
        &ValidateOptions {
            mu_bound: Some(bound),
            weight_domain: Some(WeightDomain::OneTwo),
        },
    );
    assert!(
        verdict.accepted,
        "orienter broke its own guarantee: {:?}",
        verdict.violations
    );

    let out_path = args
        .output
        .clone()
        .unwrap_or_else(|| args.input.with_extension("orn"));
    let text = serialize_orientation(&graph, &oriented.orientation);
    if let Err(err) = std::fs::write(&out_path, &text) {
        return usage_error(&format!("cannot write {}: {err}", out_path.display()));
    }
    if let Some(trace_path) = &args.trace {
        let trace = match serde_json::to_string_pretty(&oriented.plan) {
            Ok(text) => text + "\n",
            Err(err) => return usage_error(&format!("cannot serialize trace: {err}")),
        };
        if let Err(err) = std::fs::write(trace_path, trace) {
            return usage_error(&format!("cannot write {}: {err}", trace_path.display()));
        }
    }

    emit(
        OrientBody {
            input_digest,
            input: args.input.display().to_string(),
            class: oriented.plan.class.tag,
            bound,
            mu: oriented.orientation.mu(),
            weight_two_arcs: oriented.orientation.weight_two_count(),
            construction_steps: oriented.plan.steps.len(),
            outputs: OrientOutputs {
                orientation: out_path.display().to_string(),
            },
        },
        args.report.as_deref(),
    )
}

fn orient_for(graph: &Graph, class: ClassArg) -> Result<Oriented, spo::orient::OrientError> {
    match class {
        ClassArg::Cactus => orient_cactus(graph),
        ClassArg::Auto | ClassArg::EarPeelable => orient_graph(graph),
    }
}

// ------------------------------------------------------------------ exact

#[derive(Serialize)]
struct ExactBody {
    input_digest: String,
    input: String,
    method: &'static str,
    weight_domain: u32,
    mu_cap: u32,
    workers: usize,
    outcome: SolveOutcome,
    /// Present iff the outcome is exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u32>,
    /// Witness orientation in file format, present iff the outcome is exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    stats: EffortStats,
}

/// Deterministic effort counters (wall time goes to stderr only).
#[derive(Serialize)]
struct EffortStats {
    nodes: u64,
    flow_checks: u64,
}

fn cmd_exact(args: ExactArgs) -> ExitCode {
    let (graph, input_digest) = match load_graph(&args.input) {
        Ok(loaded) => loaded,
        Err(msg) => return usage_error(&msg),
    };
    let mu_cap = match args.mu_cap {
        Some(cap) => cap,
        None => match max_degree(&graph) {
            Ok(delta) => delta,
            Err(err) => return usage_error(&err.to_string()),
        },
    };
    let budget = Budget {
        max_nodes: args.budget_nodes,
        max_millis: args.budget_secs.map(|s| s.saturating_mul(1000)),
    };

    let weights = match (args.method, args.weight_domain) {
        (MethodArg::Brute, 2) => ArcWeights::UpToTwo,
        (MethodArg::Brute, 3) => ArcWeights::UpToThree,
        (MethodArg::Brute, other) => {
            return usage_error(&format!("--weight-domain must be 2 or 3, got {other}"))
        }
        (_, 2) => ArcWeights::UpToTwo,
        (_, other) => {
            return usage_error(&format!(
                "--weight-domain {other} only applies to --method brute"
            ))
        }
    };
    if args.workers > 1 && args.method != MethodArg::Labeling {
        eprintln!("note: --workers only partitions the labeling method; running single-threaded");
    }

    let (method, report): (&'static str, Result<SolveReport, ExactError>) = match args.method {
        MethodArg::Brute => ("brute", chi_s_brute(&graph, weights, mu_cap, &budget)),
        MethodArg::Proper => ("proper", spo::exact::chi_proper(&graph, mu_cap, &budget)),
        MethodArg::Labeling => (
            "labeling",
            Ok(chi_s_labeling(&graph, mu_cap, &budget, args.workers.max(1))),
        ),
    };
    let report = match report {
        Ok(report) => report,
        Err(err) => return usage_error(&err.to_string()),
    };

    let exhausted = report.budget_exhausted();
    let body = ExactBody {
        input_digest,
        input: args.input.display().to_string(),
        method,
        weight_domain: args.weight_domain,
        mu_cap,
        workers: args.workers.max(1),
        outcome: report.outcome,
        value: report.value(),
        witness: report
            .witness
            .as_ref()
            .map(|o| serialize_orientation(&graph, o)),
        stats: EffortStats {
            nodes: report.stats.nodes,
            flow_checks: report.stats.flow_checks,
        },
    };
    let code = emit(body, args.report.as_deref());
    if code == ExitCode::SUCCESS && exhausted {
        return ExitCode::from(EXIT_BUDGET);
    }
    code
}

// --------------------------------------------------------------- validate

#[derive(Serialize)]
struct ValidateBody {
    input_digest: String,
    graph: String,
    orientation: String,
    orientation_digest: String,
    verdict: Verdict,
}

fn cmd_validate(args: ValidateArgs) -> ExitCode {
    let (graph, input_digest) = match load_graph(&args.graph) {
        Ok(loaded) => loaded,
        Err(msg) => return usage_error(&msg),
    };
    let orn_text = match std::fs::read_to_string(&args.orientation) {
        Ok(text) => text,
        Err(err) => {
            return usage_error(&format!("cannot read {}: {err}", args.orientation.display()))
        }
    };
    let orientation: Orientation = match parse_orientation(&orn_text, &graph) {
        Ok(orientation) => orientation,
        Err(err) => return usage_error(&format!("{}: {err}", args.orientation.display())),
    };
    let weight_domain = match args.weight_domain {
        None => None,
        Some(1) => Some(WeightDomain::Unit),
        Some(2) => Some(WeightDomain::OneTwo),
        Some(other) => {
            return usage_error(&format!("--weight-domain must be 1 or 2, got {other}"))
        }
    };
    let verdict = validate_orientation(
        &graph,
        &orientation,
        &ValidateOptions {
            mu_bound: args.mu,
            weight_domain,
        },
    );
    let accepted = verdict.accepted;
    let code = emit(
        ValidateBody {
            input_digest,
            graph: args.graph.display().to_string(),
            orientation: args.orientation.display().to_string(),
            orientation_digest: digest(orn_text.as_bytes()),
            verdict,
        },
        args.report.as_deref(),
    );
    if code == ExitCode::SUCCESS && !accepted {
        return ExitCode::from(EXIT_REJECTED);
    }
    code
}

// ------------------------------------------------------------------ audit

#[derive(Serialize)]
struct AuditBody {
    input_digest: String,
    input: String,
    omega: u32,
    chi: u32,
    chi_s: u32,
    chi_proper: u32,
    max_degree: u32,
    chain_holds: bool,
    stats: EffortStats,
}

fn cmd_audit(args: AuditArgs) -> ExitCode {
    let (graph, input_digest) = match load_graph(&args.input) {
        Ok(loaded) => loaded,
        Err(msg) => return usage_error(&msg),
    };
    let budget = Budget {
        max_nodes: None,
        max_millis: args.budget_secs.map(|s| s.saturating_mul(1000)),
    };
    let audit = match inequality_audit(&graph, &budget) {
        Ok(audit) => audit,
        Err(err) => return usage_error(&err.to_string()),
    };
    emit(
        AuditBody {
            input_digest,
            input: args.input.display().to_string(),
            omega: audit.omega,
            chi: audit.chi,
            chi_s: audit.chi_s,
            chi_proper: audit.chi_proper,
            max_degree: audit.max_degree,
            chain_holds: audit.chain_holds,
            stats: EffortStats {
                nodes: audit.stats.nodes,
                flow_checks: audit.stats.flow_checks,
            },
        },
        args.report.as_deref(),
    )
}
