//! Command-line surface for the homcount library: counting, enumeration,
//! expressiveness, counterexample forging, adaptive strategies, right-hom
//! algorithms, and the verification harness.
//!
//! Exit codes: 0 success / all checks pass, 1 check failure, 2 usage or
//! parse error, 3 budget exhaustion.

use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use homcount::adaptive::{
    degree_histogram_via_two_queries, isolated_vertex_strategy, odd_vertex_count_strategy,
    reconstruct_graph, run_strategy, Answer, HomOracle,
};
use homcount::count::{count, CountKind, Orientation};
use homcount::enumerate::{enumerate_all_upto, enumerate_connected_upto};
use homcount::error::HomError;
use homcount::expressive::ExpressiveLedger;
use homcount::forge::{
    forge_colorability, forge_isolated_vertex, forge_planarity, forge_two_adaptive_triple,
    Witness,
};
use homcount::graph6;
use homcount::righthom::{
    bounded_edge_family, clique_isolated_demo, powright_inequality_check, quotient_graph,
    right_failure_demo, right_membership, FamilyMode, RightProvenance,
};
use homcount::verify::{run_all, run_suite, VerifyOptions};
use homcount::Graph;

#[derive(Parser)]
#[command(
    name = "homcount",
    version,
    about = "exact graph morphism counting and hom-query algorithms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count morphisms of one kind from F into G
    Count {
        /// hom | emb | s-hom | s-emb | epi | s-epi | aut
        kind: String,
        /// pattern graph (graph6); for `aut` this is the only graph
        f: String,
        /// target graph (graph6)
        g: Option<String>,
    },
    /// Per-family count vector of a graph, as a JSON line
    Vector(VectorArgs),
    /// Emit graphs of the fixed enumeration as graph6 lines
    Enumerate {
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        max_vertices: usize,
        /// restrict to exactly this vertex count
        #[arg(long)]
        exact_vertices: Option<usize>,
    },
    /// Expressiveness flags along the connected enumeration
    Expressive {
        #[arg(long, default_value_t = homcount::expressive::DEFAULT_BUDGET)]
        budget: usize,
        /// cache file for computed flags
        #[arg(long)]
        cache: Option<std::path::PathBuf>,
    },
    /// Counterexample generators
    Forge {
        #[command(subcommand)]
        what: ForgeCommand,
    },
    /// Adaptive query strategies against an oracle
    Adaptive {
        #[command(subcommand)]
        what: AdaptiveCommand,
    },
    /// Right-homomorphism algorithms
    Right {
        #[command(subcommand)]
        what: RightCommand,
    },
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VectorArgs {
    /// target graphs (graph6), one JSON line each
    #[arg(num_args = 1..)]
    graphs: Vec<String>,
    #[arg(long, default_value = "hom")]
    kind: String,
    /// parallel workers for batches; output order follows input order
    #[arg(long)]
    jobs: Option<usize>,
    /// family as graph6 strings
    #[arg(long, num_args = 1.., conflicts_with_all = ["connected_prefix", "all_upto"])]
    family: Vec<String>,
    /// family = first N graphs of the connected enumeration
    #[arg(long)]
    connected_prefix: Option<usize>,
    /// family = all graphs with at most N vertices
    #[arg(long)]
    all_upto: Option<usize>,
    /// count hom(G, F) instead of hom(F, G)
    #[arg(long)]
    right: bool,
}

#[derive(Subcommand)]
enum ForgeCommand {
    /// Pair agreeing on the family where only G has an isolated vertex
    Isolated {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = homcount::expressive::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Pair agreeing on the family where only G is planar
    Planar {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Pair agreeing on the family where only G is l-colorable
    Colorable {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 64)]
        provider_budget: usize,
    },
    /// The two-adaptive cycle triple for a pattern-size cap
    CycleTriple {
        #[arg(long)]
        pattern_cap: usize,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// family as graph6 strings (disconnected members are reduced)
    #[arg(long, num_args = 1.., conflicts_with = "family_prefix")]
    family: Vec<String>,
    /// family = first N graphs of the connected enumeration
    #[arg(long)]
    family_prefix: Option<usize>,
}

#[derive(Subcommand)]
enum AdaptiveCommand {
    /// Run a named strategy and print the transcript
    Run {
        /// isolated | odd-vertices | reconstruct | histogram
        #[arg(long)]
        strategy: String,
        /// hidden graph for the in-process oracle
        #[arg(long, conflicts_with = "oracle_cmd")]
        graph: Option<String>,
        /// external oracle command answering `<kind> <graph6>` with a decimal
        #[arg(long)]
        oracle_cmd: Option<String>,
    },
    /// Serve count queries about a hidden graph over stdin/stdout
    Serve {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Subcommand)]
enum RightCommand {
    /// hom(G, F)
    Count { g: String, f: String },
    /// right-hom vector over a family, as a JSON line
    Vector(VectorArgs),
    /// Quotient preserving the right vector over the family
    Quotient {
        graph: String,
        #[arg(long, num_args = 1..)]
        family: Vec<String>,
    },
    /// Decide "at most K edges" from the right vector alone
    Membership {
        graph: String,
        #[arg(long)]
        max_edges: usize,
        /// reduced vertex cap (forfeits the separation guarantee)
        #[arg(long)]
        reduced_cap: Option<usize>,
    },
    /// The k-colorability counting chain for one graph
    Chain {
        graph: String,
        #[arg(long)]
        k: usize,
    },
    /// Impossibility demonstrations
    Demo {
        /// triangle-demo chromatic target (3 or 4)
        #[arg(long, conflicts_with = "clique_family")]
        s: Option<usize>,
        /// family for the clique-plus-isolated-vertex demo
        #[arg(long, num_args = 1..)]
        clique_family: Vec<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// suite name or "all"
    suite: String,
    /// parallel worker threads
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    lovasz_n: Option<usize>,
    #[arg(long)]
    right_lovasz_n: Option<usize>,
    #[arg(long)]
    identity_n: Option<usize>,
    #[arg(long)]
    isolated_prefix: Option<usize>,
    #[arg(long)]
    star_n: Option<usize>,
    #[arg(long)]
    encoding_n: Option<usize>,
    #[arg(long)]
    triple_cap: Option<usize>,
    #[arg(long)]
    cancellation_n: Option<usize>,
    #[arg(long)]
    right_n: Option<usize>,
}

fn decode_graph(s: &str) -> Result<Graph, HomError> {
    graph6::decode(s)
}

fn decode_family(strings: &[String]) -> Result<Vec<Graph>, HomError> {
    strings.iter().map(|s| decode_graph(s)).collect()
}

fn resolve_family(args: &FamilyArgs) -> Result<Vec<Graph>, HomError> {
    let raw = if let Some(len) = args.family_prefix {
        homcount::enumerate::enumerate_connected_prefix(len)?
    } else if !args.family.is_empty() {
        decode_family(&args.family)?
    } else {
        return Err(HomError::Invalid(
            "specify --family or --family-prefix".into(),
        ));
    };
    if raw.iter().any(|g| !g.is_connected()) {
        // hom agreement over an arbitrary family reduces to emb agreement
        // over the connected closure
        return homcount::forge::connected_reduction(&raw);
    }
    Ok(raw)
}

fn vector_lines(args: &VectorArgs) -> Result<Vec<String>, HomError> {
    use rayon::prelude::*;
    let kind: CountKind = args.kind.parse()?;
    let family = if let Some(n) = args.connected_prefix {
        homcount::enumerate::enumerate_connected_prefix(n)?
    } else if let Some(n) = args.all_upto {
        enumerate_all_upto(n)?
    } else if !args.family.is_empty() {
        decode_family(&args.family)?
    } else {
        return Err(HomError::Invalid(
            "specify --family, --connected-prefix, or --all-upto".into(),
        ));
    };
    let orientation = if args.right {
        Orientation::Right
    } else {
        Orientation::Left
    };
    if args.graphs.is_empty() {
        return Err(HomError::Invalid("no target graphs given".into()));
    }
    let targets: Vec<Graph> = args
        .graphs
        .iter()
        .map(|s| decode_graph(s))
        .collect::<Result<_, _>>()?;
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    // parallel batch with output order pinned to input order
    let lines: Vec<String> = targets
        .par_iter()
        .map(|g| {
            let vector = homcount::count_vector(kind, &family, g, orientation);
            let counts: Vec<String> = vector.entries.iter().map(|(_, v)| v.to_string()).collect();
            json!({ "graph": graph6::encode(g), "counts": counts }).to_string()
        })
        .collect();
    Ok(lines)
}

fn print_witness(w: &Witness) -> Result<(), HomError> {
    println!("{}", graph6::encode(&w.g));
    println!("{}", graph6::encode(&w.h));
    let report = w.verify()?;
    println!("{}", serde_json::to_string(&report).expect("report json"));
    Ok(())
}

fn answer_json(a: &Answer) -> serde_json::Value {
    match a {
        Answer::Value(v) => json!(v.to_string()),
        Answer::Factored(f) => {
            let primes: serde_json::Map<String, serde_json::Value> = f
                .exponents()
                .iter()
                .map(|(p, e)| (p.to_string(), json!(e.to_string())))
                .collect();
            json!({ "factored": primes, "zero": f.is_zero() })
        }
    }
}

fn strategy_payload(
    name: &str,
    oracle: &mut HomOracle,
) -> Result<serde_json::Value, HomError> {
    match name {
        "isolated" | "odd-vertices" => {
            let st = if name == "isolated" {
                isolated_vertex_strategy()
            } else {
                odd_vertex_count_strategy()
            };
            let out = run_strategy(&st, oracle)?;
            Ok(json!({
                "strategy": st.name,
                "decision": out.decision,
                "queries": out.transcript.iter().map(|e| json!({
                    "query": e.description,
                    "answer": answer_json(&e.answer),
                })).collect::<Vec<_>>(),
            }))
        }
        "reconstruct" => {
            let g = reconstruct_graph(oracle)?;
            Ok(json!({
                "strategy": "reconstruct",
                "graph": graph6::encode(&g),
                "queries": oracle.query_count(),
            }))
        }
        "histogram" => {
            let hist = degree_histogram_via_two_queries(oracle)?;
            Ok(json!({
                "strategy": "degree-histogram",
                "histogram": hist,
                "queries": oracle.query_count(),
            }))
        }
        other => Err(HomError::Invalid(format!(
            "unknown strategy '{other}'; known: isolated, odd-vertices, reconstruct, histogram"
        ))),
    }
}

fn run() -> Result<ExitCode, HomError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Count { kind, f, g } => {
            if kind == "aut" {
                let graph = decode_graph(&f)?;
                println!("{}", homcount::aut(&graph));
                return Ok(ExitCode::SUCCESS);
            }
            let kind: CountKind = kind.parse()?;
            let g = g.ok_or_else(|| HomError::Invalid("count needs two graphs".into()))?;
            let f = decode_graph(&f)?;
            let g = decode_graph(&g)?;
            println!("{}", count(kind, &f, &g));
        }
        Command::Vector(args) => {
            for line in vector_lines(&args)? {
                println!("{line}");
            }
        }
        Command::Enumerate {
            connected,
            max_vertices,
            exact_vertices,
        } => {
            let graphs = if connected {
                enumerate_connected_upto(max_vertices)?
            } else {
                enumerate_all_upto(max_vertices)?
            };
            for g in graphs {
                if let Some(n) = exact_vertices {
                    if g.n() != n {
                        continue;
                    }
                }
                println!("{}", graph6::encode(&g));
            }
        }
        Command::Expressive { budget, cache } => {
            let mut ledger = match &cache {
                Some(path) if path.exists() => ExpressiveLedger::load(path)
                    .or_else(|_| ExpressiveLedger::with_budget(budget))?,
                _ => ExpressiveLedger::with_budget(budget)?,
            };
            for s in 1..=ledger.budget() {
                let flag = ledger.is_expressive(s)?;
                let g = ledger.graph(s)?.clone();
                println!("{s} {} {}", graph6::encode(&g), if flag { 1 } else { 0 });
            }
            if let Some(path) = cache {
                ledger.save(&path)?;
            }
        }
        Command::Forge { what } => match what {
            ForgeCommand::Isolated { family, budget } => {
                let family = resolve_family(&family)?;
                let mut ledger = ExpressiveLedger::with_budget(budget)?;
                print_witness(&forge_isolated_vertex(&family, &mut ledger)?)?;
            }
            ForgeCommand::Planar { family } => {
                let family = resolve_family(&family)?;
                print_witness(&forge_planarity(&family)?)?;
            }
            ForgeCommand::Colorable {
                family,
                l,
                provider_budget,
            } => {
                let family = resolve_family(&family)?;
                print_witness(&forge_colorability(&family, l, provider_budget)?)?;
            }
            ForgeCommand::CycleTriple { pattern_cap } => {
                let t = forge_two_adaptive_triple(pattern_cap)?;
                println!("{}", graph6::encode(&t.g));
                println!("{}", graph6::encode(&t.h1));
                println!("{}", graph6::encode(&t.h2));
                println!(
                    "{}",
                    json!({
                        "ell": t.ell,
                        "pattern_cap": t.pattern_cap,
                        "agreement_verified": true,
                    })
                );
            }
        },
        Command::Adaptive { what } => match what {
            AdaptiveCommand::Run {
                strategy,
                graph,
                oracle_cmd,
            } => {
                let mut oracle = match (&graph, &oracle_cmd) {
                    (Some(g6), None) => {
                        HomOracle::over_graph(decode_graph(g6)?, Orientation::Left)
                    }
                    (None, Some(cmd)) => {
                        let parts: Vec<String> =
                            cmd.split_whitespace().map(str::to_string).collect();
                        if parts.is_empty() {
                            return Err(HomError::Invalid("empty oracle command".into()));
                        }
                        HomOracle::over_command(&parts[0], &parts[1..], Orientation::Left)?
                    }
                    _ => {
                        return Err(HomError::Invalid(
                            "specify exactly one of --graph or --oracle-cmd".into(),
                        ))
                    }
                };
                let payload = strategy_payload(&strategy, &mut oracle)?;
                println!("{payload}");
            }
            AdaptiveCommand::Serve { graph } => {
                let hidden = decode_graph(&graph)?;
                let stdin = std::io::stdin();
                let mut stdout = std::io::stdout();
                for line in stdin.lock().lines() {
                    let line = line.map_err(|e| HomError::Oracle(e.to_string()))?;
                    let line = line.trim();
                    if line.is_empty() {
                        continue;
                    }
                    let (kind, g6) = line
                        .split_once(' ')
                        .ok_or_else(|| HomError::Invalid(format!("bad request '{line}'")))?;
                    let kind: CountKind = kind.parse()?;
                    let pattern = decode_graph(g6)?;
                    writeln!(stdout, "{}", count(kind, &pattern, &hidden))
                        .map_err(|e| HomError::Oracle(e.to_string()))?;
                    stdout
                        .flush()
                        .map_err(|e| HomError::Oracle(e.to_string()))?;
                }
            }
        },
        Command::Right { what } => match what {
            RightCommand::Count { g, f } => {
                let g = decode_graph(&g)?;
                let f = decode_graph(&f)?;
                println!("{}", count(CountKind::Hom, &g, &f));
            }
            RightCommand::Vector(mut args) => {
                args.right = true;
                for line in vector_lines(&args)? {
                    println!("{line}");
                }
            }
            RightCommand::Quotient { graph, family } => {
                let g = decode_graph(&graph)?;
                let family = decode_family(&family)?;
                let q = quotient_graph(&g, &family)?;
                println!("{}", graph6::encode(&q));
            }
            RightCommand::Membership {
                graph,
                max_edges,
                reduced_cap,
            } => {
                let g = decode_graph(&graph)?;
                let mode = match reduced_cap {
                    Some(cap) => FamilyMode::Reduced { cap },
                    None => FamilyMode::Exact,
                };
                let family = bounded_edge_family(max_edges, mode)?;
                if let RightProvenance::BoundedEdge {
                    exact: false, cap, ..
                } = family.provenance
                {
                    eprintln!(
                        "warning: reduced cap {cap} forfeits the separation guarantee of the full family"
                    );
                }
                let pred = |h: &Graph| h.edge_count() <= max_edges;
                let decision = right_membership(&pred, max_edges, &g, mode)?;
                println!(
                    "{}",
                    json!({ "graph": graph6::encode(&g), "max_edges": max_edges, "member": decision })
                );
            }
            RightCommand::Chain { graph, k } => {
                let g = decode_graph(&graph)?;
                let report = powright_inequality_check(&g, k)?;
                println!("{}", serde_json::to_string(&report).expect("report json"));
            }
            RightCommand::Demo { s, clique_family } => {
                if let Some(s) = s {
                    let demo = right_failure_demo(s, None)?;
                    println!("{}", serde_json::to_string(&demo).expect("demo json"));
                } else if !clique_family.is_empty() {
                    let family = decode_family(&clique_family)?;
                    let demo = clique_isolated_demo(&family)?;
                    println!("{}", serde_json::to_string(&demo).expect("demo json"));
                } else {
                    return Err(HomError::Invalid("specify --s or --clique-family".into()));
                }
            }
        },
        Command::Verify(args) => {
            if let Some(jobs) = args.jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build_global()
                    .map_err(|e| HomError::Invalid(format!("thread pool: {e}")))?;
            }
            let mut opts = VerifyOptions::default();
            if let Some(n) = args.lovasz_n {
                opts.lovasz_max = n;
            }
            if let Some(n) = args.right_lovasz_n {
                opts.right_lovasz_max = n;
            }
            if let Some(n) = args.identity_n {
                opts.identity_max = n;
            }
            if let Some(n) = args.isolated_prefix {
                opts.isolated_prefix_max = n;
            }
            if let Some(n) = args.star_n {
                opts.star_max = n;
            }
            if let Some(n) = args.encoding_n {
                opts.encoding_universe_max = n;
            }
            if let Some(n) = args.triple_cap {
                opts.triple_cap = n;
            }
            if let Some(n) = args.cancellation_n {
                opts.cancellation_max = n;
            }
            if let Some(n) = args.right_n {
                opts.right_max = n;
            }
            let suites = if args.suite == "all" {
                run_all(&opts)?
            } else {
                vec![run_suite(&args.suite, &opts)?]
            };
            let mut all_pass = true;
            for suite in &suites {
                for check in &suite.checks {
                    println!(
                        "[{}] {} — {} ({} ms)",
                        if check.pass { "PASS" } else { "FAIL" },
                        suite.name,
                        check.description,
                        check.elapsed_ms
                    );
                    all_pass &= check.pass;
                }
            }
            println!(
                "{}",
                serde_json::to_string(&suites).expect("suite report json")
            );
            if !all_pass {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code_for(e: &HomError) -> ExitCode {
    match e {
        HomError::CanonBudget { .. } | HomError::EnumBudget(_) | HomError::Budget(_) => {
            ExitCode::from(3)
        }
        HomError::Graph6 { .. } | HomError::Invalid(_) | HomError::Dimension(_) => {
            ExitCode::from(2)
        }
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
