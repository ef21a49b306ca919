//! Command-line front end. Exit codes: 0 success, 1 verification or
//! analysis mismatch, 2 usage/parse error, 3 enumeration budget refusal.

mod verify;

use metacirc_cli::fixtures;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use metacirc::{
    build_graph, classify_type, code_from_graph, is_symplectic_self_dual, low_support_min_weight,
    min_distance, propagate, weight_distribution, DistanceOutcome, Error as McError,
    MetacirculantSpec, QuantumParams, Rule, SearchMode, SearchTask, SweepBudget,
};

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "metacirc", version, about = "Metacirculant graphs and their self-dual GF(4) codes")]
struct Cli {
    /// Worker threads for sweep and search kernels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a spec and print or save its edge list.
    Build(BuildArgs),
    /// Analyze the code generated by a graph.
    Code(CodeArgs),
    /// Search (m, n) spec space for codes meeting a distance target.
    Search(SearchArgs),
    /// Check bundled fixtures against freshly computed values.
    Verify(VerifyArgs),
    /// Apply secondary-construction rules to [[l, k, d]] parameters.
    Propagate(PropagateArgs),
}

#[derive(Args)]
struct SpecSource {
    /// Bundled spec name (petersen, g12, g27_1, g27_2, g36_1, g36_2,
    /// g78, g90, g91, g93, g96).
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// Path to a spec JSON file: {"m":..,"n":..,"alpha":..,"s":[[..],..]}.
    #[arg(long)]
    spec: Option<PathBuf>,
}

impl SpecSource {
    fn load(&self) -> Result<MetacirculantSpec, CliFailure> {
        match (&self.preset, &self.spec) {
            (Some(name), None) => fixtures::preset(name).ok_or_else(|| {
                usage(format!(
                    "unknown preset '{name}'; available: {}",
                    fixtures::PRESET_NAMES.join(", ")
                ))
            }),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                MetacirculantSpec::parse_json(&text).map_err(CliFailure::from)
            }
            _ => Err(usage("exactly one of --preset or --spec is required".into())),
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    source: SpecSource,
    /// Output format: edges (one "u v" line per edge) or json.
    #[arg(long, default_value = "edges")]
    format: String,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    source: SpecSource,
    /// Check symplectic self-duality.
    #[arg(long)]
    check_self_dual: bool,
    /// Compute the exact minimum distance (full sweep, budget applies).
    #[arg(long)]
    distance: bool,
    /// Stop the distance sweep at the first codeword lighter than this.
    #[arg(long, requires = "distance")]
    abort_below: Option<u32>,
    /// Compute the full weight distribution (full sweep, budget applies).
    #[arg(long)]
    weight_distribution: bool,
    /// Report the minimum weight over codewords of at most T generator rows.
    #[arg(long, value_name = "T")]
    low_support: Option<usize>,
    /// Classify as Type I or Type II.
    #[arg(long = "type")]
    classify: bool,
    /// Print the generator matrix, one row of GF(4) symbols per line.
    #[arg(long)]
    generators: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    /// Restrict to these alpha values (repeatable); default all units.
    #[arg(long = "alpha")]
    alphas: Vec<u32>,
    #[arg(long)]
    d_target: u32,
    /// Scan every valid spec.
    #[arg(long, conflicts_with = "random")]
    exhaustive: bool,
    /// Sample specs uniformly instead of scanning.
    #[arg(long, requires = "seed", requires = "iters")]
    random: bool,
    /// RNG seed; mandatory with --random so runs are reproducible.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random samples.
    #[arg(long)]
    iters: Option<u64>,
    /// Append hits to this NDJSON file (default: print to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Checkpoint file; an exhaustive run resumes from it if present.
    #[arg(long, requires = "out")]
    progress: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// quick: seconds-scale checks; full: adds the 2^36 sweeps and the
    /// (3, 9) exhaustive search.
    #[arg(long, default_value = "quick")]
    scope: String,
}

#[derive(Args)]
struct PropagateArgs {
    #[arg(long)]
    l: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    d: u32,
    /// Comma-separated rules: puncture | shorten[:count] |
    /// lengthen:length | subcode:k.
    #[arg(long)]
    rules: String,
}

/// A failure with the exit code it should produce.
struct CliFailure {
    code: u8,
    message: String,
}

fn usage(message: String) -> CliFailure {
    CliFailure { code: EXIT_USAGE, message }
}

fn mismatch(message: String) -> CliFailure {
    CliFailure { code: EXIT_MISMATCH, message }
}

impl From<McError> for CliFailure {
    fn from(e: McError) -> CliFailure {
        let code = match &e {
            McError::BudgetRefused { .. } => EXIT_BUDGET,
            McError::SpecShape(_) | McError::InvalidSpec(_) => EXIT_USAGE,
            _ => EXIT_MISMATCH,
        };
        CliFailure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            eprintln!("error: thread pool already initialized");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Code(args) => cmd_code(args),
        Command::Search(args) => cmd_search(args),
        Command::Verify(args) => verify::cmd_verify(args.scope),
        Command::Propagate(args) => cmd_propagate(args),
    };
    match result {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Full-sweep length cap; METACIRC_BUDGET_L overrides the default of 40.
fn budget() -> Result<SweepBudget, CliFailure> {
    match std::env::var("METACIRC_BUDGET_L") {
        Err(_) => Ok(SweepBudget::default()),
        Ok(text) => {
            let max_len: u32 = text
                .parse()
                .map_err(|_| usage(format!("METACIRC_BUDGET_L must be an integer, got '{text}'")))?;
            if max_len > 62 {
                return Err(usage(format!(
                    "METACIRC_BUDGET_L caps at 62 (2^len enumeration), got {max_len}"
                )));
            }
            Ok(SweepBudget { max_len })
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliFailure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| mismatch(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_build(args: BuildArgs) -> Result<(), CliFailure> {
    let spec = args.source.load()?;
    let graph = build_graph(&spec)?;
    let content = match args.format.as_str() {
        "edges" => graph.to_edge_list(),
        "json" => {
            let edges: Vec<[usize; 2]> = graph.edges().iter().map(|&(u, v)| [u, v]).collect();
            serde_json::json!({
                "spec": &spec,
                "vertices": graph.vertex_count(),
                "edge_count": graph.edge_count(),
                "edges": edges,
            })
            .to_string()
                + "\n"
        }
        other => return Err(usage(format!("unknown format '{other}' (use edges or json)"))),
    };
    emit(&args.out, &content)
}

fn cmd_code(args: CodeArgs) -> Result<(), CliFailure> {
    let spec = args.source.load()?;
    let budget = budget()?;
    let graph = build_graph(&spec)?;
    let code = code_from_graph(&graph)?;
    let mut report = serde_json::Map::new();
    report.insert("length".into(), code.len().into());
    if args.check_self_dual {
        report.insert("self_dual".into(), is_symplectic_self_dual(&code).into());
    }
    if args.classify {
        let t = classify_type(&spec, &code)?;
        report.insert(
            "type".into(),
            serde_json::json!({ "class": t.class.to_string(), "delta_s": t.delta_s }),
        );
    }
    if let Some(t) = args.low_support {
        let bound = low_support_min_weight(&code, t);
        report.insert("low_support".into(), serde_json::json!({ "t": t, "bound": bound }));
    }
    if args.distance {
        match min_distance(&code, &budget, args.abort_below)? {
            DistanceOutcome::Exact(d) => {
                report.insert("distance".into(), d.into());
            }
            DistanceOutcome::Aborted { weight, witness } => {
                report.insert(
                    "distance_aborted".into(),
                    serde_json::json!({
                        "found_weight": weight,
                        "witness": format!("{witness:#x}"),
                    }),
                );
            }
        }
    }
    if args.weight_distribution {
        let wd = weight_distribution(&code, &budget)?;
        let v: serde_json::Value =
            serde_json::from_str(&wd.to_json()).expect("wd json is valid");
        report.insert("weight_distribution".into(), v);
    }
    if args.generators {
        report.insert("generators".into(), code.generator_dump().into());
    }
    println!("{}", serde_json::Value::Object(report));
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), CliFailure> {
    if !args.exhaustive && !args.random {
        return Err(usage("choose one of --exhaustive or --random".into()));
    }
    let budget = budget()?;
    let mode = if args.exhaustive {
        SearchMode::Exhaustive
    } else {
        SearchMode::Randomized {
            seed: args.seed.expect("clap enforces --seed with --random"),
            iterations: args.iters.expect("clap enforces --iters with --random"),
        }
    };
    let task = SearchTask {
        m: args.m,
        n: args.n,
        alphas: if args.alphas.is_empty() { None } else { Some(args.alphas.clone()) },
        d_target: args.d_target,
        mode,
        type_filter: None,
        valence_min: None,
        valence_max: None,
    };
    let (hits, evaluated) = match mode {
        SearchMode::Randomized { iterations, .. } => {
            (metacirc::random_search(&task, &budget)?, iterations as u128)
        }
        SearchMode::Exhaustive => run_exhaustive(&task, &budget, &args)?,
    };
    let mut lines = String::new();
    for h in &hits {
        lines.push_str(&h.to_ndjson());
        lines.push('\n');
    }
    match &args.out {
        Some(_) if args.progress.is_some() => {} // already streamed by run_exhaustive
        Some(path) => std::fs::write(path, &lines)
            .map_err(|e| mismatch(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{lines}"),
    }
    let classable = hits.iter().filter(|h| h.class_key.is_some()).count();
    let classes = if classable == hits.len() && !hits.is_empty() {
        Some(metacirc::class_by_enumerator(&hits)?.len())
    } else {
        None
    };
    let summary = serde_json::json!({
        "evaluated": evaluated.to_string(),
        "hits": hits.len(),
        "classes": classes,
    });
    println!("{summary}");
    Ok(())
}

/// Exhaustive scan in chunks. With --progress, completed (alpha, index)
/// ranges are checkpointed and hits appended to --out as they are found,
/// so an interrupted run resumes where it stopped.
fn run_exhaustive(
    task: &SearchTask,
    budget: &SweepBudget,
    args: &SearchArgs,
) -> Result<(Vec<metacirc::SearchHit>, u128), CliFailure> {
    let alphas = match &task.alphas {
        Some(list) => list.clone(),
        None => metacirc::units(task.n),
    };
    const CHUNK: u128 = 4096;
    let mut all_hits = Vec::new();
    let mut evaluated: u128 = 0;
    let (resume_alpha, resume_index) = match &args.progress {
        Some(path) if path.exists() => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| mismatch(format!("cannot read progress: {e}")))?;
            let v: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| usage(format!("malformed progress file: {e}")))?;
            (
                v["alpha_pos"].as_u64().unwrap_or(0) as usize,
                v["next_index"].as_u64().unwrap_or(0) as u128,
            )
        }
        _ => (0, 0),
    };
    let mut sink: Option<std::fs::File> = match (&args.out, &args.progress) {
        (Some(path), Some(_)) => Some(
            std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| mismatch(format!("cannot open {}: {e}", path.display())))?,
        ),
        _ => None,
    };
    for (pos, &alpha) in alphas.iter().enumerate() {
        let total = metacirc::enumerate_specs(task.m, task.n, alpha)?.total();
        if pos < resume_alpha {
            evaluated += total;
            continue;
        }
        let mut idx = if pos == resume_alpha { resume_index } else { 0 };
        evaluated += idx;
        while idx < total {
            let end = (idx + CHUNK).min(total);
            let hits = metacirc::exhaustive_range(task, alpha, idx, end, budget)?;
            if let Some(f) = sink.as_mut() {
                for h in &hits {
                    writeln!(f, "{}", h.to_ndjson())
                        .map_err(|e| mismatch(format!("write failed: {e}")))?;
                }
                f.flush().ok();
            }
            all_hits.extend(hits);
            evaluated += end - idx;
            idx = end;
            if let Some(path) = &args.progress {
                let state = serde_json::json!({
                    "alpha_pos": pos,
                    "next_index": idx as u64,
                });
                std::fs::write(path, state.to_string())
                    .map_err(|e| mismatch(format!("cannot write progress: {e}")))?;
            }
        }
        if let Some(path) = &args.progress {
            let state = serde_json::json!({
                "alpha_pos": pos + 1,
                "next_index": 0,
            });
            std::fs::write(path, state.to_string())
                .map_err(|e| mismatch(format!("cannot write progress: {e}")))?;
        }
    }
    Ok((all_hits, evaluated))
}

fn cmd_propagate(args: PropagateArgs) -> Result<(), CliFailure> {
    let mut params = QuantumParams::new(args.l, args.k, args.d, vec!["input".into()], false)
        .map_err(|e| usage(e.to_string()))?;
    let rules = parse_rules(&args.rules)?;
    println!("{params}");
    for (i, rule) in rules.into_iter().enumerate() {
        params = propagate(&params, rule)
            .map_err(|e| mismatch(format!("rule {} failed: {e}", i + 1)))?;
        println!("{params}");
    }
    println!("{}", params.to_json());
    Ok(())
}

fn parse_rules(text: &str) -> Result<Vec<Rule>, CliFailure> {
    text.split(',')
        .map(|item| {
            let item = item.trim();
            let (name, arg) = match item.split_once(':') {
                Some((n, a)) => (n.trim(), Some(a.trim())),
                None => (item, None),
            };
            let parse_arg = |what: &str| -> Result<u32, CliFailure> {
                arg.ok_or_else(|| usage(format!("{name} needs :{what}")))?
                    .parse()
                    .map_err(|_| usage(format!("bad {what} in '{item}'")))
            };
            match name {
                "puncture" => match arg {
                    None => Ok(Rule::Puncture),
                    Some(_) => Err(usage("puncture takes no argument".into())),
                },
                "shorten" => Ok(Rule::Shorten(match arg {
                    None => 1,
                    Some(_) => parse_arg("count")?,
                })),
                "lengthen" => Ok(Rule::Lengthen(parse_arg("length")?)),
                "subcode" => Ok(Rule::Subcode(parse_arg("k")?)),
                other => Err(usage(format!("unknown rule '{other}'"))),
            }
        })
        .collect()
}
