//! `ccp` — exact partitioning of node-colored graphs into colorful
//! connected components.
//!
//! Instance files use a DIMACS-like text format (`p ccp n m colors`
//! header, `c <node> <color>` lines, `e <u> <v>` lines, 1-based ids);
//! solution files list slots as `s <k>: <members...>` plus an `obj` line.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ccp_core::bench::{
    self, parse_configs, run_bench, summarize, BenchOptions, BenchOutcome, BenchRow, QBarMode,
    SymmetryRule,
};
use ccp_core::bounds::{self, BoundMethod};
use ccp_core::gen::{self, ColorDistribution, GenSpec};
use ccp_core::graph::ColoredGraph;
use ccp_core::milp::{build_model, export_lp, Connectivity, EdgeModel, ModelConfig, Symmetry};
use ccp_core::oracle;
use ccp_core::prep;
use ccp_core::separation::{separate_connectivity, separate_paths, IntegerPoint};
use ccp_core::solution::{objective_value, parse_solution, write_solution, Problem};
use ccp_core::solver::{bound_gap, solve, SearchConfig, SolveStatus};

#[derive(Parser)]
#[command(
    name = "ccp",
    version,
    about = "Exact solvers for colorful component partitioning (MOP, MEC, MCC)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with branch and bound.
    Solve(SolveArgs),
    /// Exhaustively enumerate all partitions (small instances only).
    Oracle(InstanceProblemArgs),
    /// Report the part-count bound and warm-start partition.
    Bounds(InstanceProblemArgs),
    /// Extract protected blocks that are safe for the kept-edges objective.
    Prep(PrepArgs),
    /// Check a solution file against the lazy constraint families.
    Separate(SeparateArgs),
    /// Export the integer programming model in LP format.
    Model(ModelArgs),
    /// Generate seeded random instances.
    Gen(GenArgs),
    /// Run configured solver variants over an instance corpus.
    Bench(BenchArgs),
    /// Convert an external colored edge list to the native format.
    Convert(ConvertArgs),
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    s.parse()
}

fn parse_qbar(s: &str) -> Result<QBarMode, String> {
    s.parse()
}

fn parse_symmetry(s: &str) -> Result<SymmetryRule, String> {
    s.parse()
}

fn parse_dist(s: &str) -> Result<ColorDistribution, String> {
    match s {
        "uniform" => Ok(ColorDistribution::Uniform),
        "skewed" => Ok(ColorDistribution::Skewed),
        other => Err(format!("unknown distribution `{other}` (uniform or skewed)")),
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_parser = parse_problem)]
    problem: Problem,
    #[arg(long)]
    input: PathBuf,
    /// Extract protected blocks first (mop only).
    #[arg(long)]
    prep: bool,
    /// Skip the combinatorial warm start.
    #[arg(long)]
    no_warmstart: bool,
    /// Slot budget: `auto`, `trivial` (= n) or an integer.
    #[arg(long, default_value = "auto", value_parser = parse_qbar)]
    qbar: QBarMode,
    /// Branching symmetry rule: none, cardinality or index.
    #[arg(long, default_value = "index", value_parser = parse_symmetry)]
    symmetry: SymmetryRule,
    /// Prune by the kept-edge floor from the warm start (mec/mcc).
    #[arg(long)]
    edge_cut: bool,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Emit a single JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InstanceProblemArgs {
    #[arg(long, value_parser = parse_problem)]
    problem: Problem,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct PrepArgs {
    #[arg(long)]
    input: PathBuf,
    /// Write the reduced instance here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SeparateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    solution: PathBuf,
    /// Cap on enumerated violated paths per node pair.
    #[arg(long, default_value_t = 10_000)]
    path_budget: usize,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_parser = parse_problem)]
    problem: Problem,
    #[arg(long)]
    input: PathBuf,
    /// Slot count: `auto`, `trivial` (= n) or an integer.
    #[arg(long, default_value = "trivial", value_parser = parse_qbar)]
    slots: QBarMode,
    /// Connectivity family: auto, none, aggregated or disaggregated.
    #[arg(long, default_value = "auto")]
    connectivity: String,
    /// Edge coupling: static rows or the lazy path family.
    #[arg(long, default_value = "static")]
    edge_rows: String,
    /// Symmetry rows: none, cardinality or index.
    #[arg(long, default_value = "none", value_parser = parse_symmetry)]
    symmetry: SymmetryRule,
    /// Emit `y <= z` strengthening rows.
    #[arg(long)]
    keep_edge_cuts: bool,
    /// Global floor on kept edges.
    #[arg(long)]
    edge_count_rhs: Option<i64>,
    /// Write the LP here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    mode: GenMode,
}

#[derive(Subcommand)]
enum GenMode {
    /// Erdős–Rényi edges over a random coloring; every color appears.
    Random {
        #[arg(long)]
        n: usize,
        /// Edge probability in [0, 1].
        #[arg(long)]
        p: f64,
        #[arg(long)]
        colors: usize,
        #[arg(long, default_value = "uniform", value_parser = parse_dist)]
        dist: ColorDistribution,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A chain of colorful cycles joined by two-edge junctions.
    Blocks {
        #[arg(long)]
        blocks: usize,
        #[arg(long, default_value_t = 4)]
        block_size: usize,
        /// Chord probability inside each block.
        #[arg(long, default_value_t = 0.2)]
        chord_p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// The assumed external grammar is one edge per line, each endpoint a
/// `name:color` token; a line with a single token declares an isolated
/// node. This is a best-effort stub — confirm the mapping against the
/// source corpus before relying on converted instances.
#[derive(Args)]
struct ConvertArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of instance files (one instance per file).
    #[arg(long)]
    corpus: PathBuf,
    /// Flat `label.key = value` configuration file.
    #[arg(long)]
    configs: PathBuf,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Wall-clock limit per (instance, config) pair, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Zero every time field for byte-reproducible output.
    #[arg(long)]
    no_time: bool,
    /// Keep only instances with at least this many nodes.
    #[arg(long)]
    min_nodes: Option<usize>,
    /// Keep only instances with at most this many nodes.
    #[arg(long)]
    max_nodes: Option<usize>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Prep(args) => cmd_prep(args),
        Command::Separate(args) => cmd_separate(args),
        Command::Model(args) => cmd_model(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Convert(args) => cmd_convert(args),
    }
}

fn load_graph(path: &Path) -> Result<ColoredGraph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read instance `{}`", path.display()))?;
    ColoredGraph::parse(&text)
        .with_context(|| format!("cannot parse instance `{}`", path.display()))
}

fn status_name(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Optimal => "optimal",
        SolveStatus::Feasible => "feasible",
        SolveStatus::InfeasibleBudget => "infeasible",
        SolveStatus::Timeout => "timeout",
    }
}

fn fmt_upper(upper: i64) -> String {
    if upper == i64::MAX {
        "inf".to_string()
    } else {
        upper.to_string()
    }
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write `{}`", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    if args.prep && args.problem != Problem::Mop {
        bail!("--prep only applies to mop");
    }
    let reduction = args.prep.then(|| prep::preprocess_mop(&g));
    let work = reduction.as_ref().map_or_else(|| g.clone(), |r| r.reduced.clone());
    let offset = reduction.as_ref().map_or(0, |r| r.objective_offset);

    let needs_bounds = !args.no_warmstart || args.edge_cut || args.qbar == QBarMode::Auto;
    let derived = needs_bounds.then(|| bounds::bound_and_warmstart(&work, args.problem));
    let q_bar = match args.qbar {
        QBarMode::Trivial => work.n(),
        QBarMode::Auto => derived.as_ref().expect("bounds computed").q_bar,
        QBarMode::Fixed(q) => q.clamp(1, work.n()),
    };
    let mut cfg = SearchConfig::new(args.problem, q_bar);
    let (index, cardinality) = args.symmetry.flags();
    cfg.use_symmetry_index = index;
    cfg.use_symmetry_cardinality = cardinality;
    if !args.no_warmstart {
        cfg.warm_start = derived.as_ref().map(|b| b.warm_start.clone());
    }
    if args.edge_cut {
        cfg.edge_count_cut_rhs = derived.as_ref().and_then(|b| b.edge_cut_rhs);
    }
    cfg.time_limit = args.time_limit.map(Duration::from_secs_f64);
    cfg.node_limit = args.node_limit;

    let report = solve(&work, &cfg);
    let lower = report.lower_bound + offset;
    let upper = if report.upper_bound == i64::MAX {
        i64::MAX
    } else {
        report.upper_bound + offset
    };
    let gap = bound_gap(lower, upper);
    let best = report
        .best
        .as_ref()
        .map(|p| reduction.as_ref().map_or_else(|| p.clone(), |r| r.lift(p)));
    let value = best.as_ref().map(|p| objective_value(&g, p, args.problem));

    if args.json {
        let parts: Option<Vec<Vec<usize>>> = best.as_ref().map(|p| {
            p.parts()
                .iter()
                .map(|part| part.iter().map(|v| v + 1).collect())
                .collect()
        });
        let obj = serde_json::json!({
            "instance": args.input.display().to_string(),
            "n": g.n(),
            "m": g.m(),
            "colors": g.color_count(),
            "problem": args.problem.to_string(),
            "status": status_name(report.status),
            "lower_bound": lower,
            "upper_bound": if upper == i64::MAX {
                serde_json::Value::Null
            } else {
                serde_json::Value::from(upper)
            },
            "gap": gap,
            "nodes": report.nodes_explored,
            "time_s": report.wall_time.as_secs_f64(),
            "value": value,
            "parts": parts,
        });
        println!("{obj}");
        return Ok(());
    }

    println!(
        "instance {}: n={} m={} colors={}",
        args.input.display(),
        g.n(),
        g.m(),
        g.color_count()
    );
    if let Some(r) = &reduction {
        println!(
            "prep: {} round(s), offset {}, reduced n={} m={}",
            r.rounds.len(),
            r.objective_offset,
            r.reduced.n(),
            r.reduced.m()
        );
    }
    println!("problem {}, status {}", args.problem, status_name(report.status));
    println!("bounds [{}, {}], gap {:.4}", lower, fmt_upper(upper), gap);
    println!("nodes {}, time {:.3}s", report.nodes_explored, report.wall_time.as_secs_f64());
    match (&best, value) {
        (Some(p), Some(v)) => print!("{}", write_solution(p, args.problem, v)),
        _ => println!("no feasible partition found within the limits"),
    }
    Ok(())
}

fn cmd_oracle(args: InstanceProblemArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    let result = oracle::enumerate_optima(&g, args.problem)
        .with_context(|| "oracle enumeration failed")?;
    println!(
        "oracle {}: n={} m={} colors={}",
        args.input.display(),
        g.n(),
        g.m(),
        g.color_count()
    );
    println!(
        "problem {}: optimum {}, {} optimal partition(s), {} feasible",
        args.problem,
        result.optimum,
        result.optima.len(),
        result.feasible_count
    );
    if let Some(first) = result.optima.first() {
        print!("{}", write_solution(first, args.problem, result.optimum));
    }
    Ok(())
}

fn cmd_bounds(args: InstanceProblemArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    let b = bounds::bound_and_warmstart(&g, args.problem);
    let method = match b.method {
        BoundMethod::ColorfulMatching => "colorful-matching",
        BoundMethod::SizedComponentExtraction => "sized-component-extraction",
        BoundMethod::GreedyComponentPeeling => "greedy-component-peeling",
    };
    let value = objective_value(&g, &b.warm_start, args.problem);
    println!("bounds {}: problem {}", args.input.display(), args.problem);
    println!("method {method}");
    println!("q_bar {}", b.q_bar);
    if let Some(rhs) = b.edge_cut_rhs {
        println!("edge_floor {rhs}");
    }
    print!("{}", write_solution(&b.warm_start, args.problem, value));
    Ok(())
}

fn cmd_prep(args: PrepArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    let r = prep::preprocess_mop(&g);
    println!(
        "prep {}: n={} m={} colors={}",
        args.input.display(),
        g.n(),
        g.m(),
        g.color_count()
    );
    for (idx, round) in r.rounds.iter().enumerate() {
        let block: Vec<String> = round.block.iter().map(|v| (v + 1).to_string()).collect();
        let cut: Vec<String> = round
            .cut
            .iter()
            .map(|(u, v)| format!("({},{})", u + 1, v + 1))
            .collect();
        println!(
            "round {}: block [{}] cut [{}] edges {}",
            idx + 1,
            block.join(" "),
            cut.join(" "),
            round.block_edges
        );
    }
    println!(
        "rounds {}, cut edges removed {}, offset {}",
        r.rounds.len(),
        r.removed_cut_edges(),
        r.objective_offset
    );
    println!("reduced n={} m={}", r.reduced.n(), r.reduced.m());
    let map: Vec<String> = r.to_original.iter().map(|v| (v + 1).to_string()).collect();
    println!("map {}", map.join(" "));
    if let Some(out) = &args.out {
        write_or_print(Some(out), &r.reduced.to_text())?;
        println!("wrote reduced instance to {}", out.display());
    }
    Ok(())
}

fn cmd_separate(args: SeparateArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    let text = fs::read_to_string(&args.solution)
        .with_context(|| format!("cannot read solution `{}`", args.solution.display()))?;
    let partition = parse_solution(&text, g.n())
        .with_context(|| format!("cannot parse solution `{}`", args.solution.display()))?;
    let point = IntegerPoint::from_partition(&g, partition);
    let cuts = separate_connectivity(&g, &point);
    let paths = separate_paths(&g, &point, args.path_budget);
    println!("connectivity cuts: {}", cuts.len());
    for cut in &cuts {
        let members: Vec<String> = cut.cut_set.iter().map(|v| (v + 1).to_string()).collect();
        println!("  cut {{{}}} witnesses {}", members.join(" "), cut.witnesses.len());
    }
    println!("paths: {}", paths.len());
    for path in &paths {
        let nodes: Vec<String> = path.nodes.iter().map(|v| (v + 1).to_string()).collect();
        println!("  {}", nodes.join("-"));
    }
    let verdict = if cuts.is_empty() && paths.is_empty() { "clean" } else { "violated" };
    println!("verdict: {verdict}");
    Ok(())
}

fn cmd_model(args: ModelArgs) -> Result<()> {
    let g = load_graph(&args.input)?;
    let slots = match args.slots {
        QBarMode::Trivial => g.n(),
        QBarMode::Auto => bounds::bound_and_warmstart(&g, args.problem).q_bar,
        QBarMode::Fixed(q) => q,
    };
    let mut cfg = ModelConfig::standard(args.problem, slots);
    cfg.connectivity = match args.connectivity.as_str() {
        "auto" => cfg.connectivity,
        "none" => Connectivity::None,
        "aggregated" => Connectivity::Aggregated,
        "disaggregated" => Connectivity::Disaggregated,
        other => bail!("unknown connectivity family `{other}`"),
    };
    cfg.edge_model = match args.edge_rows.as_str() {
        "static" => EdgeModel::Edge,
        "path" => EdgeModel::Path,
        other => bail!("unknown edge coupling `{other}` (static or path)"),
    };
    cfg.symmetry = match args.symmetry {
        SymmetryRule::None => Symmetry::None,
        SymmetryRule::Cardinality => Symmetry::Cardinality,
        SymmetryRule::Index => Symmetry::Index,
    };
    cfg.keep_edge_cuts = args.keep_edge_cuts;
    cfg.edge_count_rhs = args.edge_count_rhs;
    let model = build_model(&g, &cfg).with_context(|| "cannot build the model")?;
    write_or_print(args.out.as_deref(), &export_lp(&model))
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    match args.mode {
        GenMode::Random { n, p, colors, dist, seed, out } => {
            let spec = GenSpec { n, edge_probability: p, colors, distribution: dist, seed };
            let g = gen::generate(&spec).with_context(|| "cannot generate instance")?;
            write_or_print(out.as_deref(), &g.to_text())
        }
        GenMode::Blocks { blocks, block_size, chord_p, seed, out } => {
            if blocks == 0 || block_size < 3 {
                bail!("need at least one block of at least three nodes");
            }
            if !(0.0..=1.0).contains(&chord_p) {
                bail!("chord probability must be in [0, 1]");
            }
            let g = gen::generate_planted_blocks(blocks, block_size, chord_p, seed);
            write_or_print(out.as_deref(), &g.to_text())
        }
    }
}

fn cmd_convert(args: ConvertArgs) -> Result<()> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("cannot read `{}`", args.input.display()))?;
    let mut names: Vec<String> = Vec::new();
    let mut colors: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut skipped = 0usize;
    let mut intern = |token: &str, line: usize| -> Result<usize> {
        let (name, color) = token.split_once(':').with_context(|| {
            format!("line {line}: endpoint `{token}` is not of the form name:color")
        })?;
        if name.is_empty() || color.is_empty() {
            bail!("line {line}: endpoint `{token}` has an empty name or color");
        }
        if let Some(id) = names.iter().position(|n| n == name) {
            if colors[id] != color {
                bail!(
                    "line {line}: node `{name}` recolored from `{}` to `{color}`",
                    colors[id]
                );
            }
            return Ok(id);
        }
        names.push(name.to_string());
        colors.push(color.to_string());
        Ok(names.len() - 1)
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [node] => {
                intern(node, line)?;
            }
            [a, b] => {
                let u = intern(a, line)?;
                let v = intern(b, line)?;
                let pair = (u.min(v), u.max(v));
                // External lists often repeat edges or carry self loops;
                // drop both rather than reject the file.
                if u == v || edges.contains(&pair) {
                    skipped += 1;
                } else {
                    edges.push(pair);
                }
            }
            _ => bail!("line {line}: expected one or two endpoints, got {}", tokens.len()),
        }
    }
    if names.is_empty() {
        bail!("`{}` declares no nodes", args.input.display());
    }
    let tokens: Vec<&str> = colors.iter().map(|c| c.as_str()).collect();
    let g = ColoredGraph::build(&tokens, &edges)
        .with_context(|| format!("converted graph from `{}` is invalid", args.input.display()))?;
    eprintln!(
        "converted {} node(s), {} edge(s), {} duplicate/self-loop line(s) dropped",
        g.n(),
        g.m(),
        skipped
    );
    eprintln!("note: the assumed external encoding is unverified; check converted instances");
    write_or_print(args.out.as_deref(), &g.to_text())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let config_text = fs::read_to_string(&args.configs)
        .with_context(|| format!("cannot read configs `{}`", args.configs.display()))?;
    let configs = parse_configs(&config_text)
        .with_context(|| format!("cannot parse configs `{}`", args.configs.display()))?;
    if configs.is_empty() {
        bail!("no configurations defined in `{}`", args.configs.display());
    }

    let mut files: Vec<PathBuf> = fs::read_dir(&args.corpus)
        .with_context(|| format!("cannot read corpus `{}`", args.corpus.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();

    // Parse everything up front; unloadable files become `error` rows so
    // one bad file never sinks the batch.
    let mut loaded: Vec<(String, Option<ColoredGraph>)> = Vec::new();
    for path in &files {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        match load_graph(path) {
            Ok(g) => loaded.push((name, Some(g))),
            Err(err) => {
                eprintln!("skipping {}: {err:#}", path.display());
                loaded.push((name, None));
            }
        }
    }

    // Size window: filtered instances contribute no rows at all, unlike
    // unloadable files which stay visible as `error` rows.
    if args.min_nodes.is_some() || args.max_nodes.is_some() {
        let lo = args.min_nodes.unwrap_or(0);
        let hi = args.max_nodes.unwrap_or(usize::MAX);
        loaded.retain(|(name, graph)| match graph {
            Some(g) if g.n() < lo || g.n() > hi => {
                eprintln!("filtering out {name}: n={} outside the node window", g.n());
                false
            }
            _ => true,
        });
    }

    let instances: Vec<(String, ColoredGraph)> = loaded
        .iter()
        .filter_map(|(name, g)| g.as_ref().map(|g| (name.clone(), g.clone())))
        .collect();
    let opts = BenchOptions {
        time_limit: args.time_limit.map(Duration::from_secs_f64),
        node_limit: args.node_limit,
        workers: args.workers.max(1),
        zero_times: args.no_time,
    };
    let solved = run_bench(&instances, &configs, &opts);

    // Re-interleave solver rows with failure rows in corpus order.
    let mut rows: Vec<BenchRow> = Vec::new();
    let mut solved_rows = solved.rows.into_iter();
    for (name, graph) in &loaded {
        match graph {
            Some(_) => rows.extend(solved_rows.by_ref().take(configs.len())),
            None => rows.extend(configs.iter().map(|cfg| BenchRow::failure(name, cfg))),
        }
    }
    let summaries = summarize(&rows, &configs);
    let outcome = BenchOutcome { rows, summaries };

    let csv = bench::to_csv(&outcome);
    fs::write(&args.out, &csv)
        .with_context(|| format!("cannot write `{}`", args.out.display()))?;
    for summary in &outcome.summaries {
        println!("{}", bench::summary_line(summary));
    }
    println!("wrote {} row(s) to {}", outcome.rows.len(), args.out.display());
    Ok(())
}
