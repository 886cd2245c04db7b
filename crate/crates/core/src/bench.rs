//! Batch benchmarking: run named solver configurations over an instance
//! corpus and emit one CSV row per (instance, configuration) pair.
//!
//! Configurations come from a flat key-value file:
//!
//! ```text
//! # comment
//! plain.problem = mop
//! tuned.problem = mop
//! tuned.prep = on
//! tuned.warmstart = on
//! tuned.qbar = auto
//! ```
//!
//! Configurations appear in the output in first-mention order. Instances
//! with several connected components are solved per component and the
//! bounds, node counts and statuses are aggregated, so a row always
//! describes the whole instance. Row order is instance-major and does not
//! depend on worker scheduling; with times zeroed the CSV is
//! byte-reproducible.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bounds;
use crate::graph::ColoredGraph;
use crate::prep;
use crate::solution::Problem;
use crate::solver::{self, bound_gap, SearchConfig, SolveStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryRule {
    None,
    Cardinality,
    Index,
}

impl SymmetryRule {
    /// `(use_symmetry_index, use_symmetry_cardinality)` solver flags.
    pub fn flags(self) -> (bool, bool) {
        match self {
            SymmetryRule::None => (false, false),
            SymmetryRule::Cardinality => (false, true),
            SymmetryRule::Index => (true, false),
        }
    }
}

impl FromStr for SymmetryRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(SymmetryRule::None),
            "cardinality" => Ok(SymmetryRule::Cardinality),
            "index" => Ok(SymmetryRule::Index),
            other => Err(format!("unknown symmetry rule `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QBarMode {
    /// Slot budget `n` (always safe).
    Trivial,
    /// Combinatorial part-count bound computed per instance.
    Auto,
    /// Explicit budget, clamped to `1..=n`.
    Fixed(usize),
}

impl FromStr for QBarMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(QBarMode::Trivial),
            "auto" => Ok(QBarMode::Auto),
            other => other
                .parse::<usize>()
                .ok()
                .filter(|&q| q >= 1)
                .map(QBarMode::Fixed)
                .ok_or_else(|| format!("qbar must be `trivial`, `auto` or a positive integer, got `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub label: String,
    pub problem: Problem,
    pub symmetry: SymmetryRule,
    pub use_prep: bool,
    pub use_warm_start: bool,
    pub q_bar: QBarMode,
    pub use_edge_cut: bool,
}

impl BenchConfig {
    pub fn new(label: &str, problem: Problem) -> BenchConfig {
        BenchConfig {
            label: label.to_string(),
            problem,
            symmetry: SymmetryRule::Index,
            use_prep: false,
            use_warm_start: false,
            q_bar: QBarMode::Trivial,
            use_edge_cut: false,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `label.key = value`, got `{text}`")]
    BadLine { line: usize, text: String },
    #[error("config `{label}`: unknown key `{key}`")]
    UnknownKey { label: String, key: String },
    #[error("config `{label}`: bad value for `{key}`: {message}")]
    BadValue { label: String, key: String, message: String },
    #[error("config `{label}` does not set `problem`")]
    MissingProblem { label: String },
    #[error("config `{label}`: preprocessing only applies to mop")]
    PrepRequiresMop { label: String },
}

fn parse_switch(value: &str) -> Option<bool> {
    match value {
        "on" | "true" | "1" => Some(true),
        "off" | "false" | "0" => Some(false),
        _ => None,
    }
}

/// Parses the flat `label.key = value` configuration format. `#` starts a
/// comment; blank lines are ignored.
pub fn parse_configs(text: &str) -> Result<Vec<BenchConfig>, ConfigError> {
    // (label, key, value) triples plus label first-appearance order.
    let mut order: Vec<String> = Vec::new();
    let mut entries: Vec<(String, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || ConfigError::BadLine { line: idx + 1, text: raw.trim().to_string() };
        let (lhs, value) = line.split_once('=').ok_or_else(bad)?;
        let (label, key) = lhs.trim().split_once('.').ok_or_else(bad)?;
        let (label, key, value) = (label.trim(), key.trim(), value.trim());
        if label.is_empty() || key.is_empty() || value.is_empty() {
            return Err(bad());
        }
        if !order.iter().any(|l| l == label) {
            order.push(label.to_string());
        }
        entries.push((label.to_string(), key.to_string(), value.to_string()));
    }

    let mut configs = Vec::new();
    for label in &order {
        let mut problem = None;
        let mut cfg = BenchConfig::new(label, Problem::Mop);
        for (_, key, value) in entries.iter().filter(|(l, _, _)| l == label) {
            let bad_value = |message: String| ConfigError::BadValue {
                label: label.clone(),
                key: key.clone(),
                message,
            };
            match key.as_str() {
                "problem" => problem = Some(value.parse::<Problem>().map_err(bad_value)?),
                "symmetry" => cfg.symmetry = value.parse().map_err(bad_value)?,
                "qbar" => cfg.q_bar = value.parse().map_err(bad_value)?,
                "prep" => {
                    cfg.use_prep = parse_switch(value)
                        .ok_or_else(|| bad_value(format!("expected on/off, got `{value}`")))?
                }
                "warmstart" => {
                    cfg.use_warm_start = parse_switch(value)
                        .ok_or_else(|| bad_value(format!("expected on/off, got `{value}`")))?
                }
                "edge_cut" => {
                    cfg.use_edge_cut = parse_switch(value)
                        .ok_or_else(|| bad_value(format!("expected on/off, got `{value}`")))?
                }
                _ => {
                    return Err(ConfigError::UnknownKey { label: label.clone(), key: key.clone() })
                }
            }
        }
        cfg.problem = problem.ok_or_else(|| ConfigError::MissingProblem { label: label.clone() })?;
        if cfg.use_prep && cfg.problem != Problem::Mop {
            return Err(ConfigError::PrepRequiresMop { label: label.clone() });
        }
        configs.push(cfg);
    }
    Ok(configs)
}

/// One (instance, configuration) result. `upper_bound == i64::MAX` means
/// no finite bound was proven on the open side.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub colors: usize,
    pub problem: Problem,
    pub config: String,
    pub status: String,
    pub lower_bound: i64,
    pub upper_bound: i64,
    pub gap: f64,
    pub time_s: f64,
    pub nodes: u64,
}

impl BenchRow {
    /// Placeholder for an instance that could not be loaded; keeps the
    /// batch shape intact without aborting.
    pub fn failure(instance: &str, config: &BenchConfig) -> BenchRow {
        BenchRow {
            instance: instance.to_string(),
            n: 0,
            m: 0,
            colors: 0,
            problem: config.problem,
            config: config.label.clone(),
            status: "error".to_string(),
            lower_bound: 0,
            upper_bound: 0,
            gap: 1.0,
            time_s: 0.0,
            nodes: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    pub workers: usize,
    /// Report 0.0 in every time field (for reproducible output).
    pub zero_times: bool,
}

impl Default for BenchOptions {
    fn default() -> BenchOptions {
        BenchOptions { time_limit: None, node_limit: None, workers: 1, zero_times: false }
    }
}

/// Per-configuration aggregate over all rows with that label. Upper-bound
/// means skip rows without a finite upper bound.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigSummary {
    pub config: String,
    pub problem: Problem,
    pub rows: usize,
    pub optimal: usize,
    pub feasible: usize,
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub finite_upper_rows: usize,
    pub mean_gap: f64,
    pub mean_time_s: f64,
    pub mean_nodes: f64,
}

#[derive(Clone, Debug)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub summaries: Vec<ConfigSummary>,
}

fn solve_one(name: &str, g: &ColoredGraph, cfg: &BenchConfig, opts: &BenchOptions) -> BenchRow {
    let start = Instant::now();
    let deadline = opts.time_limit.map(|limit| start + limit);
    let mut lower_sum = 0i64;
    let mut upper_sum = 0i64;
    let mut upper_unknown = false;
    let mut nodes = 0u64;
    let mut all_optimal = true;
    let mut any_infeasible = false;
    let mut any_without_incumbent = false;
    for comp in g.components() {
        let (mut sub, _) = g.induced_subgraph(&comp);
        let mut offset = 0i64;
        if cfg.use_prep {
            let reduction = prep::preprocess_mop(&sub);
            offset = reduction.objective_offset;
            sub = reduction.reduced;
        }
        let needs_bounds =
            cfg.use_warm_start || cfg.use_edge_cut || cfg.q_bar == QBarMode::Auto;
        let derived = needs_bounds.then(|| bounds::bound_and_warmstart(&sub, cfg.problem));
        let q_bar = match cfg.q_bar {
            QBarMode::Trivial => sub.n(),
            QBarMode::Auto => derived.as_ref().expect("bounds computed").q_bar,
            QBarMode::Fixed(q) => q.clamp(1, sub.n()),
        };
        let mut search = SearchConfig::new(cfg.problem, q_bar);
        let (index, cardinality) = cfg.symmetry.flags();
        search.use_symmetry_index = index;
        search.use_symmetry_cardinality = cardinality;
        if cfg.use_warm_start {
            search.warm_start = derived.as_ref().map(|b| b.warm_start.clone());
        }
        if cfg.use_edge_cut {
            search.edge_count_cut_rhs = derived.as_ref().and_then(|b| b.edge_cut_rhs);
        }
        search.node_limit = opts.node_limit;
        if let Some(deadline) = deadline {
            let remaining = deadline.saturating_duration_since(Instant::now());
            search.time_limit = Some(remaining.max(Duration::from_millis(1)));
        }
        let report = solver::solve(&sub, &search);
        nodes += report.nodes_explored;
        match report.status {
            SolveStatus::Optimal => {}
            SolveStatus::Feasible => all_optimal = false,
            SolveStatus::Timeout => {
                all_optimal = false;
                any_without_incumbent = true;
            }
            SolveStatus::InfeasibleBudget => {
                all_optimal = false;
                any_infeasible = true;
            }
        }
        lower_sum += report.lower_bound + offset;
        if report.upper_bound == i64::MAX {
            upper_unknown = true;
        } else {
            upper_sum += report.upper_bound + offset;
        }
    }
    let status = if all_optimal {
        "optimal"
    } else if any_infeasible {
        "infeasible"
    } else if any_without_incumbent {
        "timeout"
    } else {
        "feasible"
    };
    let upper = if upper_unknown { i64::MAX } else { upper_sum };
    BenchRow {
        instance: name.to_string(),
        n: g.n(),
        m: g.m(),
        colors: g.color_count(),
        problem: cfg.problem,
        config: cfg.label.clone(),
        status: status.to_string(),
        lower_bound: lower_sum,
        upper_bound: upper,
        gap: bound_gap(lower_sum, upper),
        time_s: if opts.zero_times { 0.0 } else { start.elapsed().as_secs_f64() },
        nodes,
    }
}

/// Runs every configuration on every instance. Jobs are distributed over
/// `workers` threads; rows come back in instance-major order regardless of
/// scheduling.
pub fn run_bench(
    instances: &[(String, ColoredGraph)],
    configs: &[BenchConfig],
    opts: &BenchOptions,
) -> BenchOutcome {
    let total = instances.len() * configs.len();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<BenchRow>>> = (0..total).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..opts.workers.max(1).min(total.max(1)) {
            scope.spawn(|| loop {
                let job = next.fetch_add(1, Ordering::Relaxed);
                if job >= total {
                    break;
                }
                let (name, graph) = &instances[job / configs.len()];
                let cfg = &configs[job % configs.len()];
                let row = solve_one(name, graph, cfg, opts);
                *slots[job].lock().expect("result slot") = Some(row);
            });
        }
    });
    let rows: Vec<BenchRow> = slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("result slot").expect("every job ran"))
        .collect();
    let summaries = summarize(&rows, configs);
    BenchOutcome { rows, summaries }
}

/// Aggregates rows per configuration label, in configuration order.
pub fn summarize(rows: &[BenchRow], configs: &[BenchConfig]) -> Vec<ConfigSummary> {
    configs
        .iter()
        .map(|cfg| {
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.config == cfg.label).collect();
            let count = mine.len();
            let mean = |f: &dyn Fn(&BenchRow) -> f64| {
                if count == 0 {
                    0.0
                } else {
                    mine.iter().map(|r| f(r)).sum::<f64>() / count as f64
                }
            };
            let finite: Vec<&&BenchRow> =
                mine.iter().filter(|r| r.upper_bound != i64::MAX).collect();
            let mean_upper = if finite.is_empty() {
                0.0
            } else {
                finite.iter().map(|r| r.upper_bound as f64).sum::<f64>() / finite.len() as f64
            };
            ConfigSummary {
                config: cfg.label.clone(),
                problem: cfg.problem,
                rows: count,
                optimal: mine.iter().filter(|r| r.status == "optimal").count(),
                feasible: mine.iter().filter(|r| r.status == "feasible").count(),
                mean_lower: mean(&|r| r.lower_bound as f64),
                mean_upper,
                finite_upper_rows: finite.len(),
                mean_gap: mean(&|r| r.gap),
                mean_time_s: mean(&|r| r.time_s),
                mean_nodes: mean(&|r| r.nodes as f64),
            }
        })
        .collect()
}

pub const CSV_HEADER: &str = "instance,n,m,colors,problem,config,status,lower_bound,upper_bound,gap,time_s,nodes";

/// Renders rows plus trailing `#`-prefixed summary lines. An unknown
/// upper bound prints as an empty field.
pub fn to_csv(outcome: &BenchOutcome) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &outcome.rows {
        let upper = if r.upper_bound == i64::MAX {
            String::new()
        } else {
            r.upper_bound.to_string()
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{:.4},{:.3},{}\n",
            r.instance,
            r.n,
            r.m,
            r.colors,
            r.problem,
            r.config,
            r.status,
            r.lower_bound,
            upper,
            r.gap,
            r.time_s,
            r.nodes
        ));
    }
    for s in &outcome.summaries {
        out.push_str(&summary_line(s));
        out.push('\n');
    }
    out
}

pub fn summary_line(s: &ConfigSummary) -> String {
    let mean_upper = if s.finite_upper_rows == 0 {
        "na".to_string()
    } else {
        format!("{:.2}", s.mean_upper)
    };
    format!(
        "# {}: problem={} rows={} optimal={} feasible={} mean_lower={:.2} mean_upper={} mean_gap={:.4} mean_time_s={:.3} mean_nodes={:.1}",
        s.config,
        s.problem,
        s.rows,
        s.optimal,
        s.feasible,
        s.mean_lower,
        mean_upper,
        s.mean_gap,
        s.mean_time_s,
        s.mean_nodes
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::{generate_planted_blocks, color_token};
    use crate::oracle;

    fn sample_configs() -> Vec<BenchConfig> {
        parse_configs(
            "# two ways to run mop\n\
             plain.problem = mop\n\
             plain.symmetry = none\n\
             \n\
             tuned.problem = mop   # tuned variant\n\
             tuned.prep = on\n\
             tuned.warmstart = on\n\
             tuned.qbar = auto\n",
        )
        .unwrap()
    }

    #[test]
    fn config_file_round_trip() {
        let configs = sample_configs();
        assert_eq!(configs.len(), 2);
        assert_eq!(configs[0].label, "plain");
        assert_eq!(configs[0].symmetry, SymmetryRule::None);
        assert!(!configs[0].use_prep);
        assert_eq!(configs[0].q_bar, QBarMode::Trivial);
        assert_eq!(configs[1].label, "tuned");
        assert_eq!(configs[1].symmetry, SymmetryRule::Index);
        assert!(configs[1].use_prep && configs[1].use_warm_start);
        assert_eq!(configs[1].q_bar, QBarMode::Auto);
    }

    #[test]
    fn config_errors_are_reported() {
        assert!(matches!(
            parse_configs("just words\n"),
            Err(ConfigError::BadLine { line: 1, .. })
        ));
        assert!(matches!(
            parse_configs("a.problem = mop\na.speed = fast\n"),
            Err(ConfigError::UnknownKey { .. })
        ));
        assert!(matches!(
            parse_configs("a.problem = map\n"),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            parse_configs("a.qbar = -3\n"),
            Err(ConfigError::BadValue { .. })
        ));
        assert!(matches!(
            parse_configs("a.symmetry = index\n"),
            Err(ConfigError::MissingProblem { .. })
        ));
        assert!(matches!(
            parse_configs("a.problem = mec\na.prep = on\n"),
            Err(ConfigError::PrepRequiresMop { .. })
        ));
    }

    #[test]
    fn rows_come_back_in_instance_major_order() {
        let instances = vec![
            ("tri".to_string(), fixtures::tricolor_triangle()),
            ("twin".to_string(), fixtures::two_a_triangle()),
        ];
        let configs = sample_configs();
        let opts = BenchOptions { zero_times: true, ..BenchOptions::default() };
        let out = run_bench(&instances, &configs, &opts);
        assert_eq!(out.rows.len(), 4);
        let keys: Vec<(String, String)> =
            out.rows.iter().map(|r| (r.instance.clone(), r.config.clone())).collect();
        assert_eq!(
            keys,
            vec![
                ("tri".into(), "plain".into()),
                ("tri".into(), "tuned".into()),
                ("twin".into(), "plain".into()),
                ("twin".into(), "tuned".into()),
            ]
        );
        for row in &out.rows {
            assert_eq!(row.status, "optimal");
            assert_eq!(row.lower_bound, row.upper_bound);
            assert_eq!(row.gap, 0.0);
            let g = if row.instance == "tri" {
                fixtures::tricolor_triangle()
            } else {
                fixtures::two_a_triangle()
            };
            let expect = oracle::enumerate_optima(&g, Problem::Mop).unwrap().optimum;
            assert_eq!(row.lower_bound, expect, "{} under {}", row.instance, row.config);
        }
    }

    /// Two disjoint triangles; the row must report the summed optimum and
    /// the original instance size.
    #[test]
    fn disconnected_instances_are_split_and_aggregated() {
        let tokens: Vec<String> = [0, 1, 2, 0, 1, 2].iter().map(|&c| color_token(c)).collect();
        let refs: Vec<&str> = tokens.iter().map(|s| s.as_str()).collect();
        let g = ColoredGraph::build(&refs, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
            .unwrap();
        let configs = parse_configs("a.problem = mec\nb.problem = mcc\n").unwrap();
        let out = run_bench(
            &[("pair".to_string(), g.clone())],
            &configs,
            &BenchOptions { zero_times: true, ..BenchOptions::default() },
        );
        assert_eq!(out.rows.len(), 2);
        assert_eq!((out.rows[0].n, out.rows[0].m, out.rows[0].colors), (6, 6, 3));
        let mec = oracle::enumerate_optima(&g, Problem::Mec).unwrap().optimum;
        let mcc = oracle::enumerate_optima(&g, Problem::Mcc).unwrap().optimum;
        assert_eq!(out.rows[0].lower_bound, mec);
        assert_eq!(out.rows[1].lower_bound, mcc);
        assert_eq!(mcc, 2);
        assert!(out.rows.iter().all(|r| r.status == "optimal"));
    }

    #[test]
    fn worker_count_does_not_change_the_output() {
        let instances: Vec<(String, ColoredGraph)> = (0..4)
            .map(|seed| (format!("b{seed}"), generate_planted_blocks(2, 4, 0.2, seed)))
            .collect();
        let configs = sample_configs();
        let serial = run_bench(
            &instances,
            &configs,
            &BenchOptions { zero_times: true, workers: 1, ..BenchOptions::default() },
        );
        let parallel = run_bench(
            &instances,
            &configs,
            &BenchOptions { zero_times: true, workers: 4, ..BenchOptions::default() },
        );
        assert_eq!(to_csv(&serial), to_csv(&parallel));
    }

    #[test]
    fn summaries_match_an_independent_pass() {
        let instances = vec![
            ("tri".to_string(), fixtures::tricolor_triangle()),
            ("path".to_string(), fixtures::two_a_path()),
        ];
        let configs = parse_configs("m.problem = mcc\nm.warmstart = on\n").unwrap();
        let out = run_bench(
            &instances,
            &configs,
            &BenchOptions { zero_times: true, ..BenchOptions::default() },
        );
        let s = &out.summaries[0];
        assert_eq!((s.rows, s.optimal, s.feasible), (2, 2, 0));
        let lower: f64 =
            out.rows.iter().map(|r| r.lower_bound as f64).sum::<f64>() / out.rows.len() as f64;
        assert_eq!(s.mean_lower, lower);
        assert_eq!(s.mean_gap, 0.0);
        assert_eq!(s.mean_time_s, 0.0);
        assert!(summary_line(s).starts_with("# m: problem=mcc rows=2 optimal=2 feasible=0"));
    }

    /// A fixed slot budget below what feasibility requires must surface as
    /// an `infeasible` row, not a panic.
    #[test]
    fn too_small_fixed_budget_reports_infeasible() {
        let configs = parse_configs("tight.problem = mcc\ntight.qbar = 1\n").unwrap();
        let out = run_bench(
            &[("twin".to_string(), fixtures::two_a_triangle())],
            &configs,
            &BenchOptions { zero_times: true, ..BenchOptions::default() },
        );
        assert_eq!(out.rows[0].status, "infeasible");
        assert_eq!(out.summaries[0].optimal, 0);
    }

    #[test]
    fn ten_instances_and_two_configs_make_twenty_rows() {
        let instances: Vec<(String, ColoredGraph)> = (0..10)
            .map(|seed| {
                let g = crate::gen::generate(&crate::gen::GenSpec {
                    n: 5,
                    edge_probability: 0.5,
                    colors: 3,
                    distribution: crate::gen::ColorDistribution::Uniform,
                    seed,
                })
                .unwrap();
                (format!("r{seed}"), g)
            })
            .collect();
        let out = run_bench(
            &instances,
            &sample_configs(),
            &BenchOptions { zero_times: true, ..BenchOptions::default() },
        );
        assert_eq!(out.rows.len(), 20);
        assert_eq!(out.summaries.len(), 2);
        let text = to_csv(&out);
        assert_eq!(text.lines().count(), 1 + 20 + 2);
    }

    /// The preprocessing + warm-start pipeline must search less than the
    /// plain configuration on instances built around extractable blocks.
    #[test]
    fn tuned_config_searches_fewer_nodes_on_block_instances() {
        let instances: Vec<(String, ColoredGraph)> = (0..6)
            .map(|seed| (format!("b{seed}"), generate_planted_blocks(3, 4, 0.2, 40 + seed)))
            .collect();
        let configs = sample_configs();
        let out = run_bench(
            &instances,
            &configs,
            &BenchOptions { zero_times: true, ..BenchOptions::default() },
        );
        let plain = &out.summaries[0];
        let tuned = &out.summaries[1];
        assert_eq!(plain.optimal, 6);
        assert_eq!(tuned.optimal, 6);
        assert!(
            tuned.mean_nodes < plain.mean_nodes,
            "tuned {} vs plain {}",
            tuned.mean_nodes,
            plain.mean_nodes
        );
        // Same optima either way.
        for pair in out.rows.chunks(2) {
            assert_eq!(pair[0].lower_bound, pair[1].lower_bound);
        }
    }

    /// A hard instance under a tiny time limit must surface as a
    /// non-optimal row whose gap is finite.
    #[test]
    fn hitting_the_time_limit_leaves_a_finite_gap() {
        let g = crate::gen::generate(&crate::gen::GenSpec {
            n: 20,
            edge_probability: 0.8,
            colors: 5,
            distribution: crate::gen::ColorDistribution::Uniform,
            seed: 77,
        })
        .unwrap();
        let configs = parse_configs("slow.problem = mec\nslow.symmetry = none\n").unwrap();
        let out = run_bench(
            &[("dense".to_string(), g)],
            &configs,
            &BenchOptions {
                time_limit: Some(Duration::from_millis(50)),
                ..BenchOptions::default()
            },
        );
        let row = &out.rows[0];
        assert_ne!(row.status, "optimal");
        assert_ne!(row.upper_bound, i64::MAX);
        assert!(row.gap > 0.0 && row.gap <= 1.0, "gap {}", row.gap);
        assert!(row.lower_bound <= row.upper_bound);
    }

    #[test]
    fn csv_is_stable_and_carries_the_header() {
        let out = run_bench(
            &[("tri".to_string(), fixtures::tricolor_triangle())],
            &parse_configs("a.problem = mop\n").unwrap(),
            &BenchOptions { zero_times: true, ..BenchOptions::default() },
        );
        let text = to_csv(&out);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let expected = format!("tri,3,3,3,mop,a,optimal,3,3,0.0000,0.000,{}", out.rows[0].nodes);
        assert_eq!(lines.next(), Some(expected.as_str()));
        assert!(lines.next().unwrap().starts_with("# a: problem=mop rows=1 optimal=1"));
    }
}
