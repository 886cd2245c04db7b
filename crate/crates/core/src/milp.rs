//! Mixed-integer linear formulation of the three partition problems, with
//! deterministic LP-format export and exhaustive point validation.
//!
//! Variables, for `n` nodes, `m` edges and `Q` slots:
//!
//! * `x_i_k` (binary) — node `i` sits in slot `k`;
//! * `y_u_v` (binary, one per edge, `u < v`) — edge kept;
//! * `z_i_j_k` (continuous in `[0,1]`, all pairs `i < j`) — linearization
//!   of `x_i_k * x_j_k`; integral automatically at integer `x`;
//! * `w_k` (binary, MCC only) — slot `k` is nonempty.
//!
//! Static rows: assignment (`sum_k x_i_k = 1`), color (`sum_{i in V^c}
//! x_i_k <= 1`), Fortet triples (`z >= x_i + x_j - 1`, `z <= x_i`,
//! `z <= x_j`), edge coupling (`y_uv <= sum_k z_uv_k`), optional symmetry
//! rows, optional keep-edge strengthening (`y_uv >= z_uv_k`), optional
//! global kept-edge lower bound, and MCC slot-open coupling
//! (`sum_i x_i_k <= n w_k`).
//!
//! Connectivity is enforced lazily; the model only records which family a
//! solver must separate:
//!
//! * aggregated — `|U||V\U| sum_{e in cut(U)} y_e >= sum_{i in U, j not in
//!   U, k} z_i_j_k` for every proper node subset `U`;
//! * disaggregated — `sum_{e in cut(U)} y_e >= z_i_j_k` per witness;
//! * paths — `sum_{e in P} y_e <= |P| - 1 + sum_k z_i_j_k` for every
//!   elementary path `P` between `i` and `j` (subsumes the edge rows for
//!   single-edge paths).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{ColoredGraph, EdgeSet, NodeSet};
use crate::solution::{Partition, Problem};

/// Feasibility tolerance for row evaluation; every quantity in the model
/// is integral, so this only absorbs float noise.
pub const ROW_TOLERANCE: f64 = 1e-6;

/// validate_point refuses to exhaust the lazy families above this size.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// Hard cap on variable count (the z family dominates).
const MAX_VARIABLES: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    None,
    Aggregated,
    Disaggregated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeModel {
    /// Static rows `y_uv <= sum_k z_uv_k`.
    Edge,
    /// Lazy elementary-path family instead of the edge rows.
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    None,
    /// Non-increasing slot cardinalities: `sum_i x_i_k >= sum_i x_i_{k+1}`.
    Cardinality,
    /// Node `i` may only use slots `1..=i`: `sum_{k<=min(i,Q)} x_i_k = 1`.
    Index,
}

#[derive(Clone, Debug)]
pub struct ModelConfig {
    pub problem: Problem,
    /// Number of slots Q.
    pub slots: usize,
    pub connectivity: Connectivity,
    pub edge_model: EdgeModel,
    pub symmetry: Symmetry,
    /// Emit `y_uv >= z_uv_k` strengthening rows.
    pub keep_edge_cuts: bool,
    /// Optional global lower bound on kept edges: `sum_e y_e >= rhs`.
    pub edge_count_rhs: Option<i64>,
}

impl ModelConfig {
    /// Connectivity defaults to aggregated for MEC/MCC and none for MOP
    /// (where parts may induce several components).
    pub fn standard(problem: Problem, slots: usize) -> ModelConfig {
        ModelConfig {
            problem,
            slots,
            connectivity: if problem.requires_connectivity() {
                Connectivity::Aggregated
            } else {
                Connectivity::None
            },
            edge_model: EdgeModel::Edge,
            symmetry: Symmetry::None,
            keep_edge_cuts: false,
            edge_count_rhs: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("{problem} requires a connectivity family (parts must be connected)")]
    MissingConnectivity { problem: Problem },
    #[error("slot count must be at least 1")]
    ZeroSlots,
    #[error("model would need {vars} variables (limit {limit})")]
    TooLarge { vars: usize, limit: usize },
    #[error("partition uses {parts} parts but the model has {slots} slots")]
    TooManyParts { parts: usize, slots: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Continuous01,
}

#[derive(Clone, Debug)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub name: String,
    /// (coefficient, variable id), in emission order.
    pub terms: Vec<(f64, usize)>,
    pub rel: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn eval(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(c, v)| c * values[v]).sum()
    }

    pub fn violated_by(&self, values: &[f64]) -> bool {
        let lhs = self.eval(values);
        match self.rel {
            Relation::Le => lhs > self.rhs + ROW_TOLERANCE,
            Relation::Ge => lhs < self.rhs - ROW_TOLERANCE,
            Relation::Eq => (lhs - self.rhs).abs() > ROW_TOLERANCE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LazyFamily {
    ConnectivityAggregated,
    ConnectivityDisaggregated,
    Paths,
}

impl LazyFamily {
    fn describe(self) -> &'static str {
        match self {
            LazyFamily::ConnectivityAggregated => {
                "connectivity-aggregated: |U||V-U| sum_{cut(U)} y >= sum_{i in U, j notin U, k} z_i_j_k, all proper U"
            }
            LazyFamily::ConnectivityDisaggregated => {
                "connectivity-disaggregated: sum_{cut(U)} y >= z_i_j_k, all proper U and witnesses i in U, j notin U, k"
            }
            LazyFamily::Paths => {
                "paths: sum_{e in P} y <= |P| - 1 + sum_k z_i_j_k, all elementary i-j paths P"
            }
        }
    }
}

/// Static row counts per family; closed forms over (n, m, |C|, cfg).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowCounts {
    pub assignment: usize,
    pub color: usize,
    pub fortet: usize,
    pub edge: usize,
    pub symmetry: usize,
    pub keep_edge: usize,
    pub edge_count: usize,
    pub slot_open: usize,
}

impl RowCounts {
    pub fn total(&self) -> usize {
        self.assignment
            + self.color
            + self.fortet
            + self.edge
            + self.symmetry
            + self.keep_edge
            + self.edge_count
            + self.slot_open
    }
}

pub fn static_row_counts(n: usize, m: usize, colors: usize, cfg: &ModelConfig) -> RowCounts {
    let q = cfg.slots;
    let pairs = n * (n - 1) / 2;
    RowCounts {
        assignment: n,
        color: colors * q,
        fortet: 3 * pairs * q,
        edge: if cfg.edge_model == EdgeModel::Edge { m } else { 0 },
        symmetry: match cfg.symmetry {
            Symmetry::None => 0,
            Symmetry::Cardinality => q - 1,
            Symmetry::Index => n,
        },
        keep_edge: if cfg.keep_edge_cuts { m * q } else { 0 },
        edge_count: usize::from(cfg.edge_count_rhs.is_some()),
        slot_open: if cfg.problem == Problem::Mcc { q } else { 0 },
    }
}

pub struct MilpModel {
    pub cfg: ModelConfig,
    pub n: usize,
    pub m: usize,
    pub colors: usize,
    pub vars: Vec<Variable>,
    pub maximize: bool,
    /// Objective terms, same encoding as constraint terms.
    pub objective: Vec<(f64, usize)>,
    pub constraints: Vec<Constraint>,
    pub lazy: Vec<LazyFamily>,
    // Variable id layout.
    q: usize,
    y_base: usize,
    z_base: usize,
    w_base: usize,
    edges: Vec<(usize, usize)>,
}

impl MilpModel {
    pub fn x(&self, i: usize, k: usize) -> usize {
        debug_assert!(i < self.n && k < self.q);
        i * self.q + k
    }

    pub fn y(&self, edge_id: usize) -> usize {
        debug_assert!(edge_id < self.m);
        self.y_base + edge_id
    }

    /// z id for the unordered pair {i, j}, i != j.
    pub fn z(&self, i: usize, j: usize, k: usize) -> usize {
        let (i, j) = (i.min(j), i.max(j));
        debug_assert!(j < self.n && k < self.q);
        // Pair rank in lexicographic (i, j) order.
        let rank = i * self.n - i * (i + 1) / 2 + (j - i - 1);
        self.z_base + rank * self.q + k
    }

    pub fn w(&self, k: usize) -> usize {
        debug_assert!(self.cfg.problem == Problem::Mcc && k < self.q);
        self.w_base + k
    }

    /// Variable assignment derived from a partition: `x` from the slots,
    /// `z` and `w` induced by `x`, and `y` equal to `kept`.
    pub fn point_values_with_kept(
        &self,
        g: &ColoredGraph,
        p: &Partition,
        kept: &EdgeSet,
    ) -> Result<Vec<f64>, ModelError> {
        if p.part_count() > self.q {
            return Err(ModelError::TooManyParts { parts: p.part_count(), slots: self.q });
        }
        let mut values = vec![0.0; self.vars.len()];
        for v in 0..self.n {
            values[self.x(v, p.slot_of(v))] = 1.0;
        }
        for e in 0..self.m {
            if kept.contains(e) {
                values[self.y(e)] = 1.0;
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if p.slot_of(i) == p.slot_of(j) {
                    values[self.z(i, j, p.slot_of(i))] = 1.0;
                }
            }
        }
        if self.cfg.problem == Problem::Mcc {
            for k in 0..p.part_count() {
                values[self.w(k)] = 1.0;
            }
        }
        let _ = g;
        Ok(values)
    }

    /// As above with `y` derived from the partition itself.
    pub fn point_values(&self, g: &ColoredGraph, p: &Partition) -> Result<Vec<f64>, ModelError> {
        self.point_values_with_kept(g, p, &p.kept_edges(g))
    }

    /// One aggregated connectivity row for the cut `U`.
    pub fn aggregated_cut_row(&self, g: &ColoredGraph, u: &NodeSet) -> Constraint {
        let inside: Vec<usize> = u.iter().collect();
        let side = inside.len();
        let weight = (side * (self.n - side)) as f64;
        let mut terms: Vec<(f64, usize)> = g
            .cut_edges(u)
            .into_iter()
            .map(|e| (weight, self.y(e)))
            .collect();
        for &i in &inside {
            for j in 0..self.n {
                if !u.contains(j) {
                    for k in 0..self.q {
                        terms.push((-1.0, self.z(i, j, k)));
                    }
                }
            }
        }
        Constraint {
            name: format!("conn_agg_u{}", set_label(u)),
            terms,
            rel: Relation::Ge,
            rhs: 0.0,
        }
    }

    /// One disaggregated connectivity row for cut `U` and witness (i, j, k).
    pub fn disaggregated_cut_row(
        &self,
        g: &ColoredGraph,
        u: &NodeSet,
        i: usize,
        j: usize,
        k: usize,
    ) -> Constraint {
        debug_assert!(u.contains(i) && !u.contains(j));
        let mut terms: Vec<(f64, usize)> =
            g.cut_edges(u).into_iter().map(|e| (1.0, self.y(e))).collect();
        terms.push((-1.0, self.z(i, j, k)));
        Constraint {
            name: format!("conn_dis_u{}_{}_{}_{}", set_label(u), i + 1, j + 1, k + 1),
            terms,
            rel: Relation::Ge,
            rhs: 0.0,
        }
    }

    /// One path row for an elementary path given as a node sequence.
    pub fn path_row(&self, g: &ColoredGraph, path: &[usize]) -> Constraint {
        assert!(path.len() >= 2, "a path needs at least one edge");
        let mut terms = Vec::new();
        for pair in path.windows(2) {
            let e = g.edge_id(pair[0], pair[1]).expect("path follows edges");
            terms.push((1.0, self.y(e)));
        }
        let (i, j) = (path[0], *path.last().unwrap());
        for k in 0..self.q {
            terms.push((-1.0, self.z(i, j, k)));
        }
        Constraint {
            name: format!("path_{}_{}_len{}", i.min(j) + 1, i.max(j) + 1, path.len() - 1),
            terms,
            rel: Relation::Le,
            rhs: (path.len() - 2) as f64,
        }
    }
}

fn set_label(u: &NodeSet) -> String {
    u.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join("_")
}

pub fn build_model(g: &ColoredGraph, cfg: &ModelConfig) -> Result<MilpModel, ModelError> {
    if cfg.slots == 0 {
        return Err(ModelError::ZeroSlots);
    }
    if cfg.problem.requires_connectivity() && cfg.connectivity == Connectivity::None {
        return Err(ModelError::MissingConnectivity { problem: cfg.problem });
    }
    let (n, m, q) = (g.n(), g.m(), cfg.slots);
    let pairs = n * (n - 1) / 2;
    let var_count =
        n * q + m + pairs * q + if cfg.problem == Problem::Mcc { q } else { 0 };
    if var_count > MAX_VARIABLES {
        return Err(ModelError::TooLarge { vars: var_count, limit: MAX_VARIABLES });
    }

    let mut vars = Vec::with_capacity(var_count);
    for i in 0..n {
        for k in 0..q {
            vars.push(Variable { name: format!("x_{}_{}", i + 1, k + 1), kind: VarKind::Binary });
        }
    }
    let y_base = vars.len();
    let edges: Vec<(usize, usize)> =
        g.edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect();
    for &(u, v) in &edges {
        vars.push(Variable { name: format!("y_{}_{}", u + 1, v + 1), kind: VarKind::Binary });
    }
    let z_base = vars.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..q {
                vars.push(Variable {
                    name: format!("z_{}_{}_{}", i + 1, j + 1, k + 1),
                    kind: VarKind::Continuous01,
                });
            }
        }
    }
    let w_base = vars.len();
    if cfg.problem == Problem::Mcc {
        for k in 0..q {
            vars.push(Variable { name: format!("w_{}", k + 1), kind: VarKind::Binary });
        }
    }

    let mut model = MilpModel {
        cfg: cfg.clone(),
        n,
        m,
        colors: g.color_count(),
        vars,
        maximize: cfg.problem.is_maximization(),
        objective: Vec::new(),
        constraints: Vec::new(),
        lazy: Vec::new(),
        q,
        y_base,
        z_base,
        w_base,
        edges,
    };

    model.objective = match cfg.problem {
        Problem::Mop => (0..m).map(|e| (1.0, model.y(e))).collect(),
        Problem::Mec => {
            let mut terms = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in 0..q {
                        terms.push((1.0, model.z(i, j, k)));
                    }
                }
            }
            terms
        }
        Problem::Mcc => (0..q).map(|k| (1.0, model.w(k))).collect(),
    };

    // Assignment rows.
    for i in 0..n {
        model.constraints.push(Constraint {
            name: format!("assign_{}", i + 1),
            terms: (0..q).map(|k| (1.0, model.x(i, k))).collect(),
            rel: Relation::Eq,
            rhs: 1.0,
        });
    }
    // Color rows: at most one node of each color per slot.
    let classes = g.color_classes();
    for (c, class) in classes.iter().enumerate() {
        for k in 0..q {
            model.constraints.push(Constraint {
                name: format!("color_{}_{}", c + 1, k + 1),
                terms: class.iter().map(|&i| (1.0, model.x(i, k))).collect(),
                rel: Relation::Le,
                rhs: 1.0,
            });
        }
    }
    // Fortet triples linearizing z = x * x.
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..q {
                let (xi, xj, z) = (model.x(i, k), model.x(j, k), model.z(i, j, k));
                let tag = format!("{}_{}_{}", i + 1, j + 1, k + 1);
                model.constraints.push(Constraint {
                    name: format!("fortet_lb_{tag}"),
                    terms: vec![(1.0, xi), (1.0, xj), (-1.0, z)],
                    rel: Relation::Le,
                    rhs: 1.0,
                });
                model.constraints.push(Constraint {
                    name: format!("fortet_ub1_{tag}"),
                    terms: vec![(1.0, z), (-1.0, xi)],
                    rel: Relation::Le,
                    rhs: 0.0,
                });
                model.constraints.push(Constraint {
                    name: format!("fortet_ub2_{tag}"),
                    terms: vec![(1.0, z), (-1.0, xj)],
                    rel: Relation::Le,
                    rhs: 0.0,
                });
            }
        }
    }
    // Edge coupling (static form): an edge may be kept only inside a slot.
    if cfg.edge_model == EdgeModel::Edge {
        for e in 0..m {
            let (u, v) = model.edges[e];
            let mut terms = vec![(1.0, model.y(e))];
            for k in 0..q {
                terms.push((-1.0, model.z(u, v, k)));
            }
            model.constraints.push(Constraint {
                name: format!("edge_{}_{}", u + 1, v + 1),
                terms,
                rel: Relation::Le,
                rhs: 0.0,
            });
        }
    }
    // Symmetry rows.
    match cfg.symmetry {
        Symmetry::None => {}
        Symmetry::Cardinality => {
            for k in 0..q - 1 {
                let mut terms = Vec::with_capacity(2 * n);
                for i in 0..n {
                    terms.push((1.0, model.x(i, k)));
                }
                for i in 0..n {
                    terms.push((-1.0, model.x(i, k + 1)));
                }
                model.constraints.push(Constraint {
                    name: format!("card_{}", k + 1),
                    terms,
                    rel: Relation::Ge,
                    rhs: 0.0,
                });
            }
        }
        Symmetry::Index => {
            for i in 0..n {
                let limit = (i + 1).min(q);
                model.constraints.push(Constraint {
                    name: format!("index_{}", i + 1),
                    terms: (0..limit).map(|k| (1.0, model.x(i, k))).collect(),
                    rel: Relation::Eq,
                    rhs: 1.0,
                });
            }
        }
    }
    // Keep-edge strengthening.
    if cfg.keep_edge_cuts {
        for e in 0..m {
            let (u, v) = model.edges[e];
            for k in 0..q {
                model.constraints.push(Constraint {
                    name: format!("keep_{}_{}_{}", u + 1, v + 1, k + 1),
                    terms: vec![(1.0, model.z(u, v, k)), (-1.0, model.y(e))],
                    rel: Relation::Le,
                    rhs: 0.0,
                });
            }
        }
    }
    // Global kept-edge lower bound.
    if let Some(rhs) = cfg.edge_count_rhs {
        model.constraints.push(Constraint {
            name: "edge_count".to_string(),
            terms: (0..m).map(|e| (1.0, model.y(e))).collect(),
            rel: Relation::Ge,
            rhs: rhs as f64,
        });
    }
    // MCC slot-open coupling.
    if cfg.problem == Problem::Mcc {
        for k in 0..q {
            let mut terms: Vec<(f64, usize)> = (0..n).map(|i| (1.0, model.x(i, k))).collect();
            terms.push((-(n as f64), model.w(k)));
            model.constraints.push(Constraint {
                name: format!("slot_open_{}", k + 1),
                terms,
                rel: Relation::Le,
                rhs: 0.0,
            });
        }
    }

    match cfg.connectivity {
        Connectivity::None => {}
        Connectivity::Aggregated => model.lazy.push(LazyFamily::ConnectivityAggregated),
        Connectivity::Disaggregated => model.lazy.push(LazyFamily::ConnectivityDisaggregated),
    }
    if cfg.edge_model == EdgeModel::Path {
        model.lazy.push(LazyFamily::Paths);
    }

    debug_assert_eq!(
        model.constraints.len(),
        static_row_counts(n, m, g.color_count(), cfg).total()
    );
    Ok(model)
}

fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

fn fmt_terms(terms: &[(f64, usize)], vars: &[Variable]) -> String {
    if terms.is_empty() {
        return format!("0 {}", vars[0].name);
    }
    let mut out = String::new();
    for (idx, &(c, v)) in terms.iter().enumerate() {
        let mag = c.abs();
        let sign = if c < 0.0 { "-" } else { "+" };
        if idx == 0 {
            if c < 0.0 {
                out.push_str("- ");
            }
        } else {
            out.push_str(sign);
            out.push(' ');
        }
        if mag != 1.0 {
            out.push_str(&fmt_num(mag));
            out.push(' ');
        }
        out.push_str(&vars[v].name);
        if idx + 1 < terms.len() {
            out.push(' ');
        }
    }
    out
}

/// Deterministic LP-format text: header comments (configuration, static
/// row counts, lazy families), objective, rows, bounds for the continuous
/// variables, binaries, `End`.
pub fn export_lp(model: &MilpModel) -> String {
    let cfg = &model.cfg;
    let mut out = String::new();
    let _ = writeln!(out, "\\ colorful component partition model");
    let _ = writeln!(
        out,
        "\\ problem={} n={} m={} colors={} slots={} connectivity={} edges={} symmetry={} keep_edge_cuts={} edge_count_rhs={}",
        cfg.problem,
        model.n,
        model.m,
        model.colors,
        cfg.slots,
        match cfg.connectivity {
            Connectivity::None => "none",
            Connectivity::Aggregated => "aggregated",
            Connectivity::Disaggregated => "disaggregated",
        },
        match cfg.edge_model {
            EdgeModel::Edge => "edge",
            EdgeModel::Path => "path",
        },
        match cfg.symmetry {
            Symmetry::None => "none",
            Symmetry::Cardinality => "cardinality",
            Symmetry::Index => "index",
        },
        if cfg.keep_edge_cuts { "on" } else { "off" },
        cfg.edge_count_rhs.map_or("none".to_string(), |r| r.to_string()),
    );
    let counts = static_row_counts(model.n, model.m, model.colors, cfg);
    let _ = writeln!(
        out,
        "\\ static rows: assignment={} color={} fortet={} edge={} symmetry={} keep_edge={} edge_count={} slot_open={} total={}",
        counts.assignment,
        counts.color,
        counts.fortet,
        counts.edge,
        counts.symmetry,
        counts.keep_edge,
        counts.edge_count,
        counts.slot_open,
        counts.total()
    );
    if model.lazy.is_empty() {
        let _ = writeln!(out, "\\ lazy families: none");
    } else {
        for fam in &model.lazy {
            let _ = writeln!(out, "\\ lazy family: {}", fam.describe());
        }
    }
    let _ = writeln!(out, "{}", if model.maximize { "Maximize" } else { "Minimize" });
    let _ = writeln!(out, " obj: {}", fmt_terms(&model.objective, &model.vars));
    let _ = writeln!(out, "Subject To");
    for c in &model.constraints {
        let rel = match c.rel {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        let _ = writeln!(
            out,
            " {}: {} {} {}",
            c.name,
            fmt_terms(&c.terms, &model.vars),
            rel,
            fmt_num(c.rhs)
        );
    }
    let _ = writeln!(out, "Bounds");
    for v in &model.vars {
        if v.kind == VarKind::Continuous01 {
            let _ = writeln!(out, " 0 <= {} <= 1", v.name);
        }
    }
    let _ = writeln!(out, "Binaries");
    for v in &model.vars {
        if v.kind == VarKind::Binary {
            let _ = writeln!(out, " {}", v.name);
        }
    }
    let _ = writeln!(out, "End");
    out
}

#[derive(Clone, Debug)]
pub struct PointReport {
    pub violated_static: Vec<String>,
    pub violated_lazy: Vec<String>,
    /// False when the instance exceeds [`EXHAUSTIVE_LIMIT`] and only the
    /// static rows were checked.
    pub lazy_exhaustive: bool,
}

impl PointReport {
    pub fn clean(&self) -> bool {
        self.violated_static.is_empty() && self.violated_lazy.is_empty()
    }
}

/// Checks the point derived from `p` (with `y` = kept edges of `p`)
/// against every static row, then exhausts the model's lazy families —
/// every proper subset for the connectivity families, every elementary
/// path for the path family — when `n` is within [`EXHAUSTIVE_LIMIT`].
pub fn validate_point(
    model: &MilpModel,
    g: &ColoredGraph,
    p: &Partition,
) -> Result<PointReport, ModelError> {
    let values = model.point_values(g, p)?;
    let mut report = PointReport {
        violated_static: Vec::new(),
        violated_lazy: Vec::new(),
        lazy_exhaustive: model.n <= EXHAUSTIVE_LIMIT,
    };
    for c in &model.constraints {
        if c.violated_by(&values) {
            report.violated_static.push(c.name.clone());
        }
    }
    if !report.lazy_exhaustive || model.lazy.is_empty() {
        return Ok(report);
    }

    for fam in &model.lazy {
        match fam {
            LazyFamily::ConnectivityAggregated => {
                for_each_proper_subset(model.n, |u| {
                    let row = model.aggregated_cut_row(g, u);
                    if row.violated_by(&values) {
                        report.violated_lazy.push(row.name);
                    }
                });
            }
            LazyFamily::ConnectivityDisaggregated => {
                for_each_proper_subset(model.n, |u| {
                    for i in u.iter() {
                        for j in 0..model.n {
                            if !u.contains(j) {
                                for k in 0..model.q {
                                    let row = model.disaggregated_cut_row(g, u, i, j, k);
                                    if row.violated_by(&values) {
                                        report.violated_lazy.push(row.name);
                                    }
                                }
                            }
                        }
                    }
                });
            }
            LazyFamily::Paths => {
                for_each_elementary_path(g, |path| {
                    let row = model.path_row(g, path);
                    if row.violated_by(&values) {
                        report.violated_lazy.push(row.name);
                    }
                });
            }
        }
    }
    Ok(report)
}

fn for_each_proper_subset(n: usize, mut f: impl FnMut(&NodeSet)) {
    debug_assert!(n <= EXHAUSTIVE_LIMIT);
    for mask in 1u32..(1 << n) - 1 {
        let u = NodeSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1));
        f(&u);
    }
}

/// Every elementary path with at least one edge, each undirected path
/// visited once (enforced by endpoint order).
fn for_each_elementary_path(g: &ColoredGraph, mut f: impl FnMut(&[usize])) {
    let n = g.n();
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        extend_paths(g, &mut path, &mut on_path, &mut f);
        on_path[start] = false;
        path.pop();
    }
}

fn extend_paths(
    g: &ColoredGraph,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    f: &mut impl FnMut(&[usize]),
) {
    let last = *path.last().unwrap();
    for (next, _) in g.neighbors(last) {
        if on_path[next] {
            continue;
        }
        path.push(next);
        on_path[next] = true;
        // Emit with the smaller endpoint first so each undirected path is
        // seen exactly once.
        if path[0] < next {
            f(path);
        }
        extend_paths(g, path, on_path, f);
        on_path[next] = false;
        path.pop();
    }
}
