//! Exact branch-and-bound solver for the three partition problems.
//!
//! The engine assigns nodes to slots in index order, deriving kept edges
//! and pair counts incrementally instead of solving relaxations. Pruning:
//!
//! * color clashes — a slot never holds two nodes of one color;
//! * slot-index canonicalization (default) — node `i` may only open the
//!   next fresh slot, so each set partition is visited once;
//! * admissible objective bounds per problem (see [`SearchConfig`]);
//! * for MEC/MCC, potential connectivity — a slot's members must lie in
//!   one component of the graph induced by the slot plus all unassigned
//!   nodes, which at full depth is exact connectivity;
//! * an optional lower bound on kept edges.
//!
//! Leaves are additionally certified through the integer-point separation
//! routines before they become incumbents.

use std::time::{Duration, Instant};

use crate::bitset::BitSet;
use crate::graph::ColoredGraph;
use crate::milp::{build_model, validate_point, ModelConfig};
use crate::separation::{separate_connectivity, IntegerPoint};
use crate::solution::{check_feasible, objective_value, Partition, Problem};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub problem: Problem,
    /// Slot budget; solutions may use at most this many parts.
    pub q_bar: usize,
    /// Canonical slot opening: node `i` only uses slots `0..=opened`.
    /// When set, `use_symmetry_cardinality` is ignored (the two rules
    /// exclude different labelings of a partition and combining them can
    /// exclude all of them).
    pub use_symmetry_index: bool,
    /// Free slot choice plus a non-increasing slot-size dominance rule.
    pub use_symmetry_cardinality: bool,
    /// Feasible partition seeding the incumbent.
    pub warm_start: Option<Partition>,
    /// Prune states that cannot keep at least this many edges.
    pub edge_count_cut_rhs: Option<i64>,
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl SearchConfig {
    pub fn new(problem: Problem, q_bar: usize) -> SearchConfig {
        SearchConfig {
            problem,
            q_bar,
            use_symmetry_index: true,
            use_symmetry_cardinality: false,
            warm_start: None,
            edge_count_cut_rhs: None,
            time_limit: None,
            node_limit: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    /// Search tree exhausted; `best` is optimal.
    Optimal,
    /// A limit stopped the search with an incumbent in hand.
    Feasible,
    /// Search tree exhausted without any feasible partition: the slot
    /// budget is too small.
    InfeasibleBudget,
    /// A limit stopped the search before any incumbent was found.
    Timeout,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub best: Option<Partition>,
    /// Bounds on the optimum: `lower_bound <= optimum <= upper_bound`.
    /// For maximization the incumbent sits on the lower side, for
    /// minimization on the upper side.
    pub lower_bound: i64,
    pub upper_bound: i64,
    /// `(upper_bound - lower_bound) / upper_bound`, 0 when closed.
    pub gap: f64,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// Relative optimality gap: 0 when the bounds meet, 1 when the open side
/// is unknown, `(upper - lower) / upper` otherwise.
pub fn bound_gap(lower: i64, upper: i64) -> f64 {
    if lower == upper || upper == 0 {
        0.0
    } else if upper == i64::MAX {
        1.0
    } else {
        (upper - lower) as f64 / upper as f64
    }
}

pub fn solve(g: &ColoredGraph, cfg: &SearchConfig) -> SolveReport {
    assert!(cfg.q_bar >= 1, "slot budget must be positive");
    let start = Instant::now();
    let mut engine = Engine::new(g, cfg);
    if let Some(warm) = &cfg.warm_start {
        if warm.part_count() <= cfg.q_bar && check_feasible(g, warm).feasible_for(cfg.problem) {
            engine.best_value = objective_value(g, warm, cfg.problem);
            engine.best = Some(warm.clone());
        }
    }
    engine.deadline = cfg.time_limit.map(|limit| start + limit);
    engine.dfs(0);

    let maximize = cfg.problem.is_maximization();
    let (status, lower, upper) = match (&engine.best, engine.aborted) {
        (Some(_), false) => (SolveStatus::Optimal, engine.best_value, engine.best_value),
        (None, false) => (SolveStatus::InfeasibleBudget, 0, 0),
        (Some(_), true) => {
            if maximize {
                (
                    SolveStatus::Feasible,
                    engine.best_value,
                    engine.open_bound.max(engine.best_value),
                )
            } else {
                (
                    SolveStatus::Feasible,
                    engine.open_bound.min(engine.best_value),
                    engine.best_value,
                )
            }
        }
        (None, true) => {
            if maximize {
                (SolveStatus::Timeout, 0, engine.open_bound.max(0))
            } else {
                (SolveStatus::Timeout, engine.open_bound, i64::MAX)
            }
        }
    };
    let gap = bound_gap(lower, upper);
    SolveReport {
        status,
        best: engine.best.clone(),
        lower_bound: lower,
        upper_bound: upper,
        gap,
        nodes_explored: engine.nodes,
        wall_time: start.elapsed(),
    }
}

/// Re-validates a report's incumbent: feasibility for the problem, and
/// for small instances every static and lazy model row.
pub fn certify(g: &ColoredGraph, cfg: &SearchConfig, report: &SolveReport) -> bool {
    let Some(best) = &report.best else {
        return false;
    };
    if !check_feasible(g, best).feasible_for(cfg.problem) {
        return false;
    }
    if report.status == SolveStatus::Optimal
        && objective_value(g, best, cfg.problem) != report.lower_bound
    {
        return false;
    }
    if g.n() <= 10 {
        let model = match build_model(g, &ModelConfig::standard(cfg.problem, g.n())) {
            Ok(model) => model,
            Err(_) => return false,
        };
        match validate_point(&model, g, best) {
            Ok(rep) => rep.clean(),
            Err(_) => false,
        }
    } else {
        true
    }
}

struct Engine<'a> {
    g: &'a ColoredGraph,
    cfg: &'a SearchConfig,
    n: usize,
    m: usize,
    q: usize,
    maximize: bool,
    colors_total: usize,
    color_class_max: usize,
    /// Pairs of same-colored nodes over the whole graph.
    same_color_pairs_total: i64,
    mono_edge: Vec<bool>,

    // Mutable search state.
    slot_of: Vec<usize>,
    slot_members: Vec<Vec<usize>>,
    slot_colors: Vec<BitSet>,
    opened: usize,
    nonempty: usize,
    assigned: usize,
    kept_now: i64,
    lost_now: i64,
    pairs_now: i64,
    cross_pairs_now: i64,
    assigned_same_color_pairs: i64,
    color_assigned: Vec<i64>,
    undecided_keepable: i64,

    best: Option<Partition>,
    best_value: i64,
    nodes: u64,
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    aborted: bool,
    open_bound: i64,

    // Scratch buffers.
    slot_count: Vec<i64>,
    touched: Vec<usize>,
    sizes: Vec<usize>,
    visit_stamp: Vec<u64>,
    stamp: u64,
    queue: Vec<usize>,
}

const UNASSIGNED: usize = usize::MAX;

impl<'a> Engine<'a> {
    fn new(g: &'a ColoredGraph, cfg: &'a SearchConfig) -> Engine<'a> {
        let n = g.n();
        let q = cfg.q_bar.min(n);
        let classes = g.color_classes();
        let color_class_max = classes.iter().map(|c| c.len()).max().unwrap_or(0);
        let same_color_pairs_total =
            classes.iter().map(|c| (c.len() * c.len().saturating_sub(1) / 2) as i64).sum();
        let mono_edge = g
            .edges()
            .iter()
            .map(|&(u, v)| g.color_of(u as usize) == g.color_of(v as usize))
            .collect();
        let maximize = cfg.problem.is_maximization();
        Engine {
            g,
            cfg,
            n,
            m: g.m(),
            q,
            maximize,
            colors_total: g.color_count(),
            color_class_max,
            same_color_pairs_total,
            mono_edge,
            slot_of: vec![UNASSIGNED; n],
            slot_members: vec![Vec::new(); q],
            slot_colors: vec![BitSet::new(g.color_count()); q],
            opened: 0,
            nonempty: 0,
            assigned: 0,
            kept_now: 0,
            lost_now: 0,
            pairs_now: 0,
            cross_pairs_now: 0,
            assigned_same_color_pairs: 0,
            color_assigned: vec![0; g.color_count()],
            undecided_keepable: g
                .edges()
                .iter()
                .filter(|&&(u, v)| g.color_of(u as usize) != g.color_of(v as usize))
                .count() as i64,
            best: None,
            best_value: if maximize { i64::MIN } else { i64::MAX },
            nodes: 0,
            deadline: None,
            node_limit: cfg.node_limit,
            aborted: false,
            open_bound: if maximize { i64::MIN } else { i64::MAX },
            slot_count: vec![0; q],
            touched: Vec::with_capacity(q),
            sizes: vec![0; q],
            visit_stamp: vec![0; n],
            stamp: 0,
            queue: Vec::with_capacity(n),
        }
    }

    fn merge_open(&mut self, bound: i64) {
        self.open_bound = if self.maximize {
            self.open_bound.max(bound)
        } else {
            self.open_bound.min(bound)
        };
    }

    fn dfs(&mut self, depth: usize) {
        self.nodes += 1;
        let bound = self.state_bound();
        if self.hit_limit() {
            self.aborted = true;
            self.merge_open(bound);
            return;
        }
        if self.best.is_some() {
            let hopeless = if self.maximize {
                bound <= self.best_value
            } else {
                bound >= self.best_value
            };
            if hopeless {
                return;
            }
        }
        // An unfillable state (slot capacities below the node count).
        if bound == i64::MIN && self.maximize {
            return;
        }
        if depth == self.n {
            self.offer_leaf();
            return;
        }

        let color = self.g.color_of(depth) as usize;
        let slot_end = if self.cfg.use_symmetry_index {
            (self.opened + 1).min(self.q)
        } else {
            self.q
        };
        for k in 0..slot_end {
            if self.slot_colors[k].contains(color) {
                continue;
            }
            self.apply(depth, k);
            if self.child_passes(depth, k) {
                self.dfs(depth + 1);
            }
            self.undo(depth, k);
            if self.aborted {
                self.merge_open(bound);
                return;
            }
        }
    }

    fn hit_limit(&mut self) -> bool {
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.nodes & 0x3ff == 0 && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }

    /// Per-child prunes that need the assignment applied.
    fn child_passes(&mut self, depth: usize, _k: usize) -> bool {
        if self.cfg.use_symmetry_cardinality && !self.cfg.use_symmetry_index {
            let remaining = self.n - depth - 1;
            for j in 0..self.q - 1 {
                // A later slot already too large to ever be overtaken.
                if self.slot_members[j + 1].len() > self.slot_members[j].len() + remaining {
                    return false;
                }
            }
            if remaining == 0 {
                for j in 0..self.q - 1 {
                    if self.slot_members[j + 1].len() > self.slot_members[j].len() {
                        return false;
                    }
                }
            }
        }
        if let Some(rhs) = self.cfg.edge_count_cut_rhs {
            if self.kept_now + self.undecided_keepable < rhs {
                return false;
            }
        }
        if self.cfg.problem.requires_connectivity() && !self.slots_potentially_connected(depth) {
            return false;
        }
        true
    }

    fn apply(&mut self, v: usize, k: usize) {
        let color = self.g.color_of(v) as usize;
        let size_before = self.slot_members[k].len();
        if size_before == 0 {
            self.nonempty += 1;
            if k == self.opened {
                self.opened += 1;
            }
        }
        for (w, e) in self.g.neighbors(v) {
            if self.slot_of[w] != UNASSIGNED {
                if self.slot_of[w] == k {
                    self.kept_now += 1;
                } else {
                    self.lost_now += 1;
                }
                if !self.mono_edge[e] {
                    self.undecided_keepable -= 1;
                }
            }
        }
        self.pairs_now += size_before as i64;
        self.cross_pairs_now += (self.assigned - size_before) as i64;
        self.assigned_same_color_pairs += self.color_assigned[color];
        self.color_assigned[color] += 1;
        self.slot_colors[k].insert(color);
        self.slot_members[k].push(v);
        self.slot_of[v] = k;
        self.assigned += 1;
    }

    fn undo(&mut self, v: usize, k: usize) {
        let color = self.g.color_of(v) as usize;
        self.assigned -= 1;
        self.slot_of[v] = UNASSIGNED;
        self.slot_members[k].pop();
        self.slot_colors[k].remove(color);
        self.color_assigned[color] -= 1;
        self.assigned_same_color_pairs -= self.color_assigned[color];
        let size_after = self.slot_members[k].len();
        self.pairs_now -= size_after as i64;
        self.cross_pairs_now -= (self.assigned - size_after) as i64;
        for (w, e) in self.g.neighbors(v) {
            if self.slot_of[w] != UNASSIGNED {
                if self.slot_of[w] == k {
                    self.kept_now -= 1;
                } else {
                    self.lost_now -= 1;
                }
                if !self.mono_edge[e] {
                    self.undecided_keepable += 1;
                }
            }
        }
        if size_after == 0 {
            self.nonempty -= 1;
            if k + 1 == self.opened {
                self.opened -= 1;
            }
        }
    }

    /// Admissible bound on any completion of the current state: an upper
    /// bound for MOP/MEC, a lower bound for MCC.
    fn state_bound(&mut self) -> i64 {
        match self.cfg.problem {
            Problem::Mop => self.m as i64 - self.lost_now - self.forced_future_loss(),
            Problem::Mec => self.capacity_fill_bound().min(self.crossing_pair_bound()),
            Problem::Mcc => (self.nonempty.max(self.color_class_max)) as i64,
        }
    }

    /// Edges from unassigned nodes to assigned ones that no single slot
    /// choice can keep: each unassigned node ends in one slot, keeping at
    /// most its best color-compatible slot's worth of assigned neighbors.
    fn forced_future_loss(&mut self) -> i64 {
        let mut loss = 0i64;
        for v in self.assigned..self.n {
            let mut deg_assigned = 0i64;
            self.touched.clear();
            for (w, _) in self.g.neighbors(v) {
                let k = self.slot_of[w];
                if k != UNASSIGNED {
                    if self.slot_count[k] == 0 {
                        self.touched.push(k);
                    }
                    self.slot_count[k] += 1;
                    deg_assigned += 1;
                }
            }
            let color = self.g.color_of(v) as usize;
            let mut best = 0i64;
            for idx in 0..self.touched.len() {
                let k = self.touched[idx];
                if !self.slot_colors[k].contains(color) {
                    best = best.max(self.slot_count[k]);
                }
                self.slot_count[k] = 0;
            }
            loss += deg_assigned - best;
        }
        loss
    }

    /// Relax everything but slot capacities: distribute the unassigned
    /// nodes over the slots, none exceeding the color count, filling
    /// larger slots first (exact for the sum of per-slot pair counts).
    /// `i64::MIN` when even the capacities cannot absorb every node.
    fn capacity_fill_bound(&mut self) -> i64 {
        let cap = self.colors_total;
        for (k, size) in self.sizes.iter_mut().enumerate() {
            *size = self.slot_members[k].len();
        }
        self.sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut rest = self.n - self.assigned;
        let mut total = 0i64;
        for size in &mut self.sizes {
            let take = (cap - *size).min(rest);
            *size += take;
            rest -= take;
            if *size == 0 {
                break;
            }
            total += (*size * (*size - 1) / 2) as i64;
        }
        if rest > 0 {
            return i64::MIN;
        }
        total
    }

    /// Total pairs minus pairs that can no longer share a slot: assigned
    /// pairs split across slots, and same-colored pairs not yet fully
    /// assigned (same-colored assigned pairs are already split).
    fn crossing_pair_bound(&self) -> i64 {
        let total = (self.n * (self.n - 1) / 2) as i64;
        let pending_same_color = self.same_color_pairs_total - self.assigned_same_color_pairs;
        total - self.cross_pairs_now - pending_same_color
    }

    /// Every slot's members must sit in one component of the subgraph
    /// induced by the slot plus all unassigned nodes.
    fn slots_potentially_connected(&mut self, depth: usize) -> bool {
        for k in 0..self.q {
            let size = self.slot_members[k].len();
            if size < 2 {
                continue;
            }
            self.stamp += 1;
            let stamp = self.stamp;
            let start = self.slot_members[k][0];
            self.queue.clear();
            self.queue.push(start);
            self.visit_stamp[start] = stamp;
            let mut seen_members = 1usize;
            let mut head = 0;
            while head < self.queue.len() {
                let v = self.queue[head];
                head += 1;
                for (w, _) in self.g.neighbors(v) {
                    if self.visit_stamp[w] == stamp {
                        continue;
                    }
                    let in_scope = w > depth || self.slot_of[w] == k;
                    if !in_scope {
                        continue;
                    }
                    self.visit_stamp[w] = stamp;
                    if self.slot_of[w] == k {
                        seen_members += 1;
                    }
                    self.queue.push(w);
                }
            }
            if seen_members < size {
                return false;
            }
        }
        true
    }

    fn offer_leaf(&mut self) {
        let value = match self.cfg.problem {
            Problem::Mop => self.kept_now,
            Problem::Mec => self.pairs_now,
            Problem::Mcc => self.nonempty as i64,
        };
        let improves = match (&self.best, self.maximize) {
            (None, _) => true,
            (Some(_), true) => value > self.best_value,
            (Some(_), false) => value < self.best_value,
        };
        if !improves {
            return;
        }
        let assignment: Vec<u32> = self.slot_of.iter().map(|&k| k as u32).collect();
        let partition = Partition::from_assignment(&assignment);
        if self.cfg.problem.requires_connectivity() {
            // The potential-connectivity prune makes this exact at full
            // depth; certify through the separation routine regardless.
            let point = IntegerPoint::from_partition(self.g, partition.clone());
            if !separate_connectivity(self.g, &point).is_empty() {
                debug_assert!(false, "leaf escaped the connectivity prune");
                return;
            }
        }
        self.best_value = value;
        self.best = Some(partition);
    }
}
