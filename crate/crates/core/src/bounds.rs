//! Slot budgets and warm starts.
//!
//! Each routine returns a [`BoundsResult`]: a proven upper bound `q_bar`
//! on the number of parts an optimal partition needs, a feasible starting
//! partition whose objective bounds the optimum from the feasible side,
//! and (for MEC/MCC) a lower bound on the edges any optimal solution
//! keeps.
//!
//! * MOP — a maximum matching restricted to differently-colored edges:
//!   `k` disjoint colorful pairs show some optimum uses at most `|V| - k`
//!   parts, and the pairs themselves are a feasible partition.
//! * MEC — repeatedly extract connected colorful sets of the maximum
//!   cardinality found first; with `k` extracted sets and `r` leftover
//!   nodes, `q_bar = r + k`.
//! * MCC — greedily peel maximum-cardinality colorful components until
//!   the graph is empty; the peel count bounds the optimum and each
//!   component contributes `|S| - 1` guaranteed kept edges.

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;

use crate::bitset::BitSet;
use crate::graph::{ColoredGraph, NodeSet};
use crate::solution::{Partition, Problem};

/// Which procedure produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundMethod {
    ColorfulMatching,
    SizedComponentExtraction,
    GreedyComponentPeeling,
}

#[derive(Clone, Debug)]
pub struct BoundsResult {
    /// Upper bound on the number of parts an optimal partition needs.
    pub q_bar: usize,
    /// Feasible partition for the target problem.
    pub warm_start: Partition,
    /// Lower bound on kept edges in some optimal solution, when the
    /// method yields one.
    pub edge_cut_rhs: Option<i64>,
    pub method: BoundMethod,
}

/// Maximum matching among edges whose endpoints differ in color, as
/// sorted `(u, v)` pairs with `u < v`.
pub fn max_colorful_matching(g: &ColoredGraph) -> Vec<(usize, usize)> {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    let nodes: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        if g.color_of(u) != g.color_of(v) {
            pg.add_edge(nodes[u], nodes[v], ());
        }
    }
    let matching = maximum_matching(&pg);
    let mut pairs: Vec<(usize, usize)> = matching
        .edges()
        .map(|(a, b)| {
            let (a, b) = (a.index(), b.index());
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

pub fn mop_bound_and_warmstart(g: &ColoredGraph) -> BoundsResult {
    let n = g.n();
    let pairs = max_colorful_matching(g);
    let mut covered = NodeSet::new(n);
    let mut parts: Vec<Vec<usize>> = Vec::with_capacity(n - pairs.len());
    for &(u, v) in &pairs {
        covered.insert(u);
        covered.insert(v);
        parts.push(vec![u, v]);
    }
    for v in 0..n {
        if !covered.contains(v) {
            parts.push(vec![v]);
        }
    }
    BoundsResult {
        q_bar: n - pairs.len(),
        warm_start: Partition::from_parts(n, &parts),
        edge_cut_rhs: None,
        method: BoundMethod::ColorfulMatching,
    }
}

/// Exact maximum-cardinality connected colorful node set; ties go to the
/// lexicographically smallest set.
pub fn max_colorful_component(g: &ColoredGraph) -> NodeSet {
    ComponentSearch::new(g, None).run().expect("every graph has a singleton component")
}

/// Some connected colorful set of exactly `size` nodes (the first in a
/// fixed search order), or `None` when no such set exists.
pub fn colorful_component_of_size(g: &ColoredGraph, size: usize) -> Option<NodeSet> {
    assert!(size >= 1, "component size must be positive");
    ComponentSearch::new(g, Some(size)).run()
}

pub fn mec_bound_and_warmstart(g: &ColoredGraph) -> BoundsResult {
    let n = g.n();
    let first = max_colorful_component(g);
    let target = first.len();
    let mut remaining = first.complement();
    let mut parts: Vec<Vec<usize>> = vec![first.to_vec()];
    while remaining.len() >= target {
        let (sub, to_orig) = g.induced_subgraph(&remaining);
        let Some(found) = colorful_component_of_size(&sub, target) else {
            break;
        };
        let orig: Vec<usize> = found.iter().map(|v| to_orig[v]).collect();
        for &v in &orig {
            remaining.remove(v);
        }
        parts.push(orig);
    }
    let extracted = parts.len();
    let leftover = remaining.len();
    for v in remaining.iter() {
        parts.push(vec![v]);
    }
    BoundsResult {
        q_bar: leftover + extracted,
        warm_start: Partition::from_parts(n, &parts),
        edge_cut_rhs: Some(target as i64 - 1),
        method: BoundMethod::SizedComponentExtraction,
    }
}

/// Lower bound on kept edges in an optimal MEC solution: a maximum
/// colorful component can always be realized as one part, keeping a
/// spanning tree of it.
pub fn mec_edge_cut_rhs(g: &ColoredGraph) -> i64 {
    max_colorful_component(g).len() as i64 - 1
}

pub fn mcc_bound_and_warmstart(g: &ColoredGraph) -> BoundsResult {
    let n = g.n();
    let mut remaining = NodeSet::full(n);
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut rhs = 0i64;
    while !remaining.is_empty() {
        let (sub, to_orig) = g.induced_subgraph(&remaining);
        let found = max_colorful_component(&sub);
        let orig: Vec<usize> = found.iter().map(|v| to_orig[v]).collect();
        rhs += orig.len() as i64 - 1;
        for &v in &orig {
            remaining.remove(v);
        }
        parts.push(orig);
    }
    BoundsResult {
        q_bar: parts.len(),
        warm_start: Partition::from_parts(n, &parts),
        edge_cut_rhs: Some(rhs),
        method: BoundMethod::GreedyComponentPeeling,
    }
}

pub fn bound_and_warmstart(g: &ColoredGraph, problem: Problem) -> BoundsResult {
    match problem {
        Problem::Mop => mop_bound_and_warmstart(g),
        Problem::Mec => mec_bound_and_warmstart(g),
        Problem::Mcc => mcc_bound_and_warmstart(g),
    }
}

/// Visits every nonempty connected colorful node set exactly once, in a
/// fixed order. Work grows with the number of such sets, which
/// colorfulness caps at sets of at most `|C|` nodes.
pub fn for_each_colorful_component(g: &ColoredGraph, mut f: impl FnMut(&NodeSet)) {
    let n = g.n();
    let total_colors = g.color_count();
    let mut walker = SetWalker { g, f: &mut f };
    for root in 0..n {
        let mut members = NodeSet::from_iter(n, [root]);
        let mut colors = BitSet::new(total_colors);
        colors.insert(g.color_of(root) as usize);
        let mut blocked = NodeSet::from_iter(n, 0..root);
        let mut ext: Vec<usize> =
            g.neighbors(root).map(|(w, _)| w).filter(|&w| w > root).collect();
        ext.sort_unstable();
        let in_ext = NodeSet::from_iter(n, ext.iter().copied());
        walker.walk(&mut members, &mut colors, &ext, &in_ext, &mut blocked);
    }
}

struct SetWalker<'a, F: FnMut(&NodeSet)> {
    g: &'a ColoredGraph,
    f: &'a mut F,
}

impl<F: FnMut(&NodeSet)> SetWalker<'_, F> {
    fn walk(
        &mut self,
        members: &mut NodeSet,
        colors: &mut BitSet,
        ext: &[usize],
        in_ext: &NodeSet,
        blocked: &mut NodeSet,
    ) {
        (self.f)(members);
        let mut blocked_here = Vec::new();
        for (idx, &v) in ext.iter().enumerate() {
            let color = self.g.color_of(v) as usize;
            if !colors.contains(color) {
                members.insert(v);
                colors.insert(color);
                let mut ext2: Vec<usize> = ext[idx + 1..].to_vec();
                let mut in_ext2 = in_ext.clone();
                for (w, _) in self.g.neighbors(v) {
                    if !members.contains(w) && !blocked.contains(w) && !in_ext2.contains(w) {
                        ext2.push(w);
                        in_ext2.insert(w);
                    }
                }
                ext2.sort_unstable();
                self.walk(members, colors, &ext2, &in_ext2, blocked);
                members.remove(v);
                colors.remove(color);
            }
            blocked.insert(v);
            blocked_here.push(v);
        }
        for v in blocked_here {
            blocked.remove(v);
        }
    }
}

/// Branch-and-bound enumeration of connected colorful node sets. Every
/// such set is visited at most once (fixed-root growth with a blocked
/// set); branches are cut when the current size plus the number of
/// still-unused colors cannot reach the target.
struct ComponentSearch<'a> {
    g: &'a ColoredGraph,
    exact: Option<usize>,
    total_colors: usize,
    best: Option<Vec<usize>>,
    done: bool,
}

impl<'a> ComponentSearch<'a> {
    fn new(g: &'a ColoredGraph, exact: Option<usize>) -> Self {
        ComponentSearch { g, exact, total_colors: g.color_count(), best: None, done: false }
    }

    fn run(mut self) -> Option<NodeSet> {
        let n = self.g.n();
        for root in 0..n {
            if self.done {
                break;
            }
            let mut members = vec![root];
            let mut member_set = NodeSet::from_iter(n, [root]);
            let mut colors = BitSet::new(self.total_colors);
            colors.insert(self.g.color_of(root) as usize);
            let mut blocked = NodeSet::from_iter(n, 0..root);
            let mut ext: Vec<usize> =
                self.g.neighbors(root).map(|(w, _)| w).filter(|&w| w > root).collect();
            ext.sort_unstable();
            let in_ext = NodeSet::from_iter(n, ext.iter().copied());
            self.extend(&mut members, &mut member_set, &mut colors, &ext, &in_ext, &mut blocked);
        }
        self.best.map(|members| NodeSet::from_iter(n, members))
    }

    fn offer(&mut self, members: &[usize]) {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        match self.exact {
            Some(target) => {
                if sorted.len() == target {
                    self.best = Some(sorted);
                    self.done = true;
                }
            }
            None => {
                let better = match &self.best {
                    None => true,
                    Some(b) => {
                        sorted.len() > b.len() || (sorted.len() == b.len() && sorted < *b)
                    }
                };
                if better {
                    self.best = Some(sorted);
                }
            }
        }
    }

    fn pruned(&self, size: usize, colors: &BitSet) -> bool {
        // Each further node must bring a fresh color.
        let potential = size + (self.total_colors - colors.len());
        match self.exact {
            Some(target) => size >= target || potential < target,
            None => self.best.as_ref().is_some_and(|b| potential < b.len()),
        }
    }

    fn extend(
        &mut self,
        members: &mut Vec<usize>,
        member_set: &mut NodeSet,
        colors: &mut BitSet,
        ext: &[usize],
        in_ext: &NodeSet,
        blocked: &mut NodeSet,
    ) {
        self.offer(members);
        if self.done || self.pruned(members.len(), colors) {
            return;
        }
        let mut blocked_here = Vec::new();
        for (idx, &v) in ext.iter().enumerate() {
            let color = self.g.color_of(v) as usize;
            if !colors.contains(color) {
                members.push(v);
                member_set.insert(v);
                colors.insert(color);
                let mut ext2: Vec<usize> = ext[idx + 1..].to_vec();
                let mut in_ext2 = in_ext.clone();
                for (w, _) in self.g.neighbors(v) {
                    if !member_set.contains(w) && !blocked.contains(w) && !in_ext2.contains(w) {
                        ext2.push(w);
                        in_ext2.insert(w);
                    }
                }
                ext2.sort_unstable();
                self.extend(members, member_set, colors, &ext2, &in_ext2, blocked);
                members.pop();
                member_set.remove(v);
                colors.remove(color);
                if self.done {
                    break;
                }
            }
            blocked.insert(v);
            blocked_here.push(v);
        }
        for v in blocked_here {
            blocked.remove(v);
        }
    }
}
