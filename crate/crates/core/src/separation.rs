//! Separation routines for the lazy constraint families at integer points.
//!
//! A candidate point fixes a slot per node (`x`) and a kept-edge set
//! (`y`); `z` is induced by the slots. Two routines cover the families:
//!
//! * [`separate_connectivity`] — finds node cuts whose aggregated (and
//!   disaggregated) connectivity rows are violated. At an integer point a
//!   violation exists exactly when two nodes share a slot but sit in
//!   different components of the kept graph, and the component boundary
//!   itself is then a violated cut (no kept edge crosses it).
//! * [`separate_paths`] — finds elementary kept-edge paths whose path
//!   rows are violated: any all-kept path between two nodes in different
//!   slots.
//!
//! Both are complete for their family: an empty answer means no row of
//! that family is violated at the point.

use crate::graph::{ColoredGraph, EdgeSet, NodeSet};
use crate::solution::Partition;

/// Limit on emitted paths per node pair; DFS stops once reached.
pub const DEFAULT_PATH_BUDGET: usize = 10_000;

/// An integer candidate: slots plus an explicit kept-edge set (which need
/// not equal the partition's own kept edges while the model is being cut).
#[derive(Clone, Debug)]
pub struct IntegerPoint {
    pub partition: Partition,
    pub kept: EdgeSet,
}

impl IntegerPoint {
    /// The honest point for a partition: `y` = edges inside slots.
    pub fn from_partition(g: &ColoredGraph, partition: Partition) -> IntegerPoint {
        let kept = partition.kept_edges(g);
        IntegerPoint { partition, kept }
    }
}

/// A node cut separating some same-slot pair with no kept edge across it.
/// `cut_set` is the smaller side; every witness `(i, j, k)` has `i` in the
/// cut set, `j` outside, both in slot `k`, and yields one violated
/// disaggregated row (the witnesses together yield the aggregated row).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatedCut {
    pub cut_set: NodeSet,
    pub witnesses: Vec<(usize, usize, usize)>,
}

/// An elementary path of kept edges joining two nodes in different slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatedPath {
    pub nodes: Vec<usize>,
}

/// One violated cut per component of the kept graph that cuts through a
/// slot, in order of smallest contained node. Emits the smaller side of
/// each cut (the component or its complement); witnesses are ordered by
/// slot, then pair.
pub fn separate_connectivity(g: &ColoredGraph, point: &IntegerPoint) -> Vec<ViolatedCut> {
    let n = g.n();
    let comps = g.components_under(&point.kept);
    let mut comp_of = vec![0usize; n];
    for (id, comp) in comps.iter().enumerate() {
        for v in comp.iter() {
            comp_of[v] = id;
        }
    }
    let parts = point.partition.parts();

    let mut cuts = Vec::new();
    for (id, comp) in comps.iter().enumerate() {
        let mut witnesses = Vec::new();
        for (k, members) in parts.iter().enumerate() {
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                members.iter().partition(|&&v| comp_of[v] == id);
            if inside.is_empty() || outside.is_empty() {
                continue;
            }
            for &i in &inside {
                for &j in &outside {
                    witnesses.push((i, j, k));
                }
            }
        }
        if witnesses.is_empty() {
            continue;
        }
        let comp_size = comp.len();
        let (cut_set, witnesses) = if 2 * comp_size <= n {
            (comp.clone(), witnesses)
        } else {
            (comp.complement(), witnesses.into_iter().map(|(i, j, k)| (j, i, k)).collect())
        };
        cuts.push(ViolatedCut { cut_set, witnesses });
    }
    cuts
}

/// Every elementary kept-edge path between two nodes in different slots,
/// up to `budget` paths per unordered pair. Paths start at their smaller
/// endpoint; pairs are scanned in lexicographic order.
pub fn separate_paths(g: &ColoredGraph, point: &IntegerPoint, budget: usize) -> Vec<ViolatedPath> {
    let n = g.n();
    let comps = g.components_under(&point.kept);
    let mut comp_of = vec![0usize; n];
    for (id, comp) in comps.iter().enumerate() {
        for v in comp.iter() {
            comp_of[v] = id;
        }
    }

    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if comp_of[i] != comp_of[j]
                || point.partition.slot_of(i) == point.partition.slot_of(j)
            {
                continue;
            }
            let mut remaining = budget;
            let mut path = vec![i];
            let mut on_path = vec![false; n];
            on_path[i] = true;
            kept_paths_to(g, &point.kept, j, &mut path, &mut on_path, &mut remaining, &mut out);
        }
    }
    out
}

fn kept_paths_to(
    g: &ColoredGraph,
    kept: &EdgeSet,
    target: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    remaining: &mut usize,
    out: &mut Vec<ViolatedPath>,
) {
    if *remaining == 0 {
        return;
    }
    let last = *path.last().unwrap();
    if last == target {
        out.push(ViolatedPath { nodes: path.clone() });
        *remaining -= 1;
        return;
    }
    for (next, e) in g.neighbors(last) {
        if !kept.contains(e) || on_path[next] {
            continue;
        }
        path.push(next);
        on_path[next] = true;
        kept_paths_to(g, kept, target, path, on_path, remaining, out);
        on_path[next] = false;
        path.pop();
        if *remaining == 0 {
            return;
        }
    }
}
