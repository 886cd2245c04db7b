//! Instance reduction for the kept-edges objective.
//!
//! A connected colorful block `S` can be split off without touching the
//! optimum when its boundary cut `B = cut(S)` satisfies three conditions:
//! the rest of the graph stays connected, `g[S]` is at least
//! `|B|`-edge-connected, and every color on the outside endpoints of `B`
//! already occurs inside `S`. Some optimal solution then keeps all of
//! `g[S]`'s edges and none of `B`, so the block becomes its own part and
//! the search continues on the remainder:
//!
//! `max kept(g) = max kept(reduced) + sum |E(g[S_i])|`.
//!
//! This applies to the kept-edges objective only; the blocks need not be
//! whole components of an optimal solution for the other two problems.

use crate::bitset::BitSet;
use crate::bounds::for_each_colorful_component;
use crate::graph::{ColoredGraph, NodeSet};
use crate::solution::Partition;

/// A block eligible for extraction, with its boundary cut (edge ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestCut {
    pub block: NodeSet,
    pub cut: Vec<usize>,
}

/// Searches all connected colorful proper subsets `S` for the largest
/// eligible boundary cut. Requires a connected input graph (run per
/// component otherwise). Ties prefer smaller blocks, then the
/// lexicographically smallest node set.
pub fn find_best_cut(g: &ColoredGraph) -> Option<BestCut> {
    debug_assert!(g.is_connected());
    let n = g.n();
    let colors = g.color_count();
    let mut best: Option<BestCut> = None;
    for_each_colorful_component(g, |s| {
        if s.len() == n {
            return;
        }
        let cut = g.cut_edges(s);
        if let Some(b) = &best {
            let worse = cut.len() < b.cut.len()
                || (cut.len() == b.cut.len()
                    && (s.len() > b.block.len()
                        || (s.len() == b.block.len() && *s >= b.block)));
            if worse {
                return;
            }
        }
        if !g.is_connected_within(&s.complement()) {
            return;
        }
        let mut frontier_colors = BitSet::new(colors);
        for &e in &cut {
            let (u, v) = g.edge(e);
            let outside = if s.contains(u) { v } else { u };
            frontier_colors.insert(g.color_of(outside) as usize);
        }
        let mut block_colors = BitSet::new(colors);
        for v in s.iter() {
            block_colors.insert(g.color_of(v) as usize);
        }
        if !frontier_colors.is_subset_of(&block_colors) {
            return;
        }
        let (sub, _) = g.induced_subgraph(s);
        if sub.edge_connectivity() < cut.len() {
            return;
        }
        best = Some(BestCut { block: s.clone(), cut });
    });
    best
}

/// One extraction, in original node ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionRound {
    /// Block nodes, ascending.
    pub block: Vec<usize>,
    /// Boundary cut as node pairs `(u, v)`, `u < v`, ascending.
    pub cut: Vec<(usize, usize)>,
    /// Edges inside the block; its contribution to the offset.
    pub block_edges: usize,
}

#[derive(Clone, Debug)]
pub struct PrepResult {
    pub original_n: usize,
    pub reduced: ColoredGraph,
    /// Reduced node id -> original node id.
    pub to_original: Vec<usize>,
    pub rounds: Vec<ExtractionRound>,
    /// Kept edges guaranteed by the extracted blocks.
    pub objective_offset: i64,
}

impl PrepResult {
    /// Total boundary edges removed across rounds.
    pub fn removed_cut_edges(&self) -> usize {
        self.rounds.iter().map(|r| r.cut.len()).sum()
    }

    /// Turns a partition of the reduced graph into one of the original
    /// graph: reduced parts keep their nodes, each block becomes a part.
    pub fn lift(&self, reduced_partition: &Partition) -> Partition {
        let mut parts: Vec<Vec<usize>> = reduced_partition
            .parts()
            .iter()
            .map(|part| part.iter().map(|&v| self.to_original[v]).collect())
            .collect();
        for round in &self.rounds {
            parts.push(round.block.clone());
        }
        Partition::from_parts(self.original_n, &parts)
    }
}

/// Repeatedly extracts the best eligible block, one per round, scanning
/// the components of the surviving graph in order of smallest node.
/// Stops when no component yields a cut.
pub fn preprocess_mop(g: &ColoredGraph) -> PrepResult {
    let n = g.n();
    let mut alive = NodeSet::full(n);
    let mut rounds: Vec<ExtractionRound> = Vec::new();
    let mut offset = 0i64;
    loop {
        let (work, to_orig) = g.induced_subgraph(&alive);
        let mut taken = false;
        for comp in work.components() {
            if comp.len() < 2 {
                continue;
            }
            let (cg, comp_to_work) = work.induced_subgraph(&comp);
            let Some(found) = find_best_cut(&cg) else {
                continue;
            };
            let block: Vec<usize> =
                found.block.iter().map(|v| to_orig[comp_to_work[v]]).collect();
            let mut cut: Vec<(usize, usize)> = found
                .cut
                .iter()
                .map(|&e| {
                    let (u, v) = cg.edge(e);
                    let (a, b) = (to_orig[comp_to_work[u]], to_orig[comp_to_work[v]]);
                    (a.min(b), a.max(b))
                })
                .collect();
            cut.sort_unstable();
            let (block_graph, _) = cg.induced_subgraph(&found.block);
            offset += block_graph.m() as i64;
            for &v in &block {
                alive.remove(v);
            }
            rounds.push(ExtractionRound { block, cut, block_edges: block_graph.m() });
            taken = true;
            break;
        }
        if !taken {
            return PrepResult {
                original_n: n,
                reduced: work,
                to_original: to_orig,
                rounds,
                objective_offset: offset,
            };
        }
    }
}
