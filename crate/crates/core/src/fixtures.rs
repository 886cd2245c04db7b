//! Small instances with pinned optima, shared across the test suite and
//! the oracle's self-check.
//!
//! Each graph was verified by exhaustive enumeration before its numbers
//! were frozen into tests; the constructors document those numbers.

use crate::graph::ColoredGraph;

/// Triangle with nodes 1,2 colored A and node 3 colored B. MOP keeps 1 of
/// 3 edges; MEC closure 1; MCC 2.
pub fn two_a_triangle() -> ColoredGraph {
    ColoredGraph::build(&["A", "A", "B"], &[(0, 1), (0, 2), (1, 2)]).unwrap()
}

/// Triangle with three distinct colors: every objective is trivial (keep
/// everything, one part).
pub fn tricolor_triangle() -> ColoredGraph {
    ColoredGraph::build(&["A", "B", "C"], &[(0, 1), (0, 2), (1, 2)]).unwrap()
}

/// Path 1 - 2 - 3 with colors A, B, A: the ends clash, one edge must go.
pub fn two_a_path() -> ColoredGraph {
    ColoredGraph::build(&["A", "B", "A"], &[(0, 1), (1, 2)]).unwrap()
}

/// Six nodes where the MOP and MEC optima disagree: two colorful triangles
/// {1,2,4} and {3,5,6} joined by the bridge {2,3}; nodes 1,3 share a color
/// and 4,5 share a color.
///
/// * MOP: remove exactly 1 edge (the bridge; unique optimum), two
///   components of size 3, partition closure 6.
/// * MEC: optimum 7 via parts {2,3,5,6} and {1,4}, removing 2 edges.
pub fn tradeoff_mop_mec() -> ColoredGraph {
    ColoredGraph::build(
        &["A", "C", "A", "B", "B", "D"],
        &[(0, 1), (0, 3), (1, 3), (2, 4), (2, 5), (4, 5), (1, 2)],
    )
    .unwrap()
}

/// Nine nodes where the MOP optimum has more components than the MCC
/// optimum. Nodes 1,3 share color A, nodes 2,8 share color B. The A-clash
/// is protected by a 4-cycle (two edge-disjoint paths), the B-clash by the
/// single bridge {6,8}; nodes 1 and 2 together have six edges to the rest.
///
/// * MOP: remove exactly 3 edges; every optimum's kept graph has exactly
///   3 components.
/// * MCC: optimum 2; one optimum keeps {1,2} as a pair and removes
///   exactly 6 edges.
pub fn tradeoff_mop_mcc() -> ColoredGraph {
    ColoredGraph::build(
        &["A", "B", "A", "C", "D", "E", "F", "B", "G"],
        &[
            (0, 1),
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (4, 5),
            (5, 7),
            (6, 7),
            (6, 8),
        ],
    )
    .unwrap()
}

/// Seven nodes where the MEC and MCC optima disagree. Nodes 1,5 share
/// color A, nodes 2,6 share color B.
///
/// * MEC: optimum 10 (one part of size 5 plus two singletons); every
///   optimum has 3 parts.
/// * MCC: optimum 2 (sizes 4 and 3, closure 9 in every optimum); one
///   optimum removes exactly 2 edges.
pub fn tradeoff_mec_mcc() -> ColoredGraph {
    ColoredGraph::build(
        &["A", "B", "C", "D", "A", "B", "E"],
        &[(0, 2), (1, 2), (2, 3), (3, 4), (3, 6), (4, 6), (5, 6)],
    )
    .unwrap()
}

/// Two colorful 4-cycles {1..4} and {5..8} (colors A,B,C,D on each) joined
/// by the edges {2,5} and {3,8}.
///
/// Preprocessing finds the 2-edge cut, extracts one cycle (tie-break picks
/// {1,2,3,4}), records offset 4, and finds nothing on the remaining lone
/// cycle. MOP keeps 8 of 10 edges (unique optimum = the two cycles).
pub fn double_cycle() -> ColoredGraph {
    ColoredGraph::build(
        &["A", "B", "C", "D", "A", "B", "C", "D"],
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (0, 3),
            (4, 5),
            (5, 6),
            (6, 7),
            (4, 7),
            (1, 4),
            (2, 7),
        ],
    )
    .unwrap()
}

/// Three colorful 4-cycles chained by 2-edge junctions: preprocessing runs
/// two extraction rounds (offset 8) and leaves the last cycle. MOP keeps
/// 12 of 16 edges.
pub fn block_chain() -> ColoredGraph {
    ColoredGraph::build(
        &[
            "A", "B", "C", "D", // cycle 1
            "A", "B", "C", "D", // cycle 2
            "A", "B", "C", "D", // cycle 3
        ],
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (0, 3),
            (4, 5),
            (5, 6),
            (6, 7),
            (4, 7),
            (8, 9),
            (9, 10),
            (10, 11),
            (8, 11),
            (1, 4), // junction cycle1-cycle2
            (2, 7),
            (5, 8), // junction cycle2-cycle3
            (6, 11),
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        for (g, n, m, k) in [
            (two_a_triangle(), 3, 3, 2),
            (tricolor_triangle(), 3, 3, 3),
            (two_a_path(), 3, 2, 2),
            (tradeoff_mop_mec(), 6, 7, 4),
            (tradeoff_mop_mcc(), 9, 13, 7),
            (tradeoff_mec_mcc(), 7, 7, 5),
            (double_cycle(), 8, 10, 4),
            (block_chain(), 12, 16, 4),
        ] {
            assert_eq!((g.n(), g.m(), g.color_count()), (n, m, k));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn quoted_color_sharing_holds() {
        let g = tradeoff_mop_mec();
        assert_eq!(g.color_of(0), g.color_of(2)); // nodes 1 and 3
        assert_eq!(g.color_of(3), g.color_of(4)); // nodes 4 and 5

        let g = tradeoff_mop_mcc();
        assert_eq!(g.color_of(0), g.color_of(2)); // nodes 1 and 3
        assert_eq!(g.color_of(1), g.color_of(7)); // nodes 2 and 8

        let g = tradeoff_mec_mcc();
        assert_eq!(g.color_of(0), g.color_of(4)); // nodes 1 and 5
        assert_eq!(g.color_of(1), g.color_of(5)); // nodes 2 and 6
    }
}
