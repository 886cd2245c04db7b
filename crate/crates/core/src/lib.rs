//! Exact solvers for partitioning node-colored graphs into *colorful
//! connected components*: subgraphs that are connected and repeat no color.
//!
//! Three objectives share the same feasible set (a partition of the nodes
//! into colorful parts) and differ only in what they count:
//!
//! * **MOP** — keep as many edges as possible (equivalently, remove the
//!   fewest edges so that every remaining component is colorful). Parts may
//!   induce several components, so no connectivity requirement applies.
//! * **MEC** — maximize the transitive closure of the partition, i.e. the
//!   sum of `C(|S|,2)` over connected colorful parts `S`.
//! * **MCC** — minimize the number of connected colorful parts.
//!
//! The crate provides the shared graph model ([`graph`]), partitions and
//! objectives ([`solution`]), a MILP formulation with LP export ([`milp`]),
//! integer-point separation for the lazy constraint families
//! ([`separation`]), combinatorial bounds and warm starts ([`bounds`]),
//! MOP-safe preprocessing ([`prep`]), a branch-and-bound engine
//! ([`solver`]), a brute-force oracle ([`oracle`]), seeded instance
//! generation ([`gen`]) and a batch benchmark harness ([`bench`]).

#![forbid(unsafe_code)]

pub mod bench;
pub mod bitset;
pub mod bounds;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod milp;
pub mod oracle;
pub mod prep;
pub mod separation;
pub mod solution;
pub mod solver;

pub use bitset::BitSet;
pub use graph::{ColoredGraph, EdgeSet, NodeSet};
pub use solution::{Partition, Problem};
pub use solver::{solve, SearchConfig, SolveReport, SolveStatus};
