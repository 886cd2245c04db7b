//! Partitions of the node set, feasibility checking, and the three
//! objectives.
//!
//! A partition assigns every node to a slot. Feasibility is *colorful*
//! parts (no repeated color) for MOP, and colorful *and connected* parts
//! for MEC and MCC. Objectives:
//!
//! * MOP — kept edges, i.e. edges with both endpoints in one slot
//!   (maximize; `m - kept` edges are removed),
//! * MEC — transitive closure `sum C(|S_k|, 2)` over slots (maximize),
//! * MCC — number of nonempty slots (minimize).
//!
//! Solution text format, canonical (slots by smallest member, members
//! ascending, 1-based):
//!
//! ```text
//! s 1: 1 3
//! s 2: 2
//! obj mop 1
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColoredGraph, EdgeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mop,
    Mec,
    Mcc,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::Mop, Problem::Mec, Problem::Mcc];

    /// MOP and MEC maximize; MCC minimizes.
    pub fn is_maximization(self) -> bool {
        !matches!(self, Problem::Mcc)
    }

    /// Whether slots must induce connected subgraphs.
    pub fn requires_connectivity(self) -> bool {
        !matches!(self, Problem::Mop)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Mop => "mop",
            Problem::Mec => "mec",
            Problem::Mcc => "mcc",
        })
    }
}

impl FromStr for Problem {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mop" => Ok(Problem::Mop),
            "mec" => Ok(Problem::Mec),
            "mcc" => Ok(Problem::Mcc),
            other => Err(format!("unknown problem `{other}` (expected mop, mec or mcc)")),
        }
    }
}

/// A partition of `0..n` into slots. Stored in canonical first-occurrence
/// labeling: slot ids are assigned in order of each slot's first node, so
/// equal set partitions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    assignment: Vec<u32>,
}

impl Partition {
    /// Canonicalizes an arbitrary slot labeling.
    pub fn from_assignment(raw: &[u32]) -> Partition {
        let mut relabel: Vec<Option<u32>> = Vec::new();
        let mut assignment = Vec::with_capacity(raw.len());
        let mut next = 0u32;
        for &s in raw {
            let s = s as usize;
            if relabel.len() <= s {
                relabel.resize(s + 1, None);
            }
            let id = *relabel[s].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            assignment.push(id);
        }
        Partition { assignment }
    }

    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Partition {
        let mut raw = vec![u32::MAX; n];
        for (k, part) in parts.iter().enumerate() {
            for &v in part {
                assert!(raw[v] == u32::MAX, "node {v} in two parts");
                raw[v] = k as u32;
            }
        }
        assert!(raw.iter().all(|&s| s != u32::MAX), "node missing from parts");
        Partition::from_assignment(&raw)
    }

    pub fn singletons(n: usize) -> Partition {
        Partition::from_assignment(&(0..n as u32).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn slot_of(&self, v: usize) -> usize {
        self.assignment[v] as usize
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn part_count(&self) -> usize {
        self.assignment.iter().map(|&s| s as usize + 1).max().unwrap_or(0)
    }

    /// Parts in slot order (equivalently, ordered by smallest member).
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.part_count()];
        for (v, &s) in self.assignment.iter().enumerate() {
            parts[s as usize].push(v);
        }
        parts
    }

    /// Edges kept by the partition: both endpoints in the same slot.
    pub fn kept_edges(&self, g: &ColoredGraph) -> EdgeSet {
        debug_assert_eq!(g.n(), self.n());
        let mut kept = EdgeSet::new(g.m());
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            if self.assignment[u as usize] == self.assignment[v as usize] {
                kept.insert(id);
            }
        }
        kept
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.parts().iter().map(|p| p.iter().map(|v| v + 1).collect::<Vec<_>>()))
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlotViolation {
    /// Slot contains two nodes of one color (1-based slot, color token).
    RepeatedColor { slot: usize, color: String },
    /// Slot does not induce a connected subgraph (1-based slot).
    Disconnected { slot: usize },
}

#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    /// Per part, slot order: no color repeated.
    pub colorful: Vec<bool>,
    /// Per part, slot order: induces a connected subgraph.
    pub connected: Vec<bool>,
    pub violations: Vec<SlotViolation>,
}

impl FeasibilityReport {
    pub fn feasible_for(&self, problem: Problem) -> bool {
        let ok_color = self.colorful.iter().all(|&b| b);
        if problem.requires_connectivity() {
            ok_color && self.connected.iter().all(|&b| b)
        } else {
            ok_color
        }
    }
}

pub fn check_feasible(g: &ColoredGraph, p: &Partition) -> FeasibilityReport {
    assert_eq!(g.n(), p.n(), "partition size does not match graph");
    let parts = p.parts();
    let mut report = FeasibilityReport {
        colorful: Vec::with_capacity(parts.len()),
        connected: Vec::with_capacity(parts.len()),
        violations: Vec::new(),
    };
    for (k, part) in parts.iter().enumerate() {
        let mut seen = vec![false; g.color_count()];
        let mut colorful = true;
        for &v in part {
            let c = g.color_of(v) as usize;
            if seen[c] {
                colorful = false;
                report.violations.push(SlotViolation::RepeatedColor {
                    slot: k + 1,
                    color: g.color_name(c as u32).to_string(),
                });
                break;
            }
            seen[c] = true;
        }
        let set = crate::graph::NodeSet::from_iter(g.n(), part.iter().copied());
        let connected = g.is_connected_within(&set);
        if !connected {
            report.violations.push(SlotViolation::Disconnected { slot: k + 1 });
        }
        report.colorful.push(colorful);
        report.connected.push(connected);
    }
    report
}

/// Kept-edge count (MOP objective, maximized).
pub fn objective_mop(g: &ColoredGraph, p: &Partition) -> i64 {
    p.kept_edges(g).len() as i64
}

/// Edges removed by the partition: `m - kept`.
pub fn removed_edges(g: &ColoredGraph, p: &Partition) -> i64 {
    g.m() as i64 - objective_mop(g, p)
}

/// Transitive-closure size `sum C(|S_k|, 2)` (MEC objective, maximized).
pub fn objective_mec(_g: &ColoredGraph, p: &Partition) -> i64 {
    p.parts()
        .iter()
        .map(|part| (part.len() * part.len().saturating_sub(1) / 2) as i64)
        .sum()
}

/// Nonempty slot count (MCC objective, minimized).
pub fn objective_mcc(_g: &ColoredGraph, p: &Partition) -> i64 {
    p.part_count() as i64
}

pub fn objective_value(g: &ColoredGraph, p: &Partition, problem: Problem) -> i64 {
    match problem {
        Problem::Mop => objective_mop(g, p),
        Problem::Mec => objective_mec(g, p),
        Problem::Mcc => objective_mcc(g, p),
    }
}

/// Component count of the kept-edge graph (refines the partition whenever a
/// slot induces a disconnected subgraph; used when reporting MOP solutions).
pub fn kept_component_count(g: &ColoredGraph, p: &Partition) -> usize {
    g.components_under(&p.kept_edges(g)).len()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("line {line}: unrecognized line `{content}`")]
    BadLine { line: usize, content: String },
    #[error("line {line}: node {node} out of range 1..={n}")]
    NodeOutOfRange { line: usize, node: usize, n: usize },
    #[error("line {line}: node {node} assigned twice")]
    NodeRepeated { line: usize, node: usize },
    #[error("node {node} not assigned to any slot")]
    NodeMissing { node: usize },
}

/// Canonical solution text: slot lines plus one objective line.
pub fn write_solution(p: &Partition, problem: Problem, value: i64) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    for (k, part) in p.parts().iter().enumerate() {
        let members: Vec<String> = part.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(out, "s {}: {}", k + 1, members.join(" "));
    }
    let _ = writeln!(out, "obj {} {}", problem, value);
    out
}

/// Parses slot lines (and ignores a trailing `obj` line if present). Slot
/// labels may be arbitrary; the result is canonicalized.
pub fn parse_solution(text: &str, n: usize) -> Result<Partition, SolutionError> {
    let mut raw = vec![u32::MAX; n];
    let mut next_slot = 0u32;
    for (idx, line_raw) in text.lines().enumerate() {
        let line = line_raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') || line.starts_with("obj") {
            continue;
        }
        let rest = match line.strip_prefix("s ") {
            Some(rest) => rest,
            None => {
                return Err(SolutionError::BadLine {
                    line: lineno,
                    content: line_raw.to_string(),
                })
            }
        };
        let (_, members) = rest.split_once(':').ok_or_else(|| SolutionError::BadLine {
            line: lineno,
            content: line_raw.to_string(),
        })?;
        let slot = next_slot;
        next_slot += 1;
        for tok in members.split_ascii_whitespace() {
            let node: usize = tok.parse().map_err(|_| SolutionError::BadLine {
                line: lineno,
                content: line_raw.to_string(),
            })?;
            if node < 1 || node > n {
                return Err(SolutionError::NodeOutOfRange { line: lineno, node, n });
            }
            if raw[node - 1] != u32::MAX {
                return Err(SolutionError::NodeRepeated { line: lineno, node });
            }
            raw[node - 1] = slot;
        }
    }
    if let Some(v) = raw.iter().position(|&s| s == u32::MAX) {
        return Err(SolutionError::NodeMissing { node: v + 1 });
    }
    Ok(Partition::from_assignment(&raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangle with two nodes of one color: nodes 1,2 share color A, node
    /// 3 is B.
    fn two_a_triangle() -> ColoredGraph {
        ColoredGraph::build(&["A", "A", "B"], &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn canonical_labeling_ignores_slot_names() {
        let a = Partition::from_assignment(&[5, 2, 5, 9]);
        let b = Partition::from_assignment(&[0, 1, 0, 2]);
        assert_eq!(a, b);
        assert_eq!(a.part_count(), 3);
        assert_eq!(a.parts(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn feasibility_on_two_a_triangle() {
        let g = two_a_triangle();
        // {1,3},{2}: colorful and connected.
        let good = Partition::from_parts(3, &[vec![0, 2], vec![1]]);
        let rep = check_feasible(&g, &good);
        assert!(rep.feasible_for(Problem::Mop));
        assert!(rep.feasible_for(Problem::Mec));
        assert!(rep.violations.is_empty());

        // {1,2},{3}: repeats color A.
        let clash = Partition::from_parts(3, &[vec![0, 1], vec![2]]);
        let rep = check_feasible(&g, &clash);
        assert!(!rep.feasible_for(Problem::Mop));
        assert_eq!(
            rep.violations,
            vec![SlotViolation::RepeatedColor { slot: 1, color: "A".into() }]
        );
    }

    #[test]
    fn disconnected_part_fails_only_connectivity() {
        // Path 1 - 2 - 3, part {1,3} is colorful but not connected.
        let g = ColoredGraph::build(&["A", "B", "C"], &[(0, 1), (1, 2)]).unwrap();
        let p = Partition::from_parts(3, &[vec![0, 2], vec![1]]);
        let rep = check_feasible(&g, &p);
        assert!(rep.feasible_for(Problem::Mop));
        assert!(!rep.feasible_for(Problem::Mec));
        assert!(!rep.feasible_for(Problem::Mcc));
        assert_eq!(rep.violations, vec![SlotViolation::Disconnected { slot: 1 }]);
    }

    #[test]
    fn objectives_on_two_a_triangle() {
        let g = two_a_triangle();
        let p = Partition::from_parts(3, &[vec![0, 2], vec![1]]);
        assert_eq!(objective_mop(&g, &p), 1); // keeps edge {1,3}
        assert_eq!(removed_edges(&g, &p), 2);
        assert_eq!(objective_mec(&g, &p), 1); // C(2,2) + C(1,2)
        assert_eq!(objective_mcc(&g, &p), 2);
        assert_eq!(kept_component_count(&g, &p), 2);

        let all_one = Partition::from_parts(3, &[vec![0, 1, 2]]);
        assert_eq!(objective_mop(&g, &all_one), 3);
        assert_eq!(objective_mec(&g, &all_one), 3);
        assert_eq!(objective_mcc(&g, &all_one), 1);
    }

    #[test]
    fn closure_of_sizes_four_and_one() {
        // A partition with part sizes 4 and 1 has closure C(4,2) = 6.
        let g = ColoredGraph::build(&["A", "B", "C", "D", "E"], &[(0, 1)]).unwrap();
        let p = Partition::from_parts(5, &[vec![0, 1, 2, 3], vec![4]]);
        assert_eq!(objective_mec(&g, &p), 6);
    }

    #[test]
    fn solution_text_roundtrip() {
        let p = Partition::from_parts(4, &[vec![0, 2], vec![1], vec![3]]);
        let text = write_solution(&p, Problem::Mop, 3);
        assert_eq!(text, "s 1: 1 3\ns 2: 2\ns 3: 4\nobj mop 3\n");
        let back = parse_solution(&text, 4).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn solution_parse_errors() {
        assert!(matches!(
            parse_solution("s 1: 1 2\n", 3),
            Err(SolutionError::NodeMissing { node: 3 })
        ));
        assert!(matches!(
            parse_solution("s 1: 1 2\ns 2: 2 3\n", 3),
            Err(SolutionError::NodeRepeated { line: 2, node: 2 })
        ));
        assert!(matches!(
            parse_solution("s 1: 1 5\n", 3),
            Err(SolutionError::NodeOutOfRange { line: 1, node: 5, n: 3 })
        ));
        assert!(matches!(
            parse_solution("part one\n", 2),
            Err(SolutionError::BadLine { line: 1, .. })
        ));
    }
}
