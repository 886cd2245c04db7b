//! Node-colored undirected graphs: the shared instance model.
//!
//! Nodes are `0..n` internally and `1..=n` in files and reports. Colors are
//! arbitrary string tokens compacted to dense ids `0..color_count` in order
//! of first appearance over ascending node id, with the original tokens
//! retained for output.
//!
//! Instance text format (one item per line, `#` starts a comment line):
//!
//! ```text
//! p ccp <nodes> <edges> <colors>
//! c <node> <color-token>      (one per node)
//! e <u> <v>                   (one per edge)
//! ```
//!
//! [`ColoredGraph::to_text`] is canonical — color lines in node order, edge
//! lines sorted lexicographically — so equal graphs serialize to identical
//! bytes.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::BitSet;

/// Set of node ids (`0..n`).
pub type NodeSet = BitSet;
/// Set of edge ids (`0..m`), indices into [`ColoredGraph::edges`].
pub type EdgeSet = BitSet;

/// Edge connectivity reported for a single-node graph: no cut can separate
/// anything, so the value acts as "unbounded".
pub const UNBOUNDED_CONNECTIVITY: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected header `p ccp <nodes> <edges> <colors>`")]
    BadHeader { line: usize },
    #[error("line {line}: unrecognized line `{content}`")]
    BadLine { line: usize, content: String },
    #[error("line {line}: node {node} out of range 1..={n}")]
    NodeOutOfRange { line: usize, node: usize, n: usize },
    #[error("line {line}: node {node} colored twice")]
    DuplicateColor { line: usize, node: usize },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("node {node} has no color line")]
    MissingColor { node: usize },
    #[error("header declares {declared} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("graph must have at least one node")]
    Empty,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    /// `u < v`, sorted lexicographically, no duplicates.
    edges: Vec<(u32, u32)>,
    /// Node -> dense color id.
    colors: Vec<u32>,
    /// Dense color id -> original token.
    color_names: Vec<String>,
    /// Node -> (neighbor, edge id), sorted by neighbor.
    adj: Vec<Vec<(u32, u32)>>,
}

impl ColoredGraph {
    /// Builds a graph from per-node color tokens and 0-based edge pairs.
    pub fn build(
        color_tokens: &[&str],
        edge_pairs: &[(usize, usize)],
    ) -> Result<ColoredGraph, GraphError> {
        let n = color_tokens.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut color_names: Vec<String> = Vec::new();
        let mut ids: HashMap<&str, u32> = HashMap::new();
        let mut colors = Vec::with_capacity(n);
        for &tok in color_tokens {
            let id = *ids.entry(tok).or_insert_with(|| {
                color_names.push(tok.to_string());
                (color_names.len() - 1) as u32
            });
            colors.push(id);
        }
        let mut edges: Vec<(u32, u32)> = Vec::with_capacity(edge_pairs.len());
        for &(a, b) in edge_pairs {
            if a >= n || b >= n {
                return Err(GraphError::NodeOutOfRange {
                    line: 0,
                    node: a.max(b) + 1,
                    n,
                });
            }
            if a == b {
                return Err(GraphError::SelfLoop { line: 0, node: a + 1 });
            }
            edges.push((a.min(b) as u32, a.max(b) as u32));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge {
                line: 0,
                u: w[0].0 as usize + 1,
                v: w[0].1 as usize + 1,
            });
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u as usize].push((v, id as u32));
            adj[v as usize].push((u, id as u32));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(ColoredGraph {
            n,
            edges,
            colors,
            color_names,
            adj,
        })
    }

    /// Parses the instance text format; errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<ColoredGraph, GraphError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut header_line = 0;
        let mut color_lines: Vec<(usize, usize, String)> = Vec::new(); // line, node, token
        let mut edge_lines: Vec<(usize, usize, usize)> = Vec::new(); // line, u, v

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_ascii_whitespace();
            match parts.next() {
                Some("p") => {
                    let ok = parts.next() == Some("ccp");
                    let nums: Option<Vec<usize>> =
                        parts.map(|t| t.parse().ok()).collect();
                    match (ok, nums.as_deref()) {
                        (true, Some([n, m, k])) if header.is_none() => {
                            header = Some((*n, *m, *k));
                            header_line = lineno;
                        }
                        _ => return Err(GraphError::BadHeader { line: lineno }),
                    }
                }
                Some("c") => {
                    let node: Option<usize> = parts.next().and_then(|t| t.parse().ok());
                    let tok = parts.next();
                    match (node, tok, parts.next()) {
                        (Some(v), Some(t), None) => {
                            color_lines.push((lineno, v, t.to_string()))
                        }
                        _ => {
                            return Err(GraphError::BadLine {
                                line: lineno,
                                content: raw.to_string(),
                            })
                        }
                    }
                }
                Some("e") => {
                    let u: Option<usize> = parts.next().and_then(|t| t.parse().ok());
                    let v: Option<usize> = parts.next().and_then(|t| t.parse().ok());
                    match (u, v, parts.next()) {
                        (Some(u), Some(v), None) => edge_lines.push((lineno, u, v)),
                        _ => {
                            return Err(GraphError::BadLine {
                                line: lineno,
                                content: raw.to_string(),
                            })
                        }
                    }
                }
                _ => {
                    return Err(GraphError::BadLine {
                        line: lineno,
                        content: raw.to_string(),
                    })
                }
            }
        }

        let (n, m, k) = header.ok_or(GraphError::BadHeader { line: 1 })?;
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut tokens: Vec<Option<String>> = vec![None; n];
        for (line, node, tok) in color_lines {
            if node < 1 || node > n {
                return Err(GraphError::NodeOutOfRange { line, node, n });
            }
            if tokens[node - 1].is_some() {
                return Err(GraphError::DuplicateColor { line, node });
            }
            tokens[node - 1] = Some(tok);
        }
        if let Some(v) = tokens.iter().position(Option::is_none) {
            return Err(GraphError::MissingColor { node: v + 1 });
        }
        let mut pairs = Vec::with_capacity(edge_lines.len());
        for (line, u, v) in edge_lines {
            if u < 1 || u > n {
                return Err(GraphError::NodeOutOfRange { line, node: u, n });
            }
            if v < 1 || v > n {
                return Err(GraphError::NodeOutOfRange { line, node: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, node: u });
            }
            pairs.push((line, u - 1, v - 1));
        }
        if pairs.len() != m {
            return Err(GraphError::CountMismatch {
                what: "edges",
                declared: m,
                found: pairs.len(),
            });
        }
        // Re-check duplicates here to keep the offending line number.
        let mut seen = HashMap::new();
        for &(line, u, v) in &pairs {
            let key = (u.min(v), u.max(v));
            if seen.insert(key, line).is_some() {
                return Err(GraphError::DuplicateEdge {
                    line,
                    u: key.0 + 1,
                    v: key.1 + 1,
                });
            }
        }
        let tokens: Vec<String> = tokens.into_iter().map(Option::unwrap).collect();
        let token_refs: Vec<&str> = tokens.iter().map(String::as_str).collect();
        let edge_refs: Vec<(usize, usize)> = pairs.iter().map(|&(_, u, v)| (u, v)).collect();
        let g = ColoredGraph::build(&token_refs, &edge_refs)?;
        if g.color_count() != k {
            return Err(GraphError::CountMismatch {
                what: "colors",
                declared: k,
                found: g.color_count(),
            });
        }
        let _ = header_line;
        Ok(g)
    }

    /// Canonical text form: header, colors in node order, edges sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p ccp {} {} {}", self.n, self.edges.len(), self.color_count());
        for v in 0..self.n {
            let _ = writeln!(out, "c {} {}", v + 1, self.color_names[self.colors[v] as usize]);
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn color_count(&self) -> usize {
        self.color_names.len()
    }

    pub fn color_of(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_name(&self, c: u32) -> &str {
        &self.color_names[c as usize]
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        let (u, v) = self.edges[id];
        (u as usize, v as usize)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.edges.binary_search(&key).ok()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[v].iter().map(|&(w, e)| (w as usize, e as usize))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Nodes of each color class, dense color id order.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.color_count()];
        for v in 0..self.n {
            classes[self.colors[v] as usize].push(v);
        }
        classes
    }

    /// Size of the largest color class.
    pub fn max_color_class(&self) -> usize {
        self.color_classes().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components of `(V, keep)`, ordered by smallest node;
    /// singletons included.
    pub fn components_under(&self, keep: &EdgeSet) -> Vec<NodeSet> {
        debug_assert_eq!(keep.capacity(), self.m());
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = NodeSet::new(self.n);
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for (y, e) in self.neighbors(x) {
                    if keep.contains(e) && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Connected components with every edge kept.
    pub fn components(&self) -> Vec<NodeSet> {
        self.components_under(&EdgeSet::full(self.m()))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Is `s` (nonempty) connected in the subgraph it induces?
    pub fn is_connected_within(&self, s: &NodeSet) -> bool {
        let start = match s.min() {
            Some(v) => v,
            None => return false,
        };
        let mut seen = NodeSet::new(self.n);
        seen.insert(start);
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for (y, _) in self.neighbors(x) {
                if s.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == s.len()
    }

    /// Subgraph induced by `s` with nodes relabeled `0..|s|` in ascending
    /// original order. Returns the graph and the new->old node mapping. The
    /// color table is carried over unchanged so color ids remain comparable
    /// across extraction rounds.
    pub fn induced_subgraph(&self, s: &NodeSet) -> (ColoredGraph, Vec<usize>) {
        assert!(!s.is_empty(), "induced subgraph of an empty node set");
        let original: Vec<usize> = s.iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in original.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (u, v) = (u as usize, v as usize);
            if s.contains(u) && s.contains(v) {
                edges.push((new_id[u] as u32, new_id[v] as u32));
            }
        }
        let colors: Vec<u32> = original.iter().map(|&v| self.colors[v]).collect();
        let mut adj = vec![Vec::new(); original.len()];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u as usize].push((v, id as u32));
            adj[v as usize].push((u, id as u32));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        (
            ColoredGraph {
                n: original.len(),
                edges,
                colors,
                color_names: self.color_names.clone(),
                adj,
            },
            original,
        )
    }

    /// Edge ids crossing the cut `(u, V \ u)`, ascending.
    pub fn cut_edges(&self, u: &NodeSet) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(_, &(a, b))| u.contains(a as usize) != u.contains(b as usize))
            .map(|(id, _)| id)
            .collect()
    }

    /// Global edge connectivity: 0 if disconnected,
    /// [`UNBOUNDED_CONNECTIVITY`] for a single node, otherwise the weight of
    /// a global minimum cut (Stoer–Wagner on the contraction graph).
    pub fn edge_connectivity(&self) -> usize {
        if self.n == 1 {
            return UNBOUNDED_CONNECTIVITY;
        }
        if !self.is_connected() {
            return 0;
        }
        let n = self.n;
        let mut w = vec![vec![0u64; n]; n];
        for &(u, v) in &self.edges {
            w[u as usize][v as usize] += 1;
            w[v as usize][u as usize] += 1;
        }
        let mut active: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        while active.len() > 1 {
            // Maximum adjacency ordering; the last node's connection weight
            // is the cut of the phase.
            let mut weight = vec![0u64; n];
            let mut added = vec![false; n];
            let mut order = Vec::with_capacity(active.len());
            for _ in 0..active.len() {
                let &next = active
                    .iter()
                    .filter(|&&v| !added[v])
                    .max_by_key(|&&v| weight[v])
                    .expect("active nonempty");
                added[next] = true;
                order.push(next);
                for &v in &active {
                    if !added[v] {
                        weight[v] += w[next][v];
                    }
                }
            }
            let t = *order.last().unwrap();
            let s = order[order.len() - 2];
            best = best.min(weight[t]);
            // Contract t into s.
            for &v in &active {
                if v != s && v != t {
                    w[s][v] += w[t][v];
                    w[v][s] = w[s][v];
                }
            }
            active.retain(|&v| v != t);
        }
        best as usize
    }
}

impl std::fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ColoredGraph(n={}, m={}, colors={})",
            self.n,
            self.m(),
            self.color_count()
        )
    }
}
