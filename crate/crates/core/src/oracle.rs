//! Brute-force reference optima by exhaustive set-partition enumeration.
//!
//! Partitions are walked as restricted growth strings (node 0 in slot 0;
//! each later node joins an existing slot or opens the next one), which is
//! exactly the canonical first-occurrence labeling used by [`Partition`].
//! Capped at [`MAX_ORACLE_NODES`] nodes (Bell(12) ≈ 4.2 million).
//!
//! The oracle is the ground truth the solvers are tested against; it also
//! re-derives the pinned numbers of the tradeoff fixtures
//! ([`verify_examples`]).

use thiserror::Error;

use crate::fixtures;
use crate::graph::ColoredGraph;
use crate::solution::{
    kept_component_count, objective_value, removed_edges, Partition, Problem,
};

pub const MAX_ORACLE_NODES: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} nodes exceed the enumeration limit of {limit} (Bell growth)")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub problem: Problem,
    pub optimum: i64,
    /// Every optimal partition, canonical labeling, ascending.
    pub optima: Vec<Partition>,
    /// Number of feasible partitions for this problem's feasibility notion.
    pub feasible_count: u64,
}

impl OracleResult {
    pub fn contains(&self, p: &Partition) -> bool {
        self.optima.binary_search(p).is_ok()
    }
}

/// Iterator over restricted growth strings of length `n`.
struct RgsIter {
    a: Vec<u32>,
    fresh: bool,
}

impl RgsIter {
    fn new(n: usize) -> RgsIter {
        RgsIter { a: vec![0; n], fresh: true }
    }

    fn next(&mut self) -> Option<&[u32]> {
        if self.fresh {
            self.fresh = false;
            return Some(&self.a);
        }
        let n = self.a.len();
        // Rightmost position that may still grow: a[j] can rise to
        // max(a[0..j]) + 1; positions after it reset to 0.
        let mut prefix_max = vec![0u32; n];
        for j in 1..n {
            prefix_max[j] = prefix_max[j - 1].max(self.a[j - 1]);
        }
        for j in (1..n).rev() {
            if self.a[j] <= prefix_max[j] {
                self.a[j] += 1;
                for t in j + 1..n {
                    self.a[t] = 0;
                }
                return Some(&self.a);
            }
        }
        None
    }
}

struct Best {
    value: i64,
    optima: Vec<Vec<u32>>,
    feasible: u64,
}

impl Best {
    fn new() -> Best {
        Best { value: 0, optima: Vec::new(), feasible: 0 }
    }

    fn offer(&mut self, maximize: bool, value: i64, rgs: &[u32]) {
        self.feasible += 1;
        let better = if self.optima.is_empty() {
            true
        } else if maximize {
            value > self.value
        } else {
            value < self.value
        };
        if better {
            self.value = value;
            self.optima.clear();
        }
        if value == self.value {
            self.optima.push(rgs.to_vec());
        }
    }

    fn into_result(self, problem: Problem) -> OracleResult {
        let mut optima: Vec<Partition> = self
            .optima
            .into_iter()
            .map(|a| Partition::from_assignment(&a))
            .collect();
        optima.sort();
        OracleResult {
            problem,
            optimum: self.value,
            optima,
            feasible_count: self.feasible,
        }
    }
}

/// All three optima in a single enumeration sweep.
pub struct OracleSummary {
    pub mop: OracleResult,
    pub mec: OracleResult,
    pub mcc: OracleResult,
}

impl OracleSummary {
    pub fn get(&self, problem: Problem) -> &OracleResult {
        match problem {
            Problem::Mop => &self.mop,
            Problem::Mec => &self.mec,
            Problem::Mcc => &self.mcc,
        }
    }
}

pub fn enumerate_all(g: &ColoredGraph) -> Result<OracleSummary, OracleError> {
    let n = g.n();
    if n > MAX_ORACLE_NODES {
        return Err(OracleError::TooLarge { n, limit: MAX_ORACLE_NODES });
    }
    let mut mop = Best::new();
    let mut mec = Best::new();
    let mut mcc = Best::new();

    let mut iter = RgsIter::new(n);
    let mut parts: Vec<Vec<usize>> = Vec::with_capacity(n);
    while let Some(rgs) = iter.next() {
        let slot_count = rgs.iter().map(|&s| s as usize + 1).max().unwrap_or(0);
        parts.clear();
        parts.resize(slot_count, Vec::new());
        for (v, &s) in rgs.iter().enumerate() {
            parts[s as usize].push(v);
        }
        if !parts.iter().all(|p| colorful(g, p)) {
            continue;
        }

        let kept = g
            .edges()
            .iter()
            .filter(|&&(u, v)| rgs[u as usize] == rgs[v as usize])
            .count() as i64;
        mop.offer(true, kept, rgs);

        if parts.iter().all(|p| connected(g, p)) {
            let closure: i64 = parts
                .iter()
                .map(|p| (p.len() * p.len().saturating_sub(1) / 2) as i64)
                .sum();
            mec.offer(true, closure, rgs);
            mcc.offer(false, slot_count as i64, rgs);
        }
    }

    Ok(OracleSummary {
        mop: mop.into_result(Problem::Mop),
        mec: mec.into_result(Problem::Mec),
        mcc: mcc.into_result(Problem::Mcc),
    })
}

pub fn enumerate_optima(g: &ColoredGraph, problem: Problem) -> Result<OracleResult, OracleError> {
    let summary = enumerate_all(g)?;
    Ok(match problem {
        Problem::Mop => summary.mop,
        Problem::Mec => summary.mec,
        Problem::Mcc => summary.mcc,
    })
}

fn colorful(g: &ColoredGraph, part: &[usize]) -> bool {
    let mut seen = 0u64;
    debug_assert!(g.color_count() <= 64);
    for &v in part {
        let bit = 1u64 << g.color_of(v);
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

fn connected(g: &ColoredGraph, part: &[usize]) -> bool {
    if part.len() <= 1 {
        return true;
    }
    let mut in_part = 0u64; // node mask; oracle limit keeps n <= 12
    for &v in part {
        in_part |= 1 << v;
    }
    let mut seen = 1u64 << part[0];
    let mut stack = vec![part[0]];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for (y, _) in g.neighbors(x) {
            let bit = 1u64 << y;
            if in_part & bit != 0 && seen & bit == 0 {
                seen |= bit;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == part.len()
}

#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub name: &'static str,
    pub ok: bool,
    pub details: Vec<String>,
}

/// Re-derives the pinned numbers of the three tradeoff fixtures from the
/// oracle. Every listed relation must hold; any miss is reported with the
/// observed value.
pub fn verify_examples() -> Vec<FixtureCheck> {
    let mut out = Vec::new();

    // Fixture 1: MOP removes strictly fewer edges than any MEC optimum
    // (1 vs 2) at the price of a smaller closure (6 vs 7).
    {
        let g = fixtures::tradeoff_mop_mec();
        let s = enumerate_all(&g).expect("fixture within oracle limit");
        let mut check = Checker::new("mop-vs-mec tradeoff");
        check.eq("MOP removed edges", s.mop.optimum, g.m() as i64 - 1);
        check.eq("MOP optima count", s.mop.optima.len() as i64, 1);
        for p in &s.mop.optima {
            check.eq("MOP optimum closure", objective_value(&g, p, Problem::Mec), 6);
            check.eq("MOP optimum components", kept_component_count(&g, p) as i64, 2);
        }
        check.eq("MEC optimum", s.mec.optimum, 7);
        for p in &s.mec.optima {
            check.eq("MEC optimum removed edges", removed_edges(&g, p), 2);
        }
        out.push(check.finish());
    }

    // Fixture 2: the MOP optimum removes 3 edges and always yields 3
    // components, while MCC reaches 2 components (one optimum pays 6
    // removed edges for it).
    {
        let g = fixtures::tradeoff_mop_mcc();
        let s = enumerate_all(&g).expect("fixture within oracle limit");
        let mut check = Checker::new("mop-vs-mcc tradeoff");
        check.eq("MOP removed edges", g.m() as i64 - s.mop.optimum, 3);
        for p in &s.mop.optima {
            check.eq("MOP optimum components", kept_component_count(&g, p) as i64, 3);
        }
        check.eq("MCC optimum", s.mcc.optimum, 2);
        let six = s.mcc.optima.iter().any(|p| removed_edges(&g, p) == 6);
        check.holds("some MCC optimum removes 6 edges", six);
        out.push(check.finish());
    }

    // Fixture 3: MEC closure 10 with 3 parts vs MCC count 2 with closure 9.
    {
        let g = fixtures::tradeoff_mec_mcc();
        let s = enumerate_all(&g).expect("fixture within oracle limit");
        let mut check = Checker::new("mec-vs-mcc tradeoff");
        check.eq("MEC optimum", s.mec.optimum, 10);
        for p in &s.mec.optima {
            check.eq("MEC optimum parts", p.part_count() as i64, 3);
        }
        check.eq("MCC optimum", s.mcc.optimum, 2);
        for p in &s.mcc.optima {
            check.eq("MCC optimum closure", objective_value(&g, p, Problem::Mec), 9);
        }
        let two = s.mcc.optima.iter().any(|p| removed_edges(&g, p) == 2);
        check.holds("some MCC optimum removes 2 edges", two);
        out.push(check.finish());
    }

    out
}

struct Checker {
    name: &'static str,
    ok: bool,
    details: Vec<String>,
}

impl Checker {
    fn new(name: &'static str) -> Checker {
        Checker { name, ok: true, details: Vec::new() }
    }

    fn eq(&mut self, what: &str, got: i64, want: i64) {
        if got == want {
            self.details.push(format!("{what} = {got}"));
        } else {
            self.ok = false;
            self.details.push(format!("{what} = {got}, expected {want}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.ok = false;
        }
        self.details.push(format!("{what}: {ok}"));
    }

    fn finish(self) -> FixtureCheck {
        FixtureCheck { name: self.name, ok: self.ok, details: self.details }
    }
}
