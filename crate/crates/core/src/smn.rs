//! State-mapping network of the logistic map: one node per ring element and an
//! edge `x -> f(x)`. Every node has out-degree one, so the graph splits into
//! disjoint cycles with trees hanging off them.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::Caps;
use crate::ring::{LogisticMap, RingModulus};

/// Dense successor table, `successor[x] = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmnGraph {
    map: LogisticMap,
    successor: Vec<u64>,
}

impl SmnGraph {
    pub(crate) fn from_map(map: &LogisticMap) -> Self {
        let successor = (0..map.ring().modulus()).map(|x| map.step(x)).collect();
        Self { map: *map, successor }
    }

    pub fn map(&self) -> &LogisticMap {
        &self.map
    }

    pub fn ring(&self) -> &RingModulus {
        self.map.ring()
    }

    pub fn mu(&self) -> u64 {
        self.map.mu()
    }

    pub fn successors(&self) -> &[u64] {
        &self.successor
    }

    pub fn len(&self) -> usize {
        self.successor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successor.is_empty()
    }
}

pub fn build_smn(mu: u64, ring: RingModulus, caps: &Caps) -> Result<SmnGraph> {
    Caps::check(ring.modulus(), caps.graph)?;
    Ok(SmnGraph::from_map(&LogisticMap::new(mu, ring)))
}

/// Where a node sits relative to its cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodeInfo {
    /// Index into [`SmnDecomposition::cycles`] of the cycle this node drains into.
    pub cycle_id: usize,
    /// Steps until the cycle is reached; zero for cycle nodes.
    pub tail_depth: u64,
    /// First cycle node on the path from this node.
    pub entry: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmnDecomposition {
    cycles: Vec<Vec<u64>>,
    nodes: Vec<NodeInfo>,
    cycle_length_multiset: BTreeMap<u64, u64>,
}

impl SmnDecomposition {
    /// Cycles in traversal order, each rotated to start at its minimum, sorted
    /// by that minimum.
    pub fn cycles(&self) -> &[Vec<u64>] {
        &self.cycles
    }

    pub fn node(&self, x: u64) -> &NodeInfo {
        &self.nodes[x as usize]
    }

    pub fn nodes(&self) -> &[NodeInfo] {
        &self.nodes
    }

    pub fn is_cycle_node(&self, x: u64) -> bool {
        self.nodes[x as usize].tail_depth == 0
    }

    /// cycle length -> number of cycles with that length
    pub fn cycle_length_multiset(&self) -> &BTreeMap<u64, u64> {
        &self.cycle_length_multiset
    }

    /// tail depth -> number of nodes at that depth
    pub fn tail_depth_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for node in &self.nodes {
            *hist.entry(node.tail_depth).or_insert(0) += 1;
        }
        hist
    }

    pub fn max_cycle_length(&self) -> u64 {
        self.cycle_length_multiset.keys().next_back().copied().unwrap_or(0)
    }
}

const UNVISITED: u8 = 0;
const IN_PROGRESS: u8 = 1;
const DONE: u8 = 2;

/// Linear-time decomposition into cycles and hanging trees.
///
/// Cycles are found by iterative three-color marking; tail depths and entry
/// points come from a reverse BFS seeded with every cycle node.
pub fn decompose(g: &SmnGraph) -> SmnDecomposition {
    let succ = &g.successor;
    let size = succ.len();
    let mut color = vec![UNVISITED; size];
    let mut cycles: Vec<Vec<u64>> = Vec::new();
    let mut path = Vec::new();

    for start in 0..size {
        if color[start] != UNVISITED {
            continue;
        }
        path.clear();
        let mut x = start;
        while color[x] == UNVISITED {
            color[x] = IN_PROGRESS;
            path.push(x);
            x = succ[x] as usize;
        }
        if color[x] == IN_PROGRESS {
            let at = path.iter().position(|&y| y == x).expect("node on current path");
            let cycle: Vec<u64> = path[at..].iter().map(|&y| y as u64).collect();
            cycles.push(rotate_to_min(cycle));
        }
        for &y in &path {
            color[y] = DONE;
        }
    }
    cycles.sort_unstable_by_key(|c| c[0]);

    // Predecessor lists in CSR form.
    let mut offsets = vec![0usize; size + 1];
    for &s in succ {
        offsets[s as usize + 1] += 1;
    }
    for i in 0..size {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut preds = vec![0usize; size];
    for (x, &s) in succ.iter().enumerate() {
        preds[fill[s as usize]] = x;
        fill[s as usize] += 1;
    }

    let mut nodes = vec![
        NodeInfo {
            cycle_id: usize::MAX,
            tail_depth: u64::MAX,
            entry: 0,
        };
        size
    ];
    let mut queue = VecDeque::new();
    for (id, cycle) in cycles.iter().enumerate() {
        for &x in cycle {
            nodes[x as usize] = NodeInfo {
                cycle_id: id,
                tail_depth: 0,
                entry: x,
            };
            queue.push_back(x as usize);
        }
    }
    while let Some(y) = queue.pop_front() {
        let here = nodes[y];
        for &x in &preds[offsets[y]..offsets[y + 1]] {
            if nodes[x].tail_depth == u64::MAX {
                nodes[x] = NodeInfo {
                    cycle_id: here.cycle_id,
                    tail_depth: here.tail_depth + 1,
                    entry: here.entry,
                };
                queue.push_back(x);
            }
        }
    }

    let mut cycle_length_multiset = BTreeMap::new();
    for c in &cycles {
        *cycle_length_multiset.entry(c.len() as u64).or_insert(0) += 1;
    }

    SmnDecomposition {
        cycles,
        nodes,
        cycle_length_multiset,
    }
}

fn rotate_to_min(mut cycle: Vec<u64>) -> Vec<u64> {
    let at = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(at);
    cycle
}

/// Graphviz digraph with nodes in ascending order and one edge per node.
/// Cycle nodes are colored when a decomposition is supplied.
pub fn export_dot(g: &SmnGraph, dec: Option<&SmnDecomposition>) -> String {
    let ring = g.ring();
    let mut out = String::new();
    writeln!(out, "digraph smn {{").unwrap();
    writeln!(out, "  // p={} n={} mu={}", ring.p(), ring.n(), g.mu()).unwrap();
    for x in 0..g.len() as u64 {
        match dec {
            Some(d) if d.is_cycle_node(x) => writeln!(out, "  {x} [color=red];").unwrap(),
            _ => writeln!(out, "  {x};").unwrap(),
        }
    }
    for (x, y) in g.successor.iter().enumerate() {
        writeln!(out, "  {x} -> {y};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Reads the edges of a DOT document produced by [`export_dot`] back into a
/// successor array.
pub fn parse_dot_successors(dot: &str) -> Result<Vec<u64>> {
    let bad = |line: &str| Error::PreconditionUnmet(format!("unparseable DOT edge: {line}"));
    let mut edges = BTreeMap::new();
    for line in dot.lines() {
        let line = line.trim();
        let Some((from, to)) = line.split_once("->") else {
            continue;
        };
        let to = to.trim().trim_end_matches(';').trim();
        let from: u64 = from.trim().parse().map_err(|_| bad(line))?;
        let to: u64 = to.parse().map_err(|_| bad(line))?;
        if edges.insert(from, to).is_some() {
            return Err(Error::PreconditionUnmet(format!("node {from} has two out-edges")));
        }
    }
    let succ: Vec<u64> = edges.values().copied().collect();
    if edges.keys().copied().ne(0..succ.len() as u64) {
        return Err(Error::PreconditionUnmet("DOT nodes are not 0..len".into()));
    }
    Ok(succ)
}

/// The JSON decomposition document.
#[derive(Debug, Serialize)]
pub struct SmnDocument<'a> {
    pub p: u64,
    pub n: u32,
    pub mu: u64,
    pub cycles: &'a [Vec<u64>],
    pub tail_depth_histogram: BTreeMap<u64, u64>,
    pub cycle_length_multiset: &'a BTreeMap<u64, u64>,
}

impl<'a> SmnDocument<'a> {
    pub fn new(g: &SmnGraph, dec: &'a SmnDecomposition) -> Self {
        Self {
            p: g.ring().p(),
            n: g.ring().n(),
            mu: g.mu(),
            cycles: &dec.cycles,
            tail_depth_histogram: dec.tail_depth_histogram(),
            cycle_length_multiset: &dec.cycle_length_multiset,
        }
    }
}

pub fn export_json(g: &SmnGraph, dec: &SmnDecomposition) -> String {
    serde_json::to_string_pretty(&SmnDocument::new(g, dec)).expect("document serializes")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpansionRecord {
    /// Minimum element of the cycle in `Z/3^n`.
    pub start: u64,
    pub length: u64,
    /// Length of the cycle through `start` in `Z/3^(n+1)`, or 0 if `start`
    /// is not a cycle node there.
    pub lifted_length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub mu: u64,
    pub n_from: u32,
    /// Cycles of length at least 3.
    pub checked: Vec<ExpansionRecord>,
    /// Cycles of length 1 or 2, reported but not held to the tripling rule.
    pub exempt: Vec<ExpansionRecord>,
    pub violations: Vec<ExpansionRecord>,
}

/// Checks that every cycle of length >= 3 in `F_{3^n}` becomes a cycle of
/// three times the length in `F_{3^(n+1)}`.
pub fn cycle_expansion_check(mu: u64, ring: RingModulus, caps: &Caps) -> Result<ExpansionReport> {
    if ring.p() != 3 {
        return Err(Error::NotBase3(ring.p()));
    }
    if mu.is_multiple_of(3) {
        return Err(Error::MuDivisibleBy3(mu));
    }
    let lower = build_smn(mu, ring, caps)?;
    let upper = build_smn(mu, ring.lifted()?, caps)?;
    let (lo, hi) = (decompose(&lower), decompose(&upper));

    let mut report = ExpansionReport {
        mu: lower.mu(),
        n_from: ring.n(),
        checked: Vec::new(),
        exempt: Vec::new(),
        violations: Vec::new(),
    };
    for cycle in lo.cycles() {
        let start = cycle[0];
        let node = hi.node(start);
        let lifted_length = if node.tail_depth == 0 {
            hi.cycles()[node.cycle_id].len() as u64
        } else {
            0
        };
        let rec = ExpansionRecord {
            start,
            length: cycle.len() as u64,
            lifted_length,
        };
        if rec.length < 3 {
            report.exempt.push(rec);
            continue;
        }
        if rec.lifted_length != 3 * rec.length {
            report.violations.push(rec);
        }
        report.checked.push(rec);
    }
    Ok(report)
}
