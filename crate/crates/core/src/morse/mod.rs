//! Morse-Smale flow graphs and counts of maximally broken trajectories.
//!
//! A flow graph records the critical points of a Morse function with their
//! indices and, for each pair of critical points of adjacent index, the number
//! of unparametrized flow lines between them. An `n`-part broken trajectory
//! is a sequence `p_n, …, p_0` with `ind(p_i) = i`, counted with weight
//! `∏ m(p_i, p_{i−1})`.

mod bound;
mod disk;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigUint, One, Zero};

use crate::{Error, Result};

pub use bound::{
    check_bound, simplicial_volume_of, BoundReport, VolumeSpec, RATIO_TOLERANCE, VOL_SIMPLEX_2, VOL_SIMPLEX_3,
};
pub use disk::{verify_gray, DescendingDiskPosets, GrayReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub name: String,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowGraph {
    dim: usize,
    points: Vec<CriticalPoint>,
    lookup: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), u64>,
}

impl FlowGraph {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            points: Vec::new(),
            lookup: HashMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn add_point(&mut self, name: impl Into<String>, index: usize) -> Result<&mut Self> {
        let name = name.into();
        if index > self.dim {
            return Err(Error::InvalidFlow(format!(
                "point `{name}` has index {index} above the dimension {}",
                self.dim
            )));
        }
        if self.lookup.contains_key(&name) {
            return Err(Error::DuplicateId(name));
        }
        self.lookup.insert(name.clone(), self.points.len());
        self.points.push(CriticalPoint { name, index });
        Ok(self)
    }

    /// Adds `mult` flow lines from `from` down to `to`, whose index must be
    /// one less.
    pub fn add_edge(&mut self, from: &str, to: &str, mult: u64) -> Result<&mut Self> {
        let (a, b) = (self.position(from)?, self.position(to)?);
        if self.points[a].index != self.points[b].index + 1 {
            return Err(Error::InvalidFlow(format!(
                "edge `{from}` → `{to}` joins indices {} and {}; flow lines must drop the index by one",
                self.points[a].index, self.points[b].index
            )));
        }
        if self.edges.insert((a, b), mult).is_some() {
            return Err(Error::InvalidFlow(format!("edge `{from}` → `{to}` given twice")));
        }
        Ok(self)
    }

    fn position(&self, name: &str) -> Result<usize> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidFlow(format!("unknown critical point `{name}`")))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[CriticalPoint] {
        &self.points
    }

    pub fn point(&self, name: &str) -> Result<&CriticalPoint> {
        self.position(name).map(|i| &self.points[i])
    }

    /// `(from, to, multiplicity)` in insertion order of the points.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.edges
            .iter()
            .map(|(&(a, b), &m)| (self.points[a].name.as_str(), self.points[b].name.as_str(), m))
    }

    pub fn multiplicity(&self, from: &str, to: &str) -> Result<u64> {
        let (a, b) = (self.position(from)?, self.position(to)?);
        Ok(self.edges.get(&(a, b)).copied().unwrap_or(0))
    }

    fn down(&self, a: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.edges.range((a, 0)..(a + 1, 0)).map(|(&(_, b), &m)| (b, m))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.points.iter().map(|p| if p.index % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Points of index `dim`, sorted by name.
    fn tops(&self) -> Vec<usize> {
        let mut tops: Vec<usize> = (0..self.points.len())
            .filter(|&i| self.points[i].index == self.dim)
            .collect();
        tops.sort_by(|&a, &b| self.points[a].name.cmp(&self.points[b].name));
        tops
    }
}

pub fn parse_flow(text: &str) -> Result<FlowGraph> {
    let mut graph: Option<FlowGraph> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| Error::Parse { line, message };
        let words: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        let Some(g) = graph.as_mut() else {
            if words.len() != 4 || words[..3] != ["morse-flow", "v1", "dim"] {
                return Err(err("expected header `morse-flow v1 dim <n>`".into()));
            }
            let dim = words[3]
                .parse()
                .map_err(|_| err(format!("invalid dimension `{}`", words[3])))?;
            graph = Some(FlowGraph::new(dim));
            continue;
        };
        let located = |e: Error| match e {
            Error::Parse { .. } => e,
            other => err(other.to_string()),
        };
        match words[0] {
            "point" if words.len() == 3 => {
                let index = words[2]
                    .parse()
                    .map_err(|_| err(format!("invalid index `{}`", words[2])))?;
                g.add_point(words[1], index).map_err(located)?;
            }
            "edge" if words.len() == 4 => {
                let mult = words[3]
                    .parse()
                    .map_err(|_| err(format!("invalid multiplicity `{}`", words[3])))?;
                g.add_edge(words[1], words[2], mult).map_err(located)?;
            }
            "point" => return Err(err("expected `point <name> <index>`".into())),
            "edge" => return Err(err("expected `edge <from> <to> <multiplicity>`".into())),
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    graph.ok_or_else(|| Error::Parse {
        line: 1,
        message: "expected header `morse-flow v1 dim <n>`".into(),
    })
}

pub fn write_flow(g: &FlowGraph) -> String {
    let mut out = format!("morse-flow v1 dim {}\n", g.dim);
    for p in &g.points {
        out.push_str(&format!("point {} {}\n", p.name, p.index));
    }
    for (a, b, m) in g.edges() {
        out.push_str(&format!("edge {a} {b} {m}\n"));
    }
    out
}

/// Outcome of [`validate_flow`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowReport {
    /// Points `p` with `∂∂p ≠ 0` mod 2, each with the points of odd
    /// coefficient, sorted by name.
    pub square_witnesses: Vec<(String, Vec<String>)>,
    pub euler_characteristic: i64,
    pub expected_euler: Option<i64>,
}

impl FlowReport {
    pub fn square_zero(&self) -> bool {
        self.square_witnesses.is_empty()
    }

    pub fn euler_matches(&self) -> bool {
        self.expected_euler.is_none_or(|e| e == self.euler_characteristic)
    }

    pub fn passed(&self) -> bool {
        self.square_zero() && self.euler_matches()
    }
}

/// Checks that the mod-2 differential `∂p = Σ m(p,q)·q` squares to zero and,
/// when given, the Euler characteristic.
pub fn validate_flow(g: &FlowGraph, expected_euler: Option<i64>) -> FlowReport {
    let mut square_witnesses = Vec::new();
    let mut order: Vec<usize> = (0..g.points.len()).collect();
    order.sort_by(|&a, &b| g.points[a].name.cmp(&g.points[b].name));
    for &p in &order {
        let mut odd: BTreeSet<&str> = BTreeSet::new();
        for (q, m) in g.down(p) {
            if m % 2 == 0 {
                continue;
            }
            for (r, m2) in g.down(q) {
                if m2 % 2 == 1 {
                    let name = g.points[r].name.as_str();
                    if !odd.remove(name) {
                        odd.insert(name);
                    }
                }
            }
        }
        if !odd.is_empty() {
            square_witnesses.push((g.points[p].name.clone(), odd.into_iter().map(String::from).collect()));
        }
    }
    FlowReport {
        square_witnesses,
        euler_characteristic: g.euler_characteristic(),
        expected_euler,
    }
}

/// Broken-trajectory counts per point of top index, sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryCounts {
    pub per_top: Vec<(String, BigUint)>,
    pub total: BigUint,
}

fn totals(g: &FlowGraph, mut from: impl FnMut(usize) -> BigUint) -> TrajectoryCounts {
    let per_top: Vec<(String, BigUint)> = g
        .tops()
        .into_iter()
        .map(|p| (g.points[p].name.clone(), from(p)))
        .collect();
    let total = per_top.iter().map(|(_, n)| n).sum();
    TrajectoryCounts { per_top, total }
}

/// Counts by enumerating every sequence `p_n, …, p_0` explicitly.
pub fn count_trajectories(g: &FlowGraph) -> TrajectoryCounts {
    totals(g, |p| enumerate_from(g, p))
}

/// Counts with the recursion `N(p) = Σ m(p,r)·N(r)`, `N = 1` in index 0.
pub fn count_trajectories_recursive(g: &FlowGraph) -> TrajectoryCounts {
    let mut memo = HashMap::new();
    totals(g, |p| recursive_from(g, p, &mut memo))
}

/// `ind(p)`-part broken trajectories starting at `p`, by enumeration.
pub fn trajectories_from(g: &FlowGraph, p: &str) -> Result<BigUint> {
    Ok(enumerate_from(g, g.position(p)?))
}

fn enumerate_from(g: &FlowGraph, p: usize) -> BigUint {
    // Depth-first over explicit sequences, accumulating the weight of each.
    let mut total = BigUint::zero();
    let mut stack: Vec<(usize, BigUint)> = vec![(p, BigUint::one())];
    while let Some((q, weight)) = stack.pop() {
        if g.points[q].index == 0 {
            total += weight;
            continue;
        }
        for (r, m) in g.down(q) {
            if m > 0 {
                stack.push((r, &weight * BigUint::from(m)));
            }
        }
    }
    total
}

fn recursive_from(g: &FlowGraph, p: usize, memo: &mut HashMap<usize, BigUint>) -> BigUint {
    if g.points[p].index == 0 {
        return BigUint::one();
    }
    if let Some(n) = memo.get(&p) {
        return n.clone();
    }
    let mut n = BigUint::zero();
    for (r, m) in g.down(p).collect::<Vec<_>>() {
        n += BigUint::from(m) * recursive_from(g, r, memo);
    }
    memo.insert(p, n.clone());
    n
}
