//! Generalized stratifications of Δ-complexes and abstract posets.
//!
//! A stratification assigns every open simplex to a stratum. Stratum `S′`
//! limits to `S` (written `S′ → S`) when `S` meets the closure of `S′`, i.e.
//! some simplex of `S′` has an iterated face in `S`. The limit digraph must be
//! acyclic; `S ⪯ S′` means there is a directed path from `S′` to `S`.

mod poset;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::Dfs;

use crate::complex::{DeltaComplex, FaceRef, Subdivision};
use crate::{Error, Result};

pub use poset::{parse_poset, write_poset, Element, LabelReport, Poset};

/// Index of a stratum; strata are numbered in lexicographic order of their
/// names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    names: Vec<String>,
    assignment: Vec<Vec<StratumId>>,
    /// `reach[a][b]`: a directed path (possibly empty) from `a` to `b`.
    reach: Vec<Vec<bool>>,
    edges: BTreeSet<(StratumId, StratumId)>,
}

impl Stratification {
    /// Assigns every simplex of `k` through `assign`; fails on the first
    /// unassigned simplex or on a cyclic limit digraph.
    pub fn from_fn<S: Into<String>>(k: &DeltaComplex, mut assign: impl FnMut(FaceRef) -> Option<S>) -> Result<Self> {
        let mut raw: Vec<Vec<String>> = Vec::new();
        for f in k.all_simplices() {
            if raw.len() <= f.dim {
                raw.resize(f.dim + 1, Vec::new());
            }
            let name = assign(f).ok_or_else(|| Error::Unassigned(k.id(f).to_string()))?;
            raw[f.dim].push(name.into());
        }
        let names: Vec<String> = raw
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let assignment = raw
            .iter()
            .map(|row| row.iter().map(|n| StratumId(lookup[n.as_str()])).collect())
            .collect();
        Self::with_assignment(k, names, assignment)
    }

    /// Assignment given as `(simplex, stratum name)` pairs.
    pub fn from_pairs<S: Into<String>>(
        k: &DeltaComplex,
        pairs: impl IntoIterator<Item = (FaceRef, S)>,
    ) -> Result<Self> {
        let mut map: HashMap<FaceRef, String> = HashMap::new();
        for (f, s) in pairs {
            map.insert(f, s.into());
        }
        Self::from_fn(k, |f| map.remove(&f))
    }

    fn with_assignment(k: &DeltaComplex, names: Vec<String>, assignment: Vec<Vec<StratumId>>) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for f in k.all_simplices() {
            let s = assignment[f.dim][f.index];
            for g in k.iterated_faces(f) {
                let t = assignment[g.dim][g.index];
                if s != t {
                    edges.insert((s, t));
                }
            }
        }
        let mut graph: DiGraph<(), ()> = DiGraph::new();
        let nodes: Vec<NodeIndex> = names.iter().map(|_| graph.add_node(())).collect();
        for &(a, b) in &edges {
            graph.add_edge(nodes[a.0], nodes[b.0], ());
        }
        if let Some(cycle) = tarjan_scc(&graph).into_iter().find(|c| c.len() > 1) {
            let mut members: Vec<String> = cycle.iter().map(|n| names[n.index()].clone()).collect();
            members.sort();
            return Err(Error::CyclicStrata(members));
        }
        let mut reach = vec![vec![false; names.len()]; names.len()];
        for (a, row) in reach.iter_mut().enumerate() {
            let mut dfs = Dfs::new(&graph, nodes[a]);
            while let Some(n) = dfs.next(&graph) {
                row[n.index()] = true;
            }
        }
        Ok(Self {
            names,
            assignment,
            reach,
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn strata(&self) -> impl Iterator<Item = StratumId> {
        (0..self.names.len()).map(StratumId)
    }

    pub fn name(&self, s: StratumId) -> &str {
        &self.names[s.0]
    }

    pub fn id_of(&self, name: &str) -> Result<StratumId> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map(StratumId)
            .map_err(|_| Error::UnknownStratum(name.to_string()))
    }

    pub fn stratum(&self, f: FaceRef) -> StratumId {
        self.assignment[f.dim][f.index]
    }

    /// Simplices assigned to `s`.
    pub fn members(&self, s: StratumId) -> Vec<FaceRef> {
        let mut out = Vec::new();
        for (d, row) in self.assignment.iter().enumerate() {
            for (i, &t) in row.iter().enumerate() {
                if t == s {
                    out.push(FaceRef::new(d, i));
                }
            }
        }
        out
    }

    /// Edges `S′ → S` of the limit digraph.
    pub fn limit_edges(&self) -> impl Iterator<Item = (StratumId, StratumId)> + '_ {
        self.edges.iter().copied()
    }

    /// `a ⪯ b`: a directed path from `b` to `a`.
    pub fn leq(&self, a: StratumId, b: StratumId) -> bool {
        self.reach[b.0][a.0]
    }

    pub fn comparable(&self, a: StratumId, b: StratumId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn incomparable(&self, a: StratumId, b: StratumId) -> bool {
        !self.comparable(a, b)
    }

    /// Number of strata in a longest totally ordered chain inside `set`.
    pub fn longest_chain(&self, set: &BTreeSet<StratumId>) -> usize {
        // Order by the number of strata below, which is a linear extension.
        let mut order: Vec<StratumId> = set.iter().copied().collect();
        let below = |s: StratumId| self.strata().filter(|&t| self.leq(t, s)).count();
        order.sort_by_key(|&s| below(s));
        let mut best: BTreeMap<StratumId, usize> = BTreeMap::new();
        for &s in &order {
            let len = 1 + order
                .iter()
                .filter(|&&t| t != s && self.leq(t, s))
                .filter_map(|t| best.get(t))
                .max()
                .copied()
                .unwrap_or(0);
            best.insert(s, len);
        }
        best.values().max().copied().unwrap_or(0)
    }

    /// The strata as a poset under `⪯`.
    pub fn poset(&self) -> Poset {
        let elements = self.names.iter().map(Element::new).collect();
        let mut relations = Vec::new();
        for a in self.strata() {
            for b in self.strata() {
                if a != b && self.leq(a, b) {
                    relations.push((self.name(a), self.name(b)));
                }
            }
        }
        Poset::new(elements, &relations).expect("reachability in an acyclic digraph is a partial order")
    }

    /// Stratification of a subdivision: each new simplex lies in the open
    /// simplex of its carrier.
    pub fn pull_back(&self, sd: &Subdivision) -> Stratification {
        let x = sd.complex();
        let assignment = (0..=x.top_dim().unwrap_or(0))
            .map(|d| x.simplices(d).map(|s| self.stratum(sd.carrier(s))).collect())
            .collect();
        Self::with_assignment(x, self.names.clone(), assignment).expect("pull-back keeps the limit digraph")
    }

    /// Splits every stratum into connected components, two simplices of a
    /// stratum being adjacent when one is a face of the other. Components are
    /// named `<stratum>` when the stratum is connected and `<stratum>.<k>`
    /// otherwise, numbered by their first simplex.
    pub fn refine_components(&self, k: &DeltaComplex) -> Stratification {
        let all: Vec<FaceRef> = k.all_simplices().collect();
        let pos: HashMap<FaceRef, usize> = all.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut parent: Vec<usize> = (0..all.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &f in &all {
            if f.dim == 0 {
                continue;
            }
            for i in 0..=f.dim {
                let g = k.face(f, i);
                if self.stratum(f) == self.stratum(g) {
                    let (a, b) = (find(&mut parent, pos[&f]), find(&mut parent, pos[&g]));
                    parent[a] = b;
                }
            }
        }
        let mut components: BTreeMap<StratumId, Vec<usize>> = BTreeMap::new();
        let mut root_label: HashMap<usize, usize> = HashMap::new();
        for (i, &f) in all.iter().enumerate() {
            let root = find(&mut parent, i);
            let roots = components.entry(self.stratum(f)).or_default();
            if !roots.contains(&root) {
                roots.push(root);
            }
            root_label.insert(root, roots.iter().position(|&r| r == root).unwrap_or(0));
        }
        Self::from_fn(k, |f| {
            let s = self.stratum(f);
            let root = find(&mut parent, pos[&f]);
            let name = self.name(s);
            Some(if components[&s].len() == 1 {
                name.to_string()
            } else {
                format!("{name}.{}", root_label[&root] + 1)
            })
        })
        .expect("components of strata form a stratification")
    }
}
