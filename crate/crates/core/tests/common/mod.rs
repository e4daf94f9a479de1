#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratvol::complex::{
    barycentric_subdivide, parse_chain, parse_complex, subdivide_chain, Chain, ComplexFile, DeltaComplex,
    DeltaComplexBuilder, FaceMask, FaceRef, FormalSimplex,
};
use stratvol::morse::FlowGraph;
use stratvol::strat::{Element, Poset, Stratification};
use stratvol::stratified::Subcomplex;
use stratvol::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn complex_fixture(name: &str) -> ComplexFile {
    parse_complex(&fixture(name)).unwrap()
}

pub fn chain_fixture(k: &DeltaComplex, name: &str) -> Chain {
    parse_chain(k, &fixture(name)).unwrap()
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn coefficient(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        q(n)
    } else {
        q(-n)
    }
}

/// Random facets on `n > max_dim` vertices, as sorted vertex lists; the first
/// has dimension `max_dim`.
fn random_facets(rng: &mut impl Rng, n: usize, max_dim: usize) -> Vec<Vec<usize>> {
    let count = rng.gen_range(1..=5);
    let mut out = BTreeSet::new();
    for t in 0..count {
        let d = if t == 0 { max_dim } else { rng.gen_range(1..=max_dim) };
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        let mut f = vs[..=d].to_vec();
        f.sort_unstable();
        out.insert(f);
    }
    out.into_iter().collect()
}

/// A random Δ-complex of dimension at most `max_dim`: a simplicial complex
/// whose vertices are then partly identified, which creates loops and
/// multiple edges between the same vertices.
pub fn random_complex(rng: &mut impl Rng, max_dim: usize) -> DeltaComplex {
    let n = rng.gen_range(max_dim + 1..=max_dim + 4);
    let facets = random_facets(rng, n, max_dim);
    let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in &facets {
        for m in FaceMask::full(f.len() - 1).nonempty_subsets() {
            simplices.insert(m.positions().map(|i| f[i]).collect());
        }
    }
    let mut rep: Vec<usize> = (0..n).collect();
    for v in 1..n {
        if rng.gen_bool(0.3) {
            rep[v] = rep[rng.gen_range(0..v)];
        }
    }
    let name = |s: &[usize]| {
        if s.len() == 1 {
            format!("v{}", rep[s[0]])
        } else {
            s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
        }
    };
    let mut b = DeltaComplexBuilder::new();
    let mut by_dim: Vec<&Vec<usize>> = simplices.iter().collect();
    by_dim.sort_by_key(|s| s.len());
    let mut vertices = BTreeSet::new();
    for s in by_dim {
        if s.len() == 1 {
            if vertices.insert(rep[s[0]]) {
                b.vertex(name(s));
            }
            continue;
        }
        let faces: Vec<String> = (0..s.len())
            .map(|i| {
                let mut t = s.clone();
                t.remove(i);
                name(&t)
            })
            .collect();
        b.simplex(name(s), faces);
    }
    b.build().unwrap()
}

/// A random chain of formal `j`-simplices, vertices given by arbitrary
/// nonempty faces of the carrier.
pub fn random_chain(rng: &mut impl Rng, k: &DeltaComplex, j: usize) -> Chain {
    let all: Vec<FaceRef> = k.all_simplices().collect();
    let mut c = Chain::zero(j);
    for _ in 0..rng.gen_range(1..=4) {
        let carrier = *all.choose(rng).unwrap();
        let subsets: Vec<FaceMask> = FaceMask::full(carrier.dim).nonempty_subsets().collect();
        let masks = (0..=j).map(|_| *subsets.choose(rng).unwrap()).collect();
        c.add_term(FormalSimplex::new(k, carrier, masks).unwrap(), coefficient(rng));
    }
    c
}

/// A random chain of native top-dimensional simplices.
pub fn random_native_chain(rng: &mut impl Rng, k: &DeltaComplex, j: usize) -> Chain {
    let tops: Vec<FaceRef> = k.simplices(j).collect();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=tops.len().max(1)) {
        terms.push((*tops.choose(rng).unwrap(), coefficient(rng)));
    }
    Chain::native(j, terms)
}

/// Strata from random vertex levels: a simplex belongs to the stratum named
/// by the set of levels of its vertices, so faces never lie above cofaces.
pub fn level_stratification(rng: &mut impl Rng, k: &DeltaComplex, levels: usize) -> Stratification {
    let level: BTreeMap<FaceRef, usize> = k.simplices(0).map(|v| (v, rng.gen_range(0..levels))).collect();
    Stratification::from_fn(k, |f| {
        let set: BTreeSet<usize> = k.vertices(f).iter().map(|v| level[v]).collect();
        Some(format!(
            "L{}",
            set.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("-")
        ))
    })
    .unwrap()
}

/// A random simplicial complex with every top simplex of dimension `dim`.
pub fn random_pure_complex(rng: &mut impl Rng, dim: usize) -> DeltaComplex {
    let n = rng.gen_range(dim + 1..=dim + 4);
    let mut facets = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=4) {
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        let mut f = vs[..=dim].to_vec();
        f.sort_unstable();
        facets.insert(f);
    }
    let labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    DeltaComplex::simplicial(&labels, &facets.into_iter().collect::<Vec<_>>()).unwrap()
}

/// A triangulated 2-sphere, oriented top simplices with signs: the
/// suspension of an `m`-gon with poles `N` (upper) and `S` (lower), after
/// random stellar subdivisions of upper triangles.
pub struct Sphere {
    pub labels: Vec<String>,
    /// `(vertices, sign, upper)`.
    pub facets: Vec<(Vec<usize>, i64, bool)>,
}

pub fn random_sphere(rng: &mut impl Rng) -> Sphere {
    let m = rng.gen_range(3..=6);
    let mut labels: Vec<String> = (0..m).map(|i| format!("e{i}")).collect();
    labels.push("N".into());
    labels.push("S".into());
    let (n, s) = (m, m + 1);
    let mut facets = Vec::new();
    for i in 0..m {
        let j = (i + 1) % m;
        facets.push((vec![n, i, j], 1, true));
        facets.push((vec![s, i, j], -1, false));
    }
    for _ in 0..rng.gen_range(0..=4) {
        let uppers: Vec<usize> = (0..facets.len()).filter(|&t| facets[t].2).collect();
        let t = *uppers.choose(rng).unwrap();
        let (f, sign, _) = facets.remove(t);
        let z = labels.len();
        labels.push(format!("i{z}"));
        for slot in 0..3 {
            let mut g = f.clone();
            g[slot] = z;
            facets.push((g, sign, true));
        }
    }
    Sphere { labels, facets }
}

impl Sphere {
    /// The complex together with its upper-hemisphere chain and fundamental
    /// cycle.
    pub fn complex(&self) -> (DeltaComplex, Chain, Chain) {
        let sorted: Vec<(Vec<usize>, i64)> = self
            .facets
            .iter()
            .map(|(f, sign, _)| {
                let mut g = f.clone();
                g.sort_unstable();
                let inversions = (0..3)
                    .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                    .filter(|&(a, b)| f[a] > f[b])
                    .count();
                (g, if inversions % 2 == 1 { -sign } else { *sign })
            })
            .collect();
        let k =
            DeltaComplex::simplicial(&self.labels, &sorted.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>()).unwrap();
        let term = |g: &Vec<usize>, sign: i64| {
            let id = g.iter().map(|&v| self.labels[v].as_str()).collect::<Vec<_>>().join("-");
            (k.resolve(&id).unwrap(), q(sign))
        };
        let upper = Chain::native(
            2,
            sorted
                .iter()
                .zip(&self.facets)
                .filter(|(_, f)| f.2)
                .map(|((g, s), _)| term(g, *s)),
        );
        let fundamental = Chain::native(2, sorted.iter().map(|(g, s)| term(g, *s)));
        (k, upper, fundamental)
    }
}

/// A localization problem on the subdivision of a random sphere: the upper
/// hemisphere carries random strata, the closed lower hemisphere is a single
/// stratum `A`, `c_rel` is the subdivided upper hemisphere and `h` the
/// subdivided fundamental cycle.
pub struct LocalizeCase {
    pub complex: DeltaComplex,
    pub strata: Stratification,
    pub a: Subcomplex,
    pub c_rel: Chain,
    pub h: Chain,
}

pub fn random_localize_case(rng: &mut impl Rng) -> LocalizeCase {
    let sphere = random_sphere(rng);
    let (k, upper, fundamental) = sphere.complex();
    let levels: BTreeMap<FaceRef, usize> = k
        .simplices(0)
        .map(|v| {
            let id = k.id(v);
            let level = if id == "N" || id.starts_with('i') {
                rng.gen_range(1..=3)
            } else {
                0
            };
            (v, level)
        })
        .collect();
    let coarse = Stratification::from_fn(&k, |f| {
        let set: BTreeSet<usize> = k.vertices(f).iter().map(|v| levels[v]).collect();
        if set.len() == 1 && set.contains(&0) {
            Some("base".to_string())
        } else {
            Some(format!(
                "L{}",
                set.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("-")
            ))
        }
    })
    .unwrap();
    let sd = barycentric_subdivide(&k);
    let strata = coarse.pull_back(&sd);
    let c_rel = sd.lift_chain(&k, &subdivide_chain(&k, &upper)).unwrap();
    let h = sd.lift_chain(&k, &subdivide_chain(&k, &fundamental)).unwrap();
    let complex = sd.into_complex();
    let a = Subcomplex::from_strata(&complex, &strata, &["base"]).unwrap();
    LocalizeCase {
        complex,
        strata,
        a,
        c_rel,
        h,
    }
}

/// A layered flow graph with random multiplicities between adjacent indices.
pub fn random_flow(rng: &mut impl Rng) -> FlowGraph {
    let n = rng.gen_range(0..=4);
    let mut g = FlowGraph::new(n);
    let mut layers: Vec<Vec<String>> = Vec::new();
    for i in 0..=n {
        let names: Vec<String> = (0..rng.gen_range(0..=3)).map(|t| format!("x{i}_{t}")).collect();
        for name in &names {
            g.add_point(name.clone(), i).unwrap();
        }
        layers.push(names);
    }
    for i in 1..=n {
        for from in &layers[i] {
            for to in &layers[i - 1] {
                let m = rng.gen_range(0..=3);
                if m > 0 {
                    g.add_edge(from, to, m).unwrap();
                }
            }
        }
    }
    g
}

/// A random poset on up to eight elements with random labels from a small
/// alphabet; relations follow a random linear extension.
pub fn random_poset(rng: &mut impl Rng) -> Poset {
    let n = rng.gen_range(0..=8);
    let elements = (0..n)
        .map(|i| {
            let e = Element::new(format!("e{i}"));
            if rng.gen_bool(0.8) {
                e.label(format!("l{}", rng.gen_range(0..3)))
            } else {
                e
            }
        })
        .collect();
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.35) {
                relations.push((format!("e{a}"), format!("e{b}")));
            }
        }
    }
    Poset::new(elements, &relations).unwrap()
}
