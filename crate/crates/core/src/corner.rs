//! The corner `[0,∞)ⁿ`, triangulated near the origin by the unit cube.
//!
//! Strata are the coordinate-zero patterns: the open stratum `Z` consists of
//! the points whose vanishing coordinates are exactly `Z`. Triangulations are
//! linear, so the zero pattern of an open simplex is the intersection of the
//! zero patterns of its vertices.
//!
//! After one barycentric subdivision, essential top simplices correspond
//! bijectively to totally ordered chains of `n + 1` strata;
//! [`bijection_report`] checks this by brute force.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigUint, ToPrimitive};

use crate::complex::{barycentric_subdivide, subdivide_chain, Chain, DeltaComplex, FormalSimplex};
use crate::strat::{Stratification, StratumId};
use crate::stratified::essential_part;
use crate::{Error, Rational, Result};

pub const MAX_DIM: usize = 5;

/// A linear triangulation of `[0,1]ⁿ` by oriented top simplices, each vertex
/// carrying its set of vanishing coordinates (bit `i` for coordinate `i+1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeTriangulation {
    n: usize,
    labels: Vec<String>,
    zeros: Vec<u32>,
    /// Positively oriented top simplices.
    facets: Vec<Vec<usize>>,
}

fn zero_name(n: usize, zeros: u32) -> String {
    if zeros == 0 {
        return "interior".into();
    }
    let coords: Vec<String> = (0..n)
        .filter(|i| zeros & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("zero-{}", coords.join("-"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_odd(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

impl CubeTriangulation {
    /// The `n!` simplices `x_{π(1)} ≥ … ≥ x_{π(n)}`, with vertices
    /// `0, e_{π(1)}, e_{π(1)} + e_{π(2)}, …`.
    pub fn freudenthal(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::CornerDimension(n));
        }
        let full = (1u32 << n) - 1;
        let labels = (0..1u32 << n)
            .map(|v| {
                let digits: String = (0..n).map(|i| if v & (1 << i) != 0 { '1' } else { '0' }).collect();
                format!("p{digits}")
            })
            .collect();
        let zeros = (0..1u32 << n).map(|v| full & !v).collect();
        let mut facets = Vec::new();
        for p in permutations(n) {
            let mut v = 0usize;
            let mut facet = vec![0];
            for &i in &p {
                v |= 1 << i;
                facet.push(v);
            }
            // det(e_{π(1)}, e_{π(1)} + e_{π(2)}, …) = sign(π)
            if is_odd(&p) {
                facet.swap(0, 1);
            }
            facets.push(facet);
        }
        Ok(Self {
            n,
            labels,
            zeros,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Coordinates vanishing on the open simplex spanned by `vertices`.
    pub fn zero_set(&self, vertices: &[usize]) -> u32 {
        vertices
            .iter()
            .fold(u32::MAX >> (32 - self.n), |z, &v| z & self.zeros[v])
    }

    /// Stellar subdivision at the barycenter of the face spanned by `face`,
    /// which must be a face of some top simplex.
    pub fn stellar_subdivide(&mut self, face: &[usize]) {
        let new = self.labels.len();
        self.labels.push(format!("b{}", new));
        self.zeros.push(self.zero_set(face));
        let mut facets = Vec::with_capacity(self.facets.len() + face.len());
        for f in &self.facets {
            if face.iter().all(|v| f.contains(v)) {
                for v in face {
                    facets.push(f.iter().map(|&u| if u == *v { new } else { u }).collect());
                }
            } else {
                facets.push(f.clone());
            }
        }
        self.facets = facets;
    }

    /// The stratified complex with its fundamental chain relative to the
    /// boundary of the cube.
    pub fn corner(&self) -> CornerComplex {
        let mut sorted_facets = Vec::with_capacity(self.facets.len());
        let mut signs = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let mut order: Vec<usize> = (0..f.len()).collect();
            order.sort_by_key(|&i| f[i]);
            signs.push(if is_odd(&order) { -1 } else { 1 });
            sorted_facets.push(order.iter().map(|&i| f[i]).collect::<Vec<_>>());
        }
        let complex = DeltaComplex::simplicial(&self.labels, &sorted_facets).expect("triangulation facets are valid");
        let by_label: HashMap<&str, usize> = self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let strata = Stratification::from_fn(&complex, |s| {
            let vertices: Vec<usize> = complex
                .vertices(s)
                .into_iter()
                .map(|v| by_label[complex.id(v)])
                .collect();
            Some(zero_name(self.n, self.zero_set(&vertices)))
        })
        .expect("zero patterns form a stratification");
        let name = |f: &Vec<usize>| f.iter().map(|&v| self.labels[v].as_str()).collect::<Vec<_>>().join("-");
        let fundamental = Chain::native(
            self.n,
            sorted_facets.iter().zip(signs).map(|(f, s)| {
                (
                    complex.resolve(&name(f)).expect("facet"),
                    Rational::from_integer(s.into()),
                )
            }),
        );
        CornerComplex {
            n: self.n,
            complex,
            strata,
            fundamental,
        }
    }
}

/// A triangulated, stratified neighborhood of the corner point.
#[derive(Clone, Debug)]
pub struct CornerComplex {
    pub n: usize,
    pub complex: DeltaComplex,
    pub strata: Stratification,
    /// Sum of the positively oriented top simplices.
    pub fundamental: Chain,
}

pub fn build_corner(n: usize) -> Result<CornerComplex> {
    Ok(CubeTriangulation::freudenthal(n)?.corner())
}

/// Outcome of the essential-simplex / strata-chain comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub n: usize,
    pub subdivided_simplices: usize,
    pub essential_count: usize,
    pub chain_count: BigUint,
    /// Every essential simplex has vertices in a totally ordered chain.
    pub images_are_chains: bool,
    pub injective: bool,
    pub surjective: bool,
    /// Each essential simplex with its vertex strata, from the top stratum
    /// down.
    pub pairs: Vec<(FormalSimplex, Vec<StratumId>)>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.images_are_chains
            && self.injective
            && self.surjective
            && self.chain_count.to_usize() == Some(self.essential_count)
    }
}

/// Subdivides the fundamental chain once and compares its essential top
/// simplices with the chains of `n + 1` strata.
pub fn bijection_report(corner: &CornerComplex) -> Result<BijectionReport> {
    let k = &corner.complex;
    let strat = &corner.strata;
    let n = corner.n;
    let c2 = subdivide_chain(k, &corner.fundamental);
    let subdivided_simplices = barycentric_subdivide(k).complex().count(n);
    let essential = essential_part(k, &c2, strat);

    let mut pairs = Vec::new();
    let mut images_are_chains = true;
    let mut seen: BTreeMap<BTreeSet<StratumId>, usize> = BTreeMap::new();
    let mut injective = true;
    for s in essential.simplices() {
        let mut strata: Vec<StratumId> = s.vertex_faces(k).into_iter().map(|f| strat.stratum(f)).collect();
        strata.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if strat.leq(a, b) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            }
        });
        let set: BTreeSet<StratumId> = strata.iter().copied().collect();
        if set.len() != n + 1 || strata.windows(2).any(|w| !strat.leq(w[1], w[0])) {
            images_are_chains = false;
        }
        *seen.entry(set).or_default() += 1;
        pairs.push((s.clone(), strata));
    }
    if seen.values().any(|&m| m > 1) {
        injective = false;
    }

    let poset = strat.poset();
    let chain_count = poset.count_chains(n + 1, false);
    let chains: BTreeSet<BTreeSet<StratumId>> = poset
        .chains(n + 1)
        .into_iter()
        .map(|c| c.into_iter().map(|name| strat.id_of(name).expect("stratum")).collect())
        .collect();
    let surjective = chains.iter().all(|c| seen.contains_key(c));

    Ok(BijectionReport {
        n,
        subdivided_simplices,
        essential_count: essential.len(),
        chain_count,
        images_are_chains,
        injective,
        surjective,
        pairs,
    })
}

pub fn verify_corner_bijection(n: usize) -> Result<BijectionReport> {
    bijection_report(&build_corner(n)?)
}
