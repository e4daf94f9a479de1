use std::collections::HashMap;

use super::Subcomplex;
use crate::complex::{boundary, Chain, DeltaComplex, DeltaComplexBuilder, FaceMask, FaceRef, FormalSimplex};
use crate::{Error, Rational, Result};

/// The complex `Σ` of a chain: one standard simplex per term, with
/// codimension-1 faces glued whenever their face maps coincide.
#[derive(Clone, Debug)]
pub struct SigmaComplex {
    complex: DeltaComplex,
    terms: Vec<(FormalSimplex, Rational)>,
    images: Vec<Vec<FormalSimplex>>,
    /// Σ-vertex of each vertex slot of each top simplex.
    slots: Vec<Vec<usize>>,
}

impl SigmaComplex {
    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    /// Chain terms in the order of the top simplices of `Σ`.
    pub fn terms(&self) -> &[(FormalSimplex, Rational)] {
        &self.terms
    }

    /// The top simplex of `Σ` for term `t`.
    pub fn top(&self, t: usize) -> FaceRef {
        FaceRef::new(self.terms[t].0.dim(), t)
    }

    /// Image of a simplex of `Σ` in the stratified complex.
    pub fn image(&self, f: FaceRef) -> &FormalSimplex {
        &self.images[f.dim][f.index]
    }

    /// Simplex of the stratified complex whose barycenter is the image of
    /// the Σ-vertex `v`.
    pub fn vertex_point(&self, v: usize) -> FaceRef {
        self.images[0][v].carrier()
    }

    pub fn vertex_count(&self) -> usize {
        self.images.first().map_or(0, Vec::len)
    }

    /// Σ-vertex at vertex slot `slot` of term `t`.
    pub fn slot_vertex(&self, t: usize, slot: usize) -> usize {
        self.slots[t][slot]
    }

    /// The simplicial chain `c_Σ`.
    pub fn cycle(&self) -> Chain {
        let dim = self.terms.first().map_or(0, |(s, _)| s.dim());
        Chain::native(
            dim,
            self.terms
                .iter()
                .enumerate()
                .map(|(t, (_, r))| (FaceRef::new(dim, t), r.clone())),
        )
    }

    /// Edges of `Σ` whose two endpoints are the same Σ-vertex.
    pub fn self_loops(&self) -> Vec<FaceRef> {
        self.complex
            .simplices(1)
            .filter(|&e| self.complex.face(e, 0) == self.complex.face(e, 1))
            .collect()
    }
}

/// Σ of a cycle.
pub fn sigma_construction(k: &DeltaComplex, c: &Chain) -> Result<SigmaComplex> {
    check_boundary(k, c, |_| false)?;
    Ok(build_sigma(k, c))
}

/// Σ of a relative cycle: faces of `∂c` must lie in `a`, and stay unglued.
pub fn sigma_construction_relative(k: &DeltaComplex, c: &Chain, a: &Subcomplex) -> Result<SigmaComplex> {
    check_boundary(k, c, |f| a.contains(f))?;
    Ok(build_sigma(k, c))
}

fn check_boundary(k: &DeltaComplex, c: &Chain, allowed: impl Fn(FaceRef) -> bool) -> Result<()> {
    if c.dim() == 0 {
        return Ok(());
    }
    let d = boundary(k, c)?;
    let outside = d.simplices().find(|s| !allowed(s.carrier())).map(|s| s.carrier());
    match outside {
        Some(f) => Err(Error::NotACycle(k.id(f).to_string())),
        None => Ok(()),
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(p, a), find(p, b));
    if a != b {
        p[a.max(b)] = a.min(b);
    }
}

/// Σ without any check on the boundary of `c`.
pub(crate) fn build_sigma(k: &DeltaComplex, c: &Chain) -> SigmaComplex {
    let terms: Vec<(FormalSimplex, Rational)> = c.iter().map(|(s, r)| (s.clone(), r.clone())).collect();
    let j = c.dim();
    let width = 1usize << (j + 1);
    let full = FaceMask::full(j);
    let occurrence = |t: usize, q: FaceMask| t * width + q.bits() as usize;
    let mut parent: Vec<usize> = (0..terms.len() * width).collect();

    if j > 0 {
        let mut groups: HashMap<FormalSimplex, Vec<(usize, usize)>> = HashMap::new();
        for (t, (s, _)) in terms.iter().enumerate() {
            for i in 0..=j {
                groups.entry(s.face(k, i)).or_default().push((t, i));
            }
        }
        let sub = FaceMask::full(j - 1);
        for members in groups.values() {
            let (t0, i0) = members[0];
            for &(t, i) in &members[1..] {
                for r in sub.nonempty_subsets() {
                    union(
                        &mut parent,
                        occurrence(t0, r.expand(full.without(i0))),
                        occurrence(t, r.expand(full.without(i))),
                    );
                }
            }
        }
    }

    // Number the classes per dimension in order of first occurrence.
    let mut class_index: HashMap<usize, FaceRef> = HashMap::new();
    let mut images: Vec<Vec<FormalSimplex>> = vec![Vec::new(); j + 1];
    let mut representative: Vec<Vec<(usize, FaceMask)>> = vec![Vec::new(); j + 1];
    let mut order: Vec<(usize, FaceMask)> = Vec::new();
    for t in 0..terms.len() {
        for q in full.nonempty_subsets() {
            order.push((t, q));
        }
    }
    // Top simplices first so that top simplex `t` has index `t`.
    order.sort_by_key(|&(t, q)| (std::cmp::Reverse(q.len()), t, q));
    for (t, q) in order {
        let root = find(&mut parent, occurrence(t, q));
        if class_index.contains_key(&root) {
            continue;
        }
        let d = q.len() - 1;
        class_index.insert(root, FaceRef::new(d, images[d].len()));
        let s = &terms[t].0;
        let masks = q.positions().map(|p| s.vertex_masks()[p]).collect();
        images[d].push(FormalSimplex::new(k, s.carrier(), masks).expect("sub-face of a formal simplex"));
        representative[d].push((t, q));
    }

    let name = |f: FaceRef| format!("g{}-{}", f.dim, f.index);
    let mut builder = DeltaComplexBuilder::new();
    for (d, reps) in representative.iter().enumerate() {
        for (index, &(t, q)) in reps.iter().enumerate() {
            let f = FaceRef::new(d, index);
            if d == 0 {
                builder.vertex(name(f));
                continue;
            }
            let faces: Vec<String> = (0..=d)
                .map(|i| {
                    let face_q = q.without(q.nth(i).expect("position in range"));
                    name(class_index[&find(&mut parent, occurrence(t, face_q))])
                })
                .collect();
            builder.simplex(name(f), faces);
        }
    }
    let complex = builder.build().expect("gluing along equal face maps is consistent");

    let slots = (0..terms.len())
        .map(|t| {
            (0..=j)
                .map(|p| class_index[&find(&mut parent, occurrence(t, FaceMask::singleton(p)))].index)
                .collect()
        })
        .collect();

    SigmaComplex {
        complex,
        terms,
        images,
        slots,
    }
}
