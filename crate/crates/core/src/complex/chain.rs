//! Formal simplices, rational chains and the three chain operators: the
//! boundary `∂`, the subdivision operator `sd` and the homotopy `T` with
//! `∂T + T∂ = sd − id`.
//!
//! A formal simplex is an affine simplex inside the characteristic simplex of
//! a carrier, whose vertices are barycenters of faces of the carrier. Each
//! vertex is stored as a [`FaceMask`] of carrier positions; the carrier is
//! kept canonical (the union of the vertex masks is the whole carrier), which
//! makes equality of formal simplices equality of the underlying singular
//! simplices. Vertex [`FaceRef`]s alone would not do: in a Δ-complex with
//! identifications the same face can occur at several positions.
//!
//! `sd` and `T` are computed in the model simplex of the carrier with the
//! cone construction, coning from the barycenter of the carrier of each
//! simplex, and then pushed forward. On native simplices this is the first
//! barycentric subdivision.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Neg, Sub};

use num::{Signed, Zero};

use super::{DeltaComplex, FaceMask, FaceRef};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSimplex {
    carrier: FaceRef,
    vertices: Vec<FaceMask>,
}

impl FormalSimplex {
    /// Validates the masks against `carrier` and canonicalizes.
    pub fn new(k: &DeltaComplex, carrier: FaceRef, vertices: Vec<FaceMask>) -> Result<Self> {
        if !k.contains(carrier) {
            return Err(Error::InvalidSimplex(format!("carrier {carrier} not in complex")));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("no vertices".into()));
        }
        let full = FaceMask::full(carrier.dim);
        if let Some(m) = vertices.iter().find(|m| m.is_empty() || !m.is_subset(full)) {
            return Err(Error::InvalidSimplex(format!(
                "vertex mask {{{m}}} is not a face of `{}`",
                k.id(carrier)
            )));
        }
        Ok(Self::canonical(k, carrier, vertices))
    }

    /// The simplex itself: its vertices in order, carried by itself.
    pub fn embed(f: FaceRef) -> Self {
        Self {
            carrier: f,
            vertices: (0..=f.dim).map(FaceMask::singleton).collect(),
        }
    }

    pub(crate) fn canonical(k: &DeltaComplex, carrier: FaceRef, mut vertices: Vec<FaceMask>) -> Self {
        let span = vertices.iter().fold(FaceMask::EMPTY, |a, &m| a.union(m));
        if span == FaceMask::full(carrier.dim) {
            return Self { carrier, vertices };
        }
        for m in &mut vertices {
            *m = m.compress(span);
        }
        Self {
            carrier: k.face_of(carrier, span),
            vertices,
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Smallest simplex of the complex containing the image; the open
    /// simplex contains the image of the interior.
    pub fn carrier(&self) -> FaceRef {
        self.carrier
    }

    pub fn vertex_masks(&self) -> &[FaceMask] {
        &self.vertices
    }

    pub fn vertex_face(&self, k: &DeltaComplex, i: usize) -> FaceRef {
        k.face_of(self.carrier, self.vertices[i])
    }

    pub fn vertex_faces(&self, k: &DeltaComplex) -> Vec<FaceRef> {
        (0..self.vertices.len()).map(|i| self.vertex_face(k, i)).collect()
    }

    /// The `i`-th face, vertex `i` omitted.
    pub fn face(&self, k: &DeltaComplex, i: usize) -> Self {
        let mut v = self.vertices.clone();
        v.remove(i);
        Self::canonical(k, self.carrier, v)
    }

    /// Open cell containing the interior of the face spanned by the vertex
    /// slots in `slots`.
    pub fn face_cell(&self, k: &DeltaComplex, slots: FaceMask) -> FaceRef {
        let span = slots
            .positions()
            .fold(FaceMask::EMPTY, |a, i| a.union(self.vertices[i]));
        k.face_of(self.carrier, span)
    }

    /// True when this is the characteristic simplex of its carrier.
    pub fn is_native(&self) -> bool {
        self.dim() == self.carrier.dim
            && self
                .vertices
                .iter()
                .enumerate()
                .all(|(i, &m)| m == FaceMask::singleton(i))
    }

    /// Two vertices at the same point.
    pub fn is_degenerate(&self) -> bool {
        (0..self.vertices.len()).any(|i| (i + 1..self.vertices.len()).any(|j| self.vertices[i] == self.vertices[j]))
    }
}

/// A finite rational combination of formal simplices of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<FormalSimplex, Rational>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Chain of native simplices.
    pub fn native(dim: usize, terms: impl IntoIterator<Item = (FaceRef, Rational)>) -> Self {
        let mut c = Self::zero(dim);
        for (f, r) in terms {
            c.add_term(FormalSimplex::embed(f), r);
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `r·s`, dropping the term if the coefficient cancels.
    ///
    /// Panics if `s` has the wrong dimension.
    pub fn add_term(&mut self, s: FormalSimplex, r: Rational) {
        assert_eq!(s.dim(), self.dim, "term dimension");
        if r.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += r;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FormalSimplex, &Rational)> {
        self.terms.iter()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &FormalSimplex> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &FormalSimplex) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        let mut c = Self::zero(self.dim);
        for (s, q) in &self.terms {
            c.add_term(s.clone(), q * r);
        }
        c
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.values().map(|r| r.abs()).sum()
    }

    /// Terms satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&FormalSimplex) -> bool) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, r)| (s.clone(), r.clone()))
                .collect(),
        }
    }
}

impl AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        for (s, r) in &rhs.terms {
            self.add_term(s.clone(), r.clone());
        }
    }
}

impl Add<&Chain> for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        let mut c = self.clone();
        c += rhs;
        c
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        Chain {
            dim: self.dim,
            terms: self.terms.iter().map(|(s, r)| (s.clone(), -r)).collect(),
        }
    }
}

impl Sub<&Chain> for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        self + &(-rhs)
    }
}

pub fn boundary(k: &DeltaComplex, c: &Chain) -> Result<Chain> {
    if c.dim == 0 {
        return Err(Error::BoundaryOfPoint);
    }
    let mut out = Chain::zero(c.dim - 1);
    for (s, r) in &c.terms {
        for i in 0..=c.dim {
            let face = s.face(k, i);
            out.add_term(face, if i % 2 == 0 { r.clone() } else { -r.clone() });
        }
    }
    Ok(out)
}

/// Chain operator `sd`: identity on points, `sd(s) = b_s · sd(∂s)` above.
pub fn subdivide_chain(k: &DeltaComplex, c: &Chain) -> Chain {
    push_forward(k, c, c.dim, model_sd)
}

/// Chain homotopy `T` with `T = 0` on points and `∂T + T∂ = sd − id`.
/// Degenerate output simplices are kept.
pub fn subdivision_homotopy(k: &DeltaComplex, c: &Chain) -> Chain {
    push_forward(k, c, c.dim + 1, model_homotopy)
}

type ModelChain = HashMap<Vec<FaceMask>, i64>;

fn push_forward(k: &DeltaComplex, c: &Chain, out_dim: usize, op: fn(&[FaceMask]) -> ModelChain) -> Chain {
    let mut out = Chain::zero(out_dim);
    for (s, r) in &c.terms {
        let mut model: Vec<_> = op(&s.vertices).into_iter().collect();
        model.sort();
        for (vs, n) in model {
            out.add_term(
                FormalSimplex::canonical(k, s.carrier, vs),
                r * Rational::from_integer(n.into()),
            );
        }
    }
    out
}

fn add_model(acc: &mut ModelChain, vs: Vec<FaceMask>, n: i64) {
    if n == 0 {
        return;
    }
    match acc.entry(vs) {
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(n);
        }
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += n;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

/// Prepends the apex `b` to every simplex.
fn cone(b: FaceMask, x: ModelChain) -> ModelChain {
    let mut out = ModelChain::new();
    for (vs, n) in x {
        let mut w = Vec::with_capacity(vs.len() + 1);
        w.push(b);
        w.extend(vs);
        add_model(&mut out, w, n);
    }
    out
}

fn span(vs: &[FaceMask]) -> FaceMask {
    vs.iter().fold(FaceMask::EMPTY, |a, &m| a.union(m))
}

fn model_sd(vs: &[FaceMask]) -> ModelChain {
    if vs.len() == 1 {
        return ModelChain::from([(vs.to_vec(), 1)]);
    }
    let mut faces = ModelChain::new();
    for i in 0..vs.len() {
        let mut f = vs.to_vec();
        f.remove(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (w, n) in model_sd(&f) {
            add_model(&mut faces, w, sign * n);
        }
    }
    cone(span(vs), faces)
}

fn model_homotopy(vs: &[FaceMask]) -> ModelChain {
    if vs.len() == 1 {
        return ModelChain::new();
    }
    // T(s) = −b_s · (s + T(∂s))
    let mut x = ModelChain::from([(vs.to_vec(), 1)]);
    for i in 0..vs.len() {
        let mut f = vs.to_vec();
        f.remove(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (w, n) in model_homotopy(&f) {
            add_model(&mut x, w, sign * n);
        }
    }
    cone(span(vs), x).into_iter().map(|(w, n)| (w, -n)).collect()
}
