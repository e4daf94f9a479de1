//! Δ-complexes and the chain layer built on top of them.
//!
//! A [`DeltaComplex`] stores, per dimension, an indexed list of simplices;
//! every simplex of dimension `d ≥ 1` lists its `d + 1` faces in the standard
//! omit-vertex-`i` order. Faces may be identified arbitrarily (self-loops,
//! several faces of one simplex glued to the same lower simplex), subject to
//! the simplicial face identities.

mod chain;
mod mask;
mod subdivide;
mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use chain::{boundary, subdivide_chain, subdivision_homotopy, Chain, FormalSimplex};
pub use mask::FaceMask;
pub use subdivide::{barycentric_subdivide, Subdivision};
pub use text::{parse_chain, parse_complex, write_chain, write_complex, ComplexFile};

use crate::{Error, Result};

/// A simplex of a [`DeltaComplex`], viewed as a point of its face poset
/// (geometrically: the barycenter of the open simplex).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub dim: usize,
    pub index: usize,
}

impl FaceRef {
    pub fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell {
    id: String,
    faces: Vec<usize>,
}

/// A finite Δ-complex with ordered face identifications.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DeltaComplex {
    cells: Vec<Vec<Cell>>,
    ids: HashMap<String, FaceRef>,
}

impl DeltaComplex {
    /// Highest dimension carrying a simplex, `None` for the empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        self.cells.iter().rposition(|c| !c.is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    pub fn total_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Simplices of dimension `dim` in index order.
    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = FaceRef> + '_ {
        (0..self.count(dim)).map(move |index| FaceRef { dim, index })
    }

    /// Every simplex, by increasing dimension then index.
    pub fn all_simplices(&self) -> impl Iterator<Item = FaceRef> + '_ {
        (0..self.cells.len()).flat_map(move |d| self.simplices(d))
    }

    pub fn id(&self, f: FaceRef) -> &str {
        &self.cells[f.dim][f.index].id
    }

    pub fn lookup(&self, id: &str) -> Option<FaceRef> {
        self.ids.get(id).copied()
    }

    pub fn resolve(&self, id: &str) -> Result<FaceRef> {
        self.lookup(id).ok_or_else(|| Error::UnknownSimplex(id.to_string()))
    }

    pub fn contains(&self, f: FaceRef) -> bool {
        f.index < self.count(f.dim)
    }

    /// The `i`-th face (vertex `i` omitted).
    pub fn face(&self, f: FaceRef, i: usize) -> FaceRef {
        assert!(f.dim >= 1 && i <= f.dim, "face {i} of a {}-simplex", f.dim);
        FaceRef::new(f.dim - 1, self.cells[f.dim][f.index].faces[i])
    }

    /// The face of `f` spanned by the vertex positions in `mask`.
    pub fn face_of(&self, f: FaceRef, mask: FaceMask) -> FaceRef {
        debug_assert!(!mask.is_empty() && mask.is_subset(FaceMask::full(f.dim)));
        let mut cur = f;
        for k in (0..=f.dim).rev() {
            if !mask.contains(k) {
                cur = self.face(cur, k);
            }
        }
        cur
    }

    pub fn vertex(&self, f: FaceRef, k: usize) -> FaceRef {
        self.face_of(f, FaceMask::singleton(k))
    }

    pub fn vertices(&self, f: FaceRef) -> Vec<FaceRef> {
        (0..=f.dim).map(|k| self.vertex(f, k)).collect()
    }

    /// All proper iterated faces of `f`, without repetition.
    pub fn iterated_faces(&self, f: FaceRef) -> BTreeSet<FaceRef> {
        let full = FaceMask::full(f.dim);
        full.nonempty_subsets()
            .filter(|&m| m != full)
            .map(|m| self.face_of(f, m))
            .collect()
    }

    /// Vertex positions `m` of `f` whose face is `target`.
    pub fn face_positions(&self, f: FaceRef, target: FaceRef) -> Vec<FaceMask> {
        FaceMask::full(f.dim)
            .nonempty_subsets()
            .filter(|m| m.len() == target.dim + 1 && self.face_of(f, *m) == target)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| if d % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// Builds a simplicial complex from vertex labels and facets given as
    /// vertex-index lists. Each simplex lists its vertices in increasing index
    /// order; simplex ids join the vertex labels with `-`.
    pub fn simplicial<S: AsRef<str>>(labels: &[S], facets: &[Vec<usize>]) -> Result<Self> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            if f.len() != facet.len() {
                return Err(Error::InvalidSimplex(format!("repeated vertex in facet {facet:?}")));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= labels.len()) {
                return Err(Error::InvalidSimplex(format!("vertex index {v} out of range")));
            }
            let full = FaceMask::full(f.len() - 1);
            for m in full.nonempty_subsets() {
                seen.insert(m.positions().map(|k| f[k]).collect());
            }
        }
        let name = |s: &[usize]| s.iter().map(|&v| labels[v].as_ref()).collect::<Vec<_>>().join("-");
        let mut builder = DeltaComplexBuilder::new();
        for s in &seen {
            if s.len() == 1 {
                builder.vertex(name(s));
            } else {
                let faces: Vec<String> = (0..s.len())
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        name(&t)
                    })
                    .collect();
                builder.simplex(name(s), faces);
            }
        }
        builder.build()
    }
}

/// Incremental construction of a [`DeltaComplex`] from identifiers; face
/// references are resolved and validated in [`DeltaComplexBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct DeltaComplexBuilder {
    entries: Vec<(String, Vec<String>)>,
}

impl DeltaComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.entries.push((id.into(), Vec::new()));
        self
    }

    /// Adds a simplex of dimension `faces.len() - 1`.
    pub fn simplex<S: Into<String>>(&mut self, id: impl Into<String>, faces: Vec<S>) -> &mut Self {
        self.entries
            .push((id.into(), faces.into_iter().map(Into::into).collect()));
        self
    }

    pub fn build(&self) -> Result<DeltaComplex> {
        let mut dims: HashMap<&str, (usize, usize)> = HashMap::new();
        let mut per_dim: Vec<Vec<usize>> = Vec::new();
        for (n, (id, faces)) in self.entries.iter().enumerate() {
            let d = faces.len().saturating_sub(1);
            if faces.len() == 1 {
                return Err(Error::InvalidSimplex(format!("`{id}` lists a single face")));
            }
            if per_dim.len() <= d {
                per_dim.resize(d + 1, Vec::new());
            }
            if dims.insert(id.as_str(), (d, per_dim[d].len())).is_some() {
                return Err(Error::DuplicateId(id.clone()));
            }
            per_dim[d].push(n);
        }

        let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); per_dim.len()];
        let mut ids = HashMap::new();
        for (d, entries) in per_dim.iter().enumerate() {
            for &n in entries {
                let (id, faces) = &self.entries[n];
                let mut resolved = Vec::with_capacity(faces.len());
                for face in faces {
                    let &(fd, fi) = dims
                        .get(face.as_str())
                        .ok_or_else(|| Error::UnknownSimplex(face.clone()))?;
                    if fd + 1 != d {
                        return Err(Error::FaceDimension {
                            id: id.clone(),
                            face: face.clone(),
                            found: fd,
                            expected: d - 1,
                        });
                    }
                    resolved.push(fi);
                }
                ids.insert(id.clone(), FaceRef::new(d, cells[d].len()));
                cells[d].push(Cell {
                    id: id.clone(),
                    faces: resolved,
                });
            }
        }
        let complex = DeltaComplex { cells, ids };
        complex.check_face_identities()?;
        Ok(complex)
    }
}

impl DeltaComplex {
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    fn check_face_identities(&self) -> Result<()> {
        for d in 2..self.cells.len() {
            for f in self.simplices(d) {
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.face(self.face(f, j), i);
                        let rhs = self.face(self.face(f, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::FaceIdentity {
                                id: self.id(f).to_string(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn torus() -> DeltaComplex {
        let mut b = DeltaComplexBuilder::new();
        b.vertex("v")
            .simplex("a", vec!["v", "v"])
            .simplex("b", vec!["v", "v"])
            .simplex("c", vec!["v", "v"])
            .simplex("U", vec!["a", "c", "b"])
            .simplex("L", vec!["b", "c", "a"]);
        b.build().unwrap()
    }

    #[test]
    fn single_triangle() {
        let k = DeltaComplex::simplicial(&["x", "y", "z"], &[vec![0, 1, 2]]).unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (3, 3, 1));
        assert_eq!(k.euler_characteristic(), 1);
        let t = k.resolve("x-y-z").unwrap();
        let names: Vec<_> = k.vertices(t).into_iter().map(|v| k.id(v)).collect();
        assert_eq!(names, ["x", "y", "z"]);
        assert_eq!(k.id(k.face(t, 0)), "y-z");
        assert_eq!(k.id(k.face(t, 1)), "x-z");
        assert_eq!(k.id(k.face_of(t, FaceMask::from_positions([0, 2]))), "x-z");
    }

    #[test]
    fn two_triangle_torus() {
        let k = torus();
        assert_eq!(k.euler_characteristic(), 0);
        let u = k.resolve("U").unwrap();
        let v = k.resolve("v").unwrap();
        assert_eq!(k.vertices(u), vec![v, v, v]);
        assert_eq!(k.face_positions(u, v).len(), 3);
        assert_eq!(k.iterated_faces(u).len(), 4);
    }

    #[test]
    fn edge_face_must_be_vertex() {
        let mut b = DeltaComplexBuilder::new();
        b.vertex("x")
            .vertex("y")
            .vertex("z")
            .simplex("e", vec!["x", "y"])
            .simplex("f", vec!["y", "z"])
            .simplex("t", vec!["e", "x", "f"]);
        assert!(matches!(b.build(), Err(Error::FaceDimension { .. })));
    }

    #[test]
    fn dangling_face() {
        let mut b = DeltaComplexBuilder::new();
        b.vertex("x").simplex("e", vec!["x", "w"]);
        assert_eq!(b.build(), Err(Error::UnknownSimplex("w".into())));
    }

    #[test]
    fn face_identity_violation() {
        // Edges form a triangle but the 2-simplex lists them in an order
        // whose shared vertices disagree.
        let mut b = DeltaComplexBuilder::new();
        b.vertex("x")
            .vertex("y")
            .vertex("z")
            .simplex("xy", vec!["y", "x"])
            .simplex("xz", vec!["z", "x"])
            .simplex("yz", vec!["z", "y"])
            .simplex("t", vec!["xy", "xz", "yz"]);
        assert!(matches!(b.build(), Err(Error::FaceIdentity { .. })));
    }
}
