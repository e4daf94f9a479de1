use std::collections::HashMap;

use super::{Chain, DeltaComplex, DeltaComplexBuilder, FaceMask, FaceRef, FormalSimplex};
use crate::{Error, Result};

/// The first barycentric subdivision of a complex `K`, together with the
/// correspondence between its simplices and flags of faces of `K`.
///
/// A `d`-simplex of the subdivision is a strict flag `F₀ ⊋ F₁ ⊋ … ⊋ F_d` of
/// faces of one simplex `τ` of `K` with `F₀ = τ`, listed from the largest
/// face down. Vertices keep the identifiers of the faces of `K` they are the
/// barycenters of.
#[derive(Clone, Debug)]
pub struct Subdivision {
    complex: DeltaComplex,
    flags: Vec<Vec<FormalSimplex>>,
    index: HashMap<FormalSimplex, FaceRef>,
}

impl Subdivision {
    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn into_complex(self) -> DeltaComplex {
        self.complex
    }

    /// The flag of `K` underlying a simplex of the subdivision.
    pub fn flag(&self, s: FaceRef) -> &FormalSimplex {
        &self.flags[s.dim][s.index]
    }

    /// Smallest simplex of `K` containing `s`.
    pub fn carrier(&self, s: FaceRef) -> FaceRef {
        self.flag(s).carrier()
    }

    /// The simplex of the subdivision spanned by a flag in descending order.
    pub fn simplex_of(&self, flag: &FormalSimplex) -> Option<FaceRef> {
        self.index.get(flag).copied()
    }

    /// Rewrites a chain of flag simplices of `K`, with vertices in any order,
    /// as a chain of native simplices of the subdivision.
    pub fn lift_chain(&self, k: &DeltaComplex, c: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(c.dim());
        for (s, r) in c.iter() {
            let mut order: Vec<usize> = (0..=s.dim()).collect();
            let masks = s.vertex_masks();
            order.sort_by_key(|&i| std::cmp::Reverse(masks[i].len()));
            let sorted: Vec<FaceMask> = order.iter().map(|&i| masks[i]).collect();
            let not_flag = || {
                Error::InvalidSimplex(format!(
                    "simplex on `{}` with vertices {} is not a flag",
                    k.id(s.carrier()),
                    masks.iter().map(|m| format!("{{{m}}}")).collect::<Vec<_>>().join(" ")
                ))
            };
            if sorted.windows(2).any(|w| w[1] == w[0] || !w[1].is_subset(w[0])) {
                return Err(not_flag());
            }
            let flag = FormalSimplex::new(k, s.carrier(), sorted)?;
            let target = self.simplex_of(&flag).ok_or_else(not_flag)?;
            let sign = if permutation_is_odd(&order) {
                -r.clone()
            } else {
                r.clone()
            };
            out.add_term(FormalSimplex::embed(target), sign);
        }
        Ok(out)
    }

    /// Inverse of [`Subdivision::lift_chain`] on native chains of the
    /// subdivision.
    pub fn project_chain(&self, x: &DeltaComplex, c: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(c.dim());
        for (s, r) in c.iter() {
            if !s.is_native() {
                return Err(Error::NotSimplicial(x.id(s.carrier()).to_string()));
            }
            out.add_term(self.flag(s.carrier()).clone(), r.clone());
        }
        Ok(out)
    }
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Extends `prefix` in every way to a strictly descending chain of `len`
/// nonempty masks below `top`.
fn descending_chains(top: FaceMask, len: usize, prefix: &mut Vec<FaceMask>, out: &mut Vec<Vec<FaceMask>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let remaining = len - prefix.len();
    for m in top.nonempty_subsets() {
        if m == top || m.len() < remaining {
            continue;
        }
        prefix.push(m);
        descending_chains(m, len, prefix, out);
        prefix.pop();
    }
}

pub fn barycentric_subdivide(k: &DeltaComplex) -> Subdivision {
    let top = k.top_dim().unwrap_or(0);
    let mut flags: Vec<Vec<FormalSimplex>> = vec![Vec::new(); top + 1];
    for (d, level) in flags.iter_mut().enumerate() {
        for tau in k.all_simplices().filter(|t| t.dim >= d) {
            let full = FaceMask::full(tau.dim);
            let mut chains = Vec::new();
            descending_chains(full, d + 1, &mut vec![full], &mut chains);
            for masks in chains {
                level.push(FormalSimplex::canonical(k, tau, masks));
            }
        }
    }
    if k.total_count() == 0 {
        flags.clear();
    }

    let prefix = generated_prefix(k);
    let name = |f: &FormalSimplex, d: usize, i: usize| -> String {
        if d == 0 {
            k.id(f.carrier()).to_string()
        } else {
            format!("{prefix}{d}-{i}")
        }
    };

    let mut index = HashMap::new();
    for (d, fs) in flags.iter().enumerate() {
        for (i, f) in fs.iter().enumerate() {
            index.insert(f.clone(), FaceRef::new(d, i));
        }
    }

    let mut builder = DeltaComplexBuilder::new();
    for (d, fs) in flags.iter().enumerate() {
        for (i, f) in fs.iter().enumerate() {
            if d == 0 {
                builder.vertex(name(f, 0, i));
                continue;
            }
            let faces: Vec<String> = (0..=d)
                .map(|j| {
                    let face = index[&f.face(k, j)];
                    name(&flags[face.dim][face.index], face.dim, face.index)
                })
                .collect();
            builder.simplex(name(f, d, i), faces);
        }
    }
    let complex = builder.build().expect("subdivision of a valid complex is valid");
    Subdivision { complex, flags, index }
}

/// A prefix `p` such that no identifier of `k` starts with `p`.
fn generated_prefix(k: &DeltaComplex) -> String {
    let mut prefix = String::from("s");
    while k.all_simplices().any(|f| k.id(f).starts_with(&prefix)) {
        prefix.push('d');
    }
    prefix
}
