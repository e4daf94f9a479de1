//! Chains on stratified complexes: the Σ-construction, the cellular, order,
//! internality and loop conditions, essential simplices and the essential
//! stratified norm, and the localization of a cycle away from a subcomplex.
//!
//! Localization is combinatorial. Given a relative cycle `c_rel` whose
//! boundary lies on a subcomplex `A`, and a cycle `h`, a simplicial chain
//! `c_A` on `A` with `c_rel + c_A` homologous to `h` is found by exact linear
//! solving. The output cycle is `c_rel + T(∂c_rel) + sd(c_A)`: the collar
//! `T(∂c_rel)` joins `∂c_rel` to its subdivision and `sd(c_A)` caps it off.
//! Because strata are unions of open simplices and `c_A` is simplicial, no
//! metric partition of `A` is needed.

mod conditions;
mod essential;
mod linalg;
mod localize;
mod sigma;

use std::collections::BTreeSet;

use crate::complex::{DeltaComplex, FaceRef};
use crate::strat::Stratification;
use crate::{Error, Result};

pub use conditions::{check_conditions, Condition, ConditionReport, Witness};
pub use essential::{classify_essential, essential_norm, essential_part, PartialColoring};
pub use localize::{extend_relative_cycle, localize, Extension, Localization};
pub use sigma::{sigma_construction, sigma_construction_relative, SigmaComplex};

/// A set of simplices closed under taking faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subcomplex {
    members: BTreeSet<FaceRef>,
}

impl Subcomplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Fails if a face of a listed simplex is not listed.
    pub fn from_simplices(k: &DeltaComplex, simplices: impl IntoIterator<Item = FaceRef>) -> Result<Self> {
        let members: BTreeSet<FaceRef> = simplices.into_iter().collect();
        for &f in &members {
            if let Some(g) = k.iterated_faces(f).into_iter().find(|g| !members.contains(g)) {
                return Err(Error::NotSubcomplex(k.id(g).to_string()));
            }
        }
        Ok(Self { members })
    }

    /// The listed simplices and all their faces.
    pub fn closure(k: &DeltaComplex, simplices: impl IntoIterator<Item = FaceRef>) -> Self {
        let mut members = BTreeSet::new();
        for f in simplices {
            members.insert(f);
            members.extend(k.iterated_faces(f));
        }
        Self { members }
    }

    /// Union of the named strata, which must be closed.
    pub fn from_strata<S: AsRef<str>>(k: &DeltaComplex, strat: &Stratification, names: &[S]) -> Result<Self> {
        let mut cells = Vec::new();
        for n in names {
            cells.extend(strat.members(strat.id_of(n.as_ref())?));
        }
        Self::from_simplices(k, cells)
    }

    pub fn contains(&self, f: FaceRef) -> bool {
        self.members.contains(&f)
    }

    pub fn iter(&self) -> impl Iterator<Item = FaceRef> + '_ {
        self.members.iter().copied()
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = FaceRef> + '_ {
        self.members.iter().copied().filter(move |f| f.dim == dim)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
