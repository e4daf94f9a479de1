use std::collections::{BTreeMap, BTreeSet};

use num::Zero;

use super::conditions::check_conditions;
use super::essential::essential_part;
use super::linalg::System;
use super::Subcomplex;
use crate::complex::{boundary, subdivide_chain, subdivision_homotopy, Chain, DeltaComplex, FaceRef, FormalSimplex};
use crate::strat::Stratification;
use crate::{Error, Rational, Result};

/// Solution of the relative extension problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// Chain on the subcomplex with `∂c_A = −∂c_rel`.
    pub c_a: Chain,
    /// `(j+1)`-chain `w` with `∂w = c_rel + c_A − h`.
    pub filler: Chain,
}

fn native_ids(k: &DeltaComplex, c: &Chain) -> Result<BTreeMap<FaceRef, Rational>> {
    c.iter()
        .map(|(s, r)| {
            if s.is_native() {
                Ok((s.carrier(), r.clone()))
            } else {
                Err(Error::NotSimplicial(k.id(s.carrier()).to_string()))
            }
        })
        .collect()
}

/// Finds `c_A` on `a` closing `c_rel` up to a cycle homologous to `h`, by
/// exact solving of `c_A − ∂w = h − c_rel` over the simplicial chains.
pub fn extend_relative_cycle(k: &DeltaComplex, a: &Subcomplex, c_rel: &Chain, h: &Chain) -> Result<Extension> {
    let j = c_rel.dim();
    if h.dim() != j {
        return Err(Error::DimensionMismatch {
            expected: j,
            found: h.dim(),
        });
    }
    let rel = native_ids(k, c_rel)?;
    let target = native_ids(k, h)?;
    if let Some(s) = boundary(k, h)?.simplices().next() {
        return Err(Error::NotACycle(k.id(s.carrier()).to_string()));
    }
    let d_rel = boundary(k, c_rel)?;
    if let Some(s) = d_rel.simplices().find(|s| !a.contains(s.carrier())) {
        return Err(Error::BoundaryOutsideSubcomplex(k.id(s.carrier()).to_string()));
    }

    // Unknowns: c_A on the j-simplices of A, then w on the (j+1)-simplices.
    let a_cells: Vec<FaceRef> = a.simplices(j).collect();
    let fillers: Vec<FaceRef> = k.simplices(j + 1).collect();
    let column_of_a: BTreeMap<FaceRef, usize> = a_cells.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut rows: BTreeMap<FaceRef, BTreeMap<usize, Rational>> = BTreeMap::new();
    for (&f, &col) in &column_of_a {
        rows.entry(f).or_default().insert(col, Rational::from_integer(1.into()));
    }
    for (n, &tau) in fillers.iter().enumerate() {
        for i in 0..=tau.dim {
            let face = k.face(tau, i);
            let sign = if i % 2 == 0 { -1 } else { 1 };
            let e = rows
                .entry(face)
                .or_default()
                .entry(a_cells.len() + n)
                .or_insert_with(Rational::zero);
            *e += Rational::from_integer(sign.into());
        }
    }
    let mut system = System::new();
    for sigma in k.simplices(j) {
        let rhs = target.get(&sigma).cloned().unwrap_or_else(Rational::zero)
            - rel.get(&sigma).cloned().unwrap_or_else(Rational::zero);
        system.push(rows.remove(&sigma).unwrap_or_default(), rhs);
    }
    let x = system.solve().ok_or_else(|| {
        Error::ClassMismatch("no chain on the subcomplex completes the relative cycle to the given class".into())
    })?;

    let mut c_a = Chain::zero(j);
    let mut filler = Chain::zero(j + 1);
    for (col, value) in x {
        if col < a_cells.len() {
            c_a.add_term(FormalSimplex::embed(a_cells[col]), value);
        } else {
            filler.add_term(FormalSimplex::embed(fillers[col - a_cells.len()]), value);
        }
    }

    let closed = &(c_rel + &c_a) - h;
    if boundary(k, &filler)? != closed {
        return Err(Error::ClassMismatch("solver certificate does not verify".into()));
    }
    Ok(Extension { c_a, filler })
}

/// Output of [`localize`], with every postcondition evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    pub cycle: Chain,
    pub extension: Extension,
    /// `∂(certificate) = cycle − h`.
    pub certificate: Chain,
    pub is_cycle: bool,
    pub class_preserved: bool,
    pub added_non_essential: bool,
    pub essential_matches: bool,
    pub norm_before: Rational,
    pub norm_after: Rational,
}

impl Localization {
    pub fn all_hold(&self) -> bool {
        self.is_cycle && self.class_preserved && self.added_non_essential && self.essential_matches
    }
}

/// Builds `c = c_rel + T(∂c_rel) + sd(c_A)`, a cycle representing `h` whose
/// essential part is that of `c_rel`. Chains must have dimension at least 1.
pub fn localize(
    k: &DeltaComplex,
    strat: &Stratification,
    a: &Subcomplex,
    c_rel: &Chain,
    h: &Chain,
) -> Result<Localization> {
    let j = c_rel.dim();
    let report = check_conditions(k, c_rel, strat);
    if let Some(w) = report.failures().first() {
        return Err(Error::ConditionsFailed(format!(
            "{} condition fails on a simplex carried by `{}`: {}",
            w.condition,
            k.id(w.simplex.carrier()),
            w.detail
        )));
    }
    let met: BTreeSet<_> = a.iter().map(|f| strat.stratum(f)).collect();
    let longest = strat.longest_chain(&met);
    if longest > j {
        return Err(Error::ChainBound {
            found: longest,
            allowed: j,
        });
    }
    let extension = extend_relative_cycle(k, a, c_rel, h)?;

    let collar = subdivision_homotopy(k, &boundary(k, c_rel)?);
    let fill = subdivide_chain(k, &extension.c_a);
    let cycle = &(c_rel + &collar) + &fill;

    let is_cycle = boundary(k, &cycle)?.is_empty();
    let mut certificate = subdivision_homotopy(k, &extension.c_a);
    certificate += &extension.filler;
    let class_preserved = boundary(k, &certificate)? == &cycle - h;

    let essential_after = essential_part(k, &cycle, strat);
    let essential_before = essential_part(k, c_rel, strat);
    let added_non_essential = collar
        .simplices()
        .chain(fill.simplices())
        .all(|s| essential_after.coefficient(s).is_zero());
    let essential_matches = essential_after == essential_before;

    Ok(Localization {
        norm_before: essential_before.l1_norm(),
        norm_after: essential_after.l1_norm(),
        cycle,
        extension,
        certificate,
        is_cycle,
        class_preserved,
        added_non_essential,
        essential_matches,
    })
}
