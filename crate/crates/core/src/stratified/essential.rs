use super::conditions::check_conditions;
use super::sigma::{build_sigma, SigmaComplex};
use crate::complex::{Chain, DeltaComplex};
use crate::strat::Stratification;
use crate::{Error, Rational, Result};

/// Disjoint color classes on the vertices of `Σ`; uncolored vertices never
/// share a color with anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColoring {
    colors: Vec<Option<usize>>,
}

impl PartialColoring {
    /// `colors[v]` is the color of Σ-vertex `v`; missing entries are
    /// uncolored.
    pub fn new(colors: Vec<Option<usize>>) -> Self {
        Self { colors }
    }

    /// Colors every Σ-vertex by the stratum containing its image.
    pub fn from_strata(sigma: &SigmaComplex, strat: &Stratification) -> Self {
        Self {
            colors: (0..sigma.vertex_count())
                .map(|v| Some(strat.stratum(sigma.vertex_point(v)).0))
                .collect(),
        }
    }

    pub fn color(&self, v: usize) -> Option<usize> {
        self.colors.get(v).copied().flatten()
    }
}

/// Essential flag per top simplex of `Σ`. A simplex is non-essential when
/// two distinct Σ-vertices of it share a color, or when one of its edges has
/// a single point as image.
pub fn classify_essential(sigma: &SigmaComplex, coloring: &PartialColoring) -> Vec<bool> {
    sigma
        .terms()
        .iter()
        .enumerate()
        .map(|(t, (s, _))| {
            let n = s.dim() + 1;
            let masks = s.vertex_masks();
            for a in 0..n {
                for b in a + 1..n {
                    if masks[a] == masks[b] {
                        return false;
                    }
                    let (u, v) = (sigma.slot_vertex(t, a), sigma.slot_vertex(t, b));
                    if u != v && coloring.color(u).is_some() && coloring.color(u) == coloring.color(v) {
                        return false;
                    }
                }
            }
            true
        })
        .collect()
}

/// Terms of `c` that are essential for the stratum coloring.
pub fn essential_part(k: &DeltaComplex, c: &Chain, strat: &Stratification) -> Chain {
    let sigma = build_sigma(k, c);
    let coloring = PartialColoring::from_strata(&sigma, strat);
    let flags = classify_essential(&sigma, &coloring);
    let mut out = Chain::zero(c.dim());
    for ((s, r), essential) in sigma.terms().iter().zip(flags) {
        if essential {
            out.add_term(s.clone(), r.clone());
        }
    }
    out
}

/// Sum of `|r|` over the essential terms; the chain must satisfy the four
/// conditions.
pub fn essential_norm(k: &DeltaComplex, c: &Chain, strat: &Stratification) -> Result<Rational> {
    let report = check_conditions(k, c, strat);
    if let Some(w) = report.failures().first() {
        return Err(Error::ConditionsFailed(format!(
            "{} condition fails on a simplex carried by `{}`: {}",
            w.condition,
            k.id(w.simplex.carrier()),
            w.detail
        )));
    }
    Ok(essential_part(k, c, strat).l1_norm())
}
