use num::BigUint;

use super::{trajectories_from, FlowGraph};
use crate::strat::{LabelReport, Poset};
use crate::{Error, Result};

/// The strata of the compactified descending disk of a critical point `p`.
///
/// Each element is a stratum of the finer stratification; its label is the
/// last critical point of its sequence, naming the stratum of the coarser
/// stratification it lies in, and its codimension tag is its codimension in
/// the disk (the open cell has codimension 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendingDiskPosets {
    pub top: String,
    pub poset: Poset,
}

impl DescendingDiskPosets {
    pub fn new(top: impl Into<String>, poset: Poset) -> Self {
        Self { top: top.into(), poset }
    }

    /// Labels name critical points, codimension tags are present, the open
    /// cells are labeled by the top point, and a stratum of codimension `k`
    /// ends at a point of index at most `ind(p) − k`.
    pub fn check_consistency(&self, g: &FlowGraph) -> Result<()> {
        let top_index = g
            .point(&self.top)
            .map_err(|_| Error::InconsistentPoset(format!("`{}` is not a critical point", self.top)))?
            .index;
        for e in self.poset.elements() {
            let bad = |why: String| Error::InconsistentPoset(format!("element `{}`: {why}", e.name));
            let label = e.label.as_deref().ok_or_else(|| bad("no label".into()))?;
            let codim = e.codim.ok_or_else(|| Error::MissingCodim(e.name.clone()))?;
            let end = g
                .point(label)
                .map_err(|_| bad(format!("label `{label}` is not a critical point")))?;
            if codim > top_index {
                return Err(bad(format!(
                    "codimension {codim} exceeds ind({}) = {top_index}",
                    self.top
                )));
            }
            if codim == 0 && label != self.top {
                return Err(bad(format!("open cell labeled `{label}` instead of `{}`", self.top)));
            }
            if end.index + codim > top_index {
                return Err(bad(format!(
                    "ends at `{label}` of index {} but has codimension {codim}",
                    end.index
                )));
            }
        }
        Ok(())
    }
}

/// Chains with distinct labels against broken trajectories from the top
/// point, and the face-labeling check at every corner point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayReport {
    pub top: String,
    pub chain_length: usize,
    pub chains: BigUint,
    pub label_distinct_chains: BigUint,
    pub trajectories: BigUint,
    /// One report per element of codimension `ind(p)`, sorted by name.
    pub label_checks: Vec<LabelReport>,
}

impl GrayReport {
    pub fn counts_agree(&self) -> bool {
        self.label_distinct_chains == self.trajectories
    }

    pub fn passed(&self) -> bool {
        self.counts_agree() && self.label_checks.iter().all(|r| r.passed)
    }
}

pub fn verify_gray(posets: &DescendingDiskPosets, g: &FlowGraph) -> Result<GrayReport> {
    posets.check_consistency(g)?;
    let index = g.point(&posets.top)?.index;
    let poset = &posets.poset;
    let mut corners: Vec<&str> = poset
        .elements()
        .iter()
        .filter(|e| e.codim == Some(index))
        .map(|e| e.name.as_str())
        .collect();
    corners.sort_unstable();
    let label_checks = corners
        .into_iter()
        .map(|v| poset.faces_label_check(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrayReport {
        top: posets.top.clone(),
        chain_length: index + 1,
        chains: poset.count_chains(index + 1, false),
        label_distinct_chains: poset.count_chains(index + 1, true),
        trajectories: trajectories_from(g, &posets.top)?,
        label_checks,
    })
}
