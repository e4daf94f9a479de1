use std::fmt;

use super::sigma::build_sigma;
use crate::complex::{Chain, DeltaComplex, FaceMask, FormalSimplex};
use crate::strat::{Stratification, StratumId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Cellular,
    Order,
    Internality,
    Loop,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::Cellular,
        Condition::Order,
        Condition::Internality,
        Condition::Loop,
    ];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Cellular => "cellular",
            Condition::Order => "order",
            Condition::Internality => "internality",
            Condition::Loop => "loop",
        })
    }
}

/// A chain term violating a condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: Condition,
    pub simplex: FormalSimplex,
    pub detail: String,
}

/// First witness of each failed condition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionReport {
    failures: Vec<Witness>,
}

impl ConditionReport {
    pub fn passed(&self, c: Condition) -> bool {
        self.witness(c).is_none()
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn witness(&self, c: Condition) -> Option<&Witness> {
        self.failures.iter().find(|w| w.condition == c)
    }

    pub fn failures(&self) -> &[Witness] {
        &self.failures
    }

    fn record(&mut self, condition: Condition, simplex: &FormalSimplex, detail: impl FnOnce() -> String) {
        if self.passed(condition) {
            self.failures.push(Witness {
                condition,
                simplex: simplex.clone(),
                detail: detail(),
            });
            self.failures.sort_by_key(|w| w.condition);
        }
    }
}

fn slots(q: FaceMask) -> String {
    let p: Vec<String> = q.positions().map(|i| i.to_string()).collect();
    format!("[{}]", p.join(","))
}

/// Checks the cellular, order, internality and loop conditions for every
/// term of `c`.
///
/// The face of a formal simplex spanned by a set of its vertices has its
/// interior in the open simplex of the union of their faces of the carrier,
/// so the cellular condition holds for every chain of formal simplices; the
/// other three conditions are decided on those open cells.
pub fn check_conditions(k: &DeltaComplex, c: &Chain, strat: &Stratification) -> ConditionReport {
    let mut report = ConditionReport::default();
    let name = |s: StratumId| strat.name(s).to_string();
    for s in c.simplices() {
        let all = FaceMask::full(s.dim());
        let stratum_of = |q: FaceMask| strat.stratum(s.face_cell(k, q));
        let faces: Vec<(FaceMask, StratumId)> = all.nonempty_subsets().map(|q| (q, stratum_of(q))).collect();

        if report.passed(Condition::Order) {
            'order: for (i, &(qa, a)) in faces.iter().enumerate() {
                for &(qb, b) in &faces[i + 1..] {
                    if strat.incomparable(a, b) {
                        report.record(Condition::Order, s, || {
                            format!(
                                "faces {} and {} lie in incomparable strata {} and {}",
                                slots(qa),
                                slots(qb),
                                name(a),
                                name(b)
                            )
                        });
                        break 'order;
                    }
                }
            }
        }

        if report.passed(Condition::Internality) {
            for &(q, own) in faces.iter().filter(|(q, _)| q.len() >= 2) {
                let mut below = faces.iter().filter(|(p, _)| p.is_subset(q) && *p != q).map(|&(_, t)| t);
                let first = below.next().expect("a face of dimension ≥ 1 has vertices");
                if below.all(|t| t == first) && own != first {
                    report.record(Condition::Internality, s, || {
                        format!(
                            "boundary of face {} lies in {} but its interior lies in {}",
                            slots(q),
                            name(first),
                            name(own)
                        )
                    });
                    break;
                }
            }
        }
    }

    let sigma = build_sigma(k, c);
    'loops: for (t, (s, _)) in sigma.terms().iter().enumerate() {
        let masks = s.vertex_masks();
        for a in 0..masks.len() {
            for b in a + 1..masks.len() {
                if sigma.slot_vertex(t, a) == sigma.slot_vertex(t, b) && masks[a] != masks[b] {
                    report.record(Condition::Loop, s, || {
                        format!(
                            "edge {} closes up in Σ but its image is not a point",
                            slots(FaceMask::from_positions([a, b]))
                        )
                    });
                    break 'loops;
                }
            }
        }
    }
    report
}
