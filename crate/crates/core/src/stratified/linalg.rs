//! Sparse exact linear systems over the rationals.

use std::collections::BTreeMap;

use num::Zero;

use crate::Rational;

type Row = BTreeMap<usize, Rational>;

/// Incremental row echelon form. Every pivot row has its pivot as its
/// smallest column, with coefficient one.
#[derive(Debug, Default)]
pub(crate) struct System {
    pivots: BTreeMap<usize, (Row, Rational)>,
    inconsistent: bool,
}

impl System {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the equation `Σ row[i]·x_i = rhs`.
    pub fn push(&mut self, mut row: Row, mut rhs: Rational) {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&col, coef)) = row.iter().next() else {
                if !rhs.is_zero() {
                    self.inconsistent = true;
                }
                return;
            };
            let coef = coef.clone();
            match self.pivots.get(&col) {
                Some((prow, prhs)) => {
                    for (c, v) in prow {
                        let entry = row.entry(*c).or_insert_with(Rational::zero);
                        *entry -= &coef * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                    rhs -= &coef * prhs;
                }
                None => {
                    for v in row.values_mut() {
                        *v /= &coef;
                    }
                    rhs /= &coef;
                    self.pivots.insert(col, (row, rhs));
                    return;
                }
            }
        }
    }

    /// A solution with every free variable zero, or `None` if the system is
    /// inconsistent.
    pub fn solve(&self) -> Option<BTreeMap<usize, Rational>> {
        if self.inconsistent {
            return None;
        }
        let mut x: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let mut value = rhs.clone();
            for (c, v) in row.range(col + 1..) {
                if let Some(xc) = x.get(c) {
                    value -= v * xc;
                }
            }
            if !value.is_zero() {
                x.insert(col, value);
            }
        }
        Some(x)
    }
}
