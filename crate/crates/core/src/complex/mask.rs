use std::fmt;

/// A set of vertex positions `{0, …, d}` of a simplex, stored as a bitmask.
///
/// Inside a carrier simplex, a mask names one of its faces and, through it,
/// the barycenter of that face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FaceMask(u32);

impl FaceMask {
    pub const EMPTY: FaceMask = FaceMask(0);

    pub fn full(dim: usize) -> Self {
        assert!(dim < 31, "simplex dimension {dim} too large");
        FaceMask((1u32 << (dim + 1)) - 1)
    }

    pub fn singleton(k: usize) -> Self {
        FaceMask(1 << k)
    }

    pub fn from_bits(bits: u32) -> Self {
        FaceMask(bits)
    }

    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        FaceMask(positions.into_iter().fold(0, |m, k| m | (1 << k)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 & (1 << k) != 0
    }

    pub fn is_subset(self, other: FaceMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: FaceMask) -> Self {
        FaceMask(self.0 | other.0)
    }

    pub fn without(self, k: usize) -> Self {
        FaceMask(self.0 & !(1 << k))
    }

    pub fn positions(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |k| bits & (1 << k) != 0)
    }

    /// Position of the `i`-th element (in increasing order).
    pub fn nth(self, i: usize) -> Option<usize> {
        self.positions().nth(i)
    }

    /// Re-indexes `self ⊆ within` relative to the elements of `within`.
    pub fn compress(self, within: FaceMask) -> Self {
        debug_assert!(self.is_subset(within));
        FaceMask::from_positions(
            within
                .positions()
                .enumerate()
                .filter(|&(_, k)| self.contains(k))
                .map(|(i, _)| i),
        )
    }

    /// Inverse of [`FaceMask::compress`].
    pub fn expand(self, within: FaceMask) -> Self {
        FaceMask::from_positions(
            within
                .positions()
                .enumerate()
                .filter(|&(i, _)| self.contains(i))
                .map(|(_, k)| k),
        )
    }

    pub fn nonempty_subsets(self) -> impl Iterator<Item = FaceMask> {
        // Standard submask walk, reversed to ascending order.
        let full = self.0;
        let mut subs = Vec::with_capacity(1 << self.len());
        let mut s = full;
        while s != 0 {
            subs.push(FaceMask(s));
            s = (s - 1) & full;
        }
        subs.into_iter().rev()
    }
}

impl fmt::Display for FaceMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compress_expand() {
        let within = FaceMask::from_positions([1, 3, 4]);
        let m = FaceMask::from_positions([1, 4]);
        assert_eq!(m.compress(within), FaceMask::from_positions([0, 2]));
        assert_eq!(m.compress(within).expand(within), m);
    }

    #[test]
    fn subsets() {
        let all: Vec<_> = FaceMask::full(2).nonempty_subsets().collect();
        assert_eq!(all.len(), 7);
        assert_eq!(all[0], FaceMask::from_bits(1));
        assert_eq!(FaceMask::from_positions([0, 2]).to_string(), "0,2");
    }
}
