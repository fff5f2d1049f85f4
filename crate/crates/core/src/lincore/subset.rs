use std::fmt;

use serde::{Deserialize, Serialize};

/// A subset of the marks `{1..n}`, stored as a bitmask (mark `i` is bit `i-1`).
///
/// At most 64 marks are supported.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MarkedSubset(pub u64);

impl MarkedSubset {
    pub const EMPTY: MarkedSubset = MarkedSubset(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= 64, "at most 64 marks are supported");
        if n == 64 {
            MarkedSubset(u64::MAX)
        } else {
            MarkedSubset((1u64 << n) - 1)
        }
    }

    /// Subset from 1-based mark labels.
    pub fn from_marks<I: IntoIterator<Item = usize>>(marks: I) -> Self {
        let mut bits = 0u64;
        for m in marks {
            assert!((1..=64).contains(&m), "mark {m} out of range");
            bits |= 1 << (m - 1);
        }
        MarkedSubset(bits)
    }

    /// The first `k` marks `{1..k}`; the usual representative `I_k` of a size class.
    pub fn first(k: usize) -> Self {
        Self::full(k)
    }

    /// Marks `{from..=to}` (1-based, inclusive).
    pub fn range(from: usize, to: usize) -> Self {
        Self::from_marks(from..=to)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, mark: usize) -> bool {
        (1..=64).contains(&mark) && self.0 >> (mark - 1) & 1 == 1
    }

    pub fn complement(self, n: usize) -> Self {
        MarkedSubset(!self.0 & Self::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        MarkedSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        MarkedSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        MarkedSubset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Nonempty and not all of `{1..n}`.
    pub fn is_proper(self, n: usize) -> bool {
        !self.is_empty() && self != Self::full(n)
    }

    /// The representative of `{I, I^c}` that is lexicographically smaller as a
    /// sorted mark list, i.e. the one containing mark 1.
    pub fn canonical(self, n: usize) -> Self {
        if self.0 & 1 == 1 {
            self
        } else {
            self.complement(n)
        }
    }

    pub fn is_canonical(self) -> bool {
        self.0 & 1 == 1
    }

    /// Sorted 1-based marks.
    pub fn marks(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1).map(|i| i + 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.marks().collect()
    }

    /// Smallest mark, if any.
    pub fn min_mark(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }
}

impl fmt::Display for MarkedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let marks: Vec<String> = self.marks().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", marks.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_contains_first_mark() {
        let i = MarkedSubset::from_marks([2, 3]);
        let c = i.canonical(5);
        assert_eq!(c.to_vec(), vec![1, 4, 5]);
        assert_eq!(c.canonical(5), c);
        assert_eq!(MarkedSubset::from_marks([1, 3]).canonical(5).to_vec(), vec![1, 3]);
    }

    #[test]
    fn basic_set_ops() {
        let a = MarkedSubset::range(1, 7);
        assert_eq!(a.len(), 7);
        assert_eq!(a.complement(19).len(), 12);
        assert!(a.is_proper(19));
        assert!(!MarkedSubset::full(19).is_proper(19));
        assert!(!MarkedSubset::EMPTY.is_proper(19));
        assert_eq!(a.to_string(), "{1,2,3,4,5,6,7}");
        assert_eq!(a.min_mark(), Some(1));
        assert!(MarkedSubset::from_marks([2]).is_subset_of(a));
    }
}
