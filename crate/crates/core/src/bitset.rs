//! Fixed-capacity bit sets.
//!
//! Every finite carrier in the workbench (semilattice elements, space points,
//! indices into canonical families) is small, so sets of them are packed into
//! a single `u64`. Ordering on [`BitSet`] is the ordering of the packed value,
//! which is what the canonical enumerations sort by.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Largest carrier a [`BitSet`] can index.
pub const CAPACITY: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet(u64);

impl BitSet {
    pub const EMPTY: BitSet = BitSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        BitSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= CAPACITY);
        if n >= CAPACITY {
            BitSet(u64::MAX)
        } else {
            BitSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < CAPACITY);
        BitSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < CAPACITY && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < CAPACITY);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < CAPACITY {
            self.0 &= !(1u64 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn union(self, other: Self) -> Self {
        BitSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        BitSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        BitSet(self.0 & !other.0)
    }

    /// Complement relative to the carrier `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        BitSet(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        !self.is_disjoint(other)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under an index map.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Self {
        self.iter().map(f).collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for BitSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = BitSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl BitAnd for BitSet {
    type Output = BitSet;
    fn bitand(self, rhs: BitSet) -> BitSet {
        self.intersection(rhs)
    }
}

impl BitOr for BitSet {
    type Output = BitSet;
    fn bitor(self, rhs: BitSet) -> BitSet {
        self.union(rhs)
    }
}

impl Sub for BitSet {
    type Output = BitSet;
    fn sub(self, rhs: BitSet) -> BitSet {
        self.difference(rhs)
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Iterates every subset of `{0, .., n-1}` in increasing packed order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = BitSet> {
    assert!(n < CAPACITY, "subset enumeration over {n} elements");
    (0u64..(1u64 << n)).map(BitSet)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a: BitSet = [0, 2, 5].into_iter().collect();
        let b: BitSet = [2, 3].into_iter().collect();
        assert_eq!((a & b).to_vec(), vec![2]);
        assert_eq!((a | b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!((a - b).to_vec(), vec![0, 5]);
        assert_eq!(a.complement(6).to_vec(), vec![1, 3, 4]);
        assert!(BitSet::singleton(2).is_subset(a));
        assert!(!b.is_subset(a));
        assert_eq!(a.len(), 3);
        assert_eq!(a.first(), Some(0));
        assert_eq!(BitSet::EMPTY.first(), None);
        assert_eq!(format!("{a}"), "{0,2,5}");
    }

    #[test]
    fn full_and_subsets() {
        assert_eq!(BitSet::full(0), BitSet::EMPTY);
        assert_eq!(BitSet::full(3).to_vec(), vec![0, 1, 2]);
        assert_eq!(BitSet::full(64).len(), 64);
        assert_eq!(all_subsets(3).count(), 8);
    }
}
