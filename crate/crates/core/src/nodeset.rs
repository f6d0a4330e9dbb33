//! Fixed-universe bitsets of node ids.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::NodeId;

/// A subset of `0..universe`.
///
/// Two sets are only comparable (equal, subset, ...) when they share a
/// universe; the binary operations panic otherwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet {
    universe: usize,
    words: Vec<u64>,
}

impl NodeSet {
    pub fn new(universe: usize) -> Self {
        NodeSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(universe: usize, v: NodeId) -> Self {
        let mut s = Self::new(universe);
        s.insert(v);
        s
    }

    pub fn from_nodes<I: IntoIterator<Item = NodeId>>(universe: usize, nodes: I) -> Self {
        let mut s = Self::new(universe);
        for v in nodes {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64);
        let mut s = Self::new(universe);
        if universe > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// The set as a bitmask; requires `universe <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.universe <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let r = self.universe % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: NodeId) -> bool {
        assert!(v < self.universe, "node {v} outside universe {}", self.universe);
        let had = self.contains(v);
        self.words[v / 64] |= 1 << (v % 64);
        !had
    }

    #[inline]
    pub fn remove(&mut self, v: NodeId) -> bool {
        let had = self.contains(v);
        if had {
            self.words[v / 64] &= !(1 << (v % 64));
        }
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.universe, other.universe, "node sets over different universes");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        NodeSet { universe: self.universe, words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        NodeSet { universe: self.universe, words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        NodeSet { universe: self.universe, words }
    }

    pub fn complement(&self) -> Self {
        let mut s = NodeSet {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `self ⊊ other`.
    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Neither set contains the other.
    pub fn is_uncomparable(&self, other: &Self) -> bool {
        !self.is_subset(other) && !other.is_subset(self)
    }

    pub fn first(&self) -> Option<NodeId> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<NodeId> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    set: &'a NodeSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = NodeId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let a = NodeSet::from_nodes(70, [0, 5, 69]);
        let b = NodeSet::from_nodes(70, [5, 6]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.union(&b).to_vec(), vec![0, 5, 6, 69]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 69]);
        assert_eq!(a.complement().len(), 67);
        assert!(a.is_uncomparable(&b));
        assert!(NodeSet::full(70).is_full());
        assert!(NodeSet::new(0).is_empty());
    }

    proptest! {
        #[test]
        fn complement_laws(mask in any::<u64>(), n in 1usize..=64) {
            let s = NodeSet::from_mask(n, mask);
            let c = s.complement();
            prop_assert!(s.is_disjoint(&c));
            prop_assert!(s.union(&c).is_full());
            prop_assert_eq!(s.len() + c.len(), n);
            prop_assert_eq!(NodeSet::from_nodes(n, s.iter()), s.clone());
            prop_assert_eq!(NodeSet::from_mask(n, s.to_mask()), s);
        }
    }
}
