//! Fixed-capacity bitset used for node sets and edge sets.
//!
//! Capacity is fixed at construction; all binary operations require equal
//! capacities. Ordering is lexicographic on the sorted element sequence, so
//! `{1,3} < {2}` — the tie-break order used by the search and preprocessing
//! routines.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn from_iter(capacity: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(capacity);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.capacity);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Complement within the fixed capacity.
    pub fn complement(&self) -> BitSet {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        // Mask off bits beyond capacity so len() stays honest.
        let tail = self.capacity % 64;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1 << tail) - 1;
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitSet {
    /// Lexicographic on the ascending element sequence.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = BitSet::new(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn complement_respects_capacity() {
        let s = BitSet::from_iter(10, [1, 3, 5]);
        let c = s.complement();
        assert_eq!(c.to_vec(), vec![0, 2, 4, 6, 7, 8, 9]);
        assert_eq!(c.len() + s.len(), 10);
    }

    #[test]
    fn ordering_is_lexicographic_on_elements() {
        let a = BitSet::from_iter(8, [1, 3]);
        let b = BitSet::from_iter(8, [2]);
        let c = BitSet::from_iter(8, [1, 4]);
        assert!(a < b);
        assert!(a < c);
        assert!(c < b);
    }

    proptest! {
        #[test]
        fn set_algebra(xs in proptest::collection::vec(0usize..100, 0..40),
                       ys in proptest::collection::vec(0usize..100, 0..40)) {
            use std::collections::BTreeSet;
            let sx: BTreeSet<_> = xs.iter().copied().collect();
            let sy: BTreeSet<_> = ys.iter().copied().collect();
            let bx = BitSet::from_iter(100, xs.iter().copied());
            let by = BitSet::from_iter(100, ys.iter().copied());

            let mut u = bx.clone();
            u.union_with(&by);
            prop_assert_eq!(u.to_vec(), sx.union(&sy).copied().collect::<Vec<_>>());

            let mut i = bx.clone();
            i.intersect_with(&by);
            prop_assert_eq!(i.to_vec(), sx.intersection(&sy).copied().collect::<Vec<_>>());

            let mut d = bx.clone();
            d.difference_with(&by);
            prop_assert_eq!(d.to_vec(), sx.difference(&sy).copied().collect::<Vec<_>>());

            prop_assert_eq!(bx.is_subset_of(&by), sx.is_subset(&sy));
            prop_assert_eq!(bx.len(), sx.len());
        }
    }
}
