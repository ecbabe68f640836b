//! Fixed-capacity bit sets over dense point indices.

use std::fmt;

const WORD: usize = 64;

/// A subset of `0..capacity`, stored as packed 64-bit words.
///
/// Bits at or beyond `capacity` are always zero, so word-wise equality,
/// hashing and ordering agree with set semantics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    capacity: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(capacity: usize) -> Self {
        Self {
            capacity,
            words: vec![0; capacity.div_ceil(WORD)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self {
            capacity,
            words: vec![!0; capacity.div_ceil(WORD)],
        };
        s.clear_tail();
        s
    }

    /// Builds a set from indices. Returns the first offending index if one is
    /// out of range.
    pub fn from_indices<I>(capacity: usize, indices: I) -> Result<Self, usize>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty(capacity);
        for i in indices {
            if i >= capacity {
                return Err(i);
            }
            s.insert(i);
        }
        Ok(s)
    }

    fn clear_tail(&mut self) {
        let rem = self.capacity % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.words[i / WORD] |= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let mut s = Self {
            capacity: self.capacity,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.capacity, other.capacity);
        Self {
            capacity: self.capacity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = PointSet::from_indices(70, [0, 1, 65]).unwrap();
        let b = PointSet::from_indices(70, [1, 2, 69]).unwrap();
        assert_eq!(a.intersection(&b).to_vec(), vec![1]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 65, 69]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 65]);
        assert_eq!(a.complement().len(), 67);
        assert!(a.intersects(&b));
        assert_eq!(a.first(), Some(0));
        assert_eq!(PointSet::empty(70).first(), None);
        assert_eq!(PointSet::full(70).len(), 70);
        assert_eq!(PointSet::from_indices(3, [3]), Err(3));
    }

    #[test]
    fn zero_capacity() {
        let e = PointSet::empty(0);
        assert!(e.is_empty());
        assert_eq!(e.iter().count(), 0);
        assert_eq!(PointSet::full(0).len(), 0);
    }
}
