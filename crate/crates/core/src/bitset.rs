//! Fixed-width vertex bitsets used by the search routines.
//!
//! `Bits<1>` is the fast path for graphs with at most 64 vertices; wider
//! widths cover the general path up to [`MAX_SEARCH_VERTICES`].

/// Largest vertex count the bitset-backed searches accept.
pub const MAX_SEARCH_VERTICES: usize = 1024;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Bits<const W: usize>(pub [u64; W]);

impl<const W: usize> Default for Bits<W> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<const W: usize> Bits<W> {
    pub const CAPACITY: usize = 64 * W;

    #[inline]
    pub fn empty() -> Self {
        Bits([0; W])
    }

    /// The set `{0, .., n-1}`.
    pub fn prefix(n: usize) -> Self {
        debug_assert!(n <= Self::CAPACITY);
        let mut words = [0u64; W];
        for (i, w) in words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        Bits(words)
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.0[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..W {
            out.0[i] |= other.0[i];
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..W {
            out.0[i] &= other.0[i];
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..W {
            out.0[i] &= !other.0[i];
        }
        out
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> BitsIter<W> {
        BitsIter { words: self.0, idx: 0 }
    }
}

impl<const W: usize> FromIterator<usize> for Bits<W> {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut b = Self::empty();
        for v in it {
            b.insert(v);
        }
        b
    }
}

pub struct BitsIter<const W: usize> {
    words: [u64; W],
    idx: usize,
}

impl<const W: usize> Iterator for BitsIter<W> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.idx < W {
            let w = self.words[self.idx];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.idx] &= w - 1;
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_iter() {
        let b = Bits::<2>::prefix(70);
        assert_eq!(b.len(), 70);
        assert_eq!(b.iter().last(), Some(69));
        assert_eq!(Bits::<1>::prefix(64).len(), 64);
        assert!(Bits::<1>::prefix(0).is_empty());
    }

    #[test]
    fn set_algebra() {
        let a = Bits::<2>::from_iter([1, 5, 100]);
        let b = Bits::<2>::from_iter([5, 7]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![5]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![1, 100]);
        assert_eq!(a.union(&b).len(), 4);
        assert!(Bits::<2>::from_iter([5]).is_subset(&a));
        assert_eq!(a.first(), Some(1));
    }
}
