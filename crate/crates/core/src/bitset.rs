//! Fixed-capacity vertex sets backed by 512 bits.

use std::fmt;

/// Number of 64-bit words in a [`VertexSet`].
pub const WORDS: usize = 8;

/// Largest vertex count any graph in this crate may have.
pub const MAX_VERTICES: usize = WORDS * 64;

/// A set of vertex indices in `0..MAX_VERTICES`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet([0; WORDS]);

    /// The set `{0, 1, ..., n-1}`.
    pub fn prefix(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        let mut s = Self::EMPTY;
        let full = n / 64;
        for w in s.0.iter_mut().take(full) {
            *w = u64::MAX;
        }
        if full < WORDS && !n.is_multiple_of(64) {
            s.0[full] = (1u64 << (n % 64)) - 1;
        }
        s
    }

    pub fn from_iter_checked<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = Self::EMPTY;
        for v in it {
            s.insert(v);
        }
        s
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
        v < MAX_VERTICES && (self.0[v >> 6] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= *b;
        }
        out
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a |= *b;
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= !*b;
        }
        out
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Elements `> v`.
    pub fn above(&self, v: usize) -> Self {
        let mut out = *self;
        let word = v >> 6;
        for w in out.0.iter_mut().take(word) {
            *w = 0;
        }
        let bit = v & 63;
        out.0[word] &= if bit == 63 { 0 } else { u64::MAX << (bit + 1) };
        out
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.0,
            word: 0,
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_iter_checked(iter)
    }
}

/// Ascending iterator over a [`VertexSet`].
pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + w.trailing_zeros() as usize);
            }
            self.word += 1;
        }
        None
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Bit-row operations shared by `u64` rows (graphs up to 64 vertices) and
/// [`VertexSet`] rows, so hot search loops can pick the narrow type.
pub(crate) trait Bits: Copy {
    const EMPTY: Self;
    fn single(v: usize) -> Self;
    fn and(self, o: Self) -> Self;
    fn or(self, o: Self) -> Self;
    fn minus(self, o: Self) -> Self;
    fn has(self, v: usize) -> bool;
    fn none(self) -> bool;
    fn count(self) -> usize;
    fn pop_first(&mut self) -> Option<usize>;
    fn above(self, v: usize) -> Self;
}

impl Bits for u64 {
    const EMPTY: Self = 0;
    fn single(v: usize) -> Self {
        1 << v
    }
    fn and(self, o: Self) -> Self {
        self & o
    }
    fn or(self, o: Self) -> Self {
        self | o
    }
    fn minus(self, o: Self) -> Self {
        self & !o
    }
    fn has(self, v: usize) -> bool {
        self >> v & 1 == 1
    }
    fn none(self) -> bool {
        self == 0
    }
    fn count(self) -> usize {
        self.count_ones() as usize
    }
    fn pop_first(&mut self) -> Option<usize> {
        if *self == 0 {
            return None;
        }
        let v = self.trailing_zeros() as usize;
        *self &= *self - 1;
        Some(v)
    }
    fn above(self, v: usize) -> Self {
        if v >= 63 {
            0
        } else {
            self & (u64::MAX << (v + 1))
        }
    }
}

impl Bits for VertexSet {
    const EMPTY: Self = VertexSet::EMPTY;
    fn single(v: usize) -> Self {
        let mut s = VertexSet::EMPTY;
        s.insert(v);
        s
    }
    fn and(self, o: Self) -> Self {
        self.intersection(&o)
    }
    fn or(self, o: Self) -> Self {
        self.union(&o)
    }
    fn minus(self, o: Self) -> Self {
        self.difference(&o)
    }
    fn has(self, v: usize) -> bool {
        self.contains(v)
    }
    fn none(self) -> bool {
        self.is_empty()
    }
    fn count(self) -> usize {
        self.len()
    }
    fn pop_first(&mut self) -> Option<usize> {
        let v = self.first()?;
        self.remove(v);
        Some(v)
    }
    fn above(self, v: usize) -> Self {
        VertexSet::above(&self, v)
    }
}
