//! Fixed-universe vertex sets backed by a word bitmap.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// Dense 0-based vertex identifier.
pub type VertexId = usize;

const WORD: usize = 64;

/// A subset of `{0, .., n-1}`.
///
/// Membership is O(1) and iteration always yields ids in ascending order.
/// Universes of up to 128 vertices are stored inline without allocating.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        let len = universe.div_ceil(WORD);
        VertexSet {
            universe,
            words: smallvec::smallvec![0; len],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::new(universe);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    /// Builds a set from the low `universe` bits of `mask`.
    ///
    /// Panics if `universe > 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask universes are limited to 64 vertices");
        let mut set = Self::new(universe);
        if universe > 0 {
            set.words[0] = mask;
            set.trim();
        }
        set
    }

    /// Builds a set from ids, ignoring duplicates. Panics on ids `>= universe`;
    /// use [`VertexSet::try_from_iter`] for untrusted input.
    pub fn from_iter<I: IntoIterator<Item = VertexId>>(universe: usize, ids: I) -> Self {
        Self::try_from_iter(universe, ids).expect("vertex id out of range")
    }

    /// Like [`VertexSet::from_iter`], but returns the first out-of-range id.
    pub fn try_from_iter<I: IntoIterator<Item = VertexId>>(
        universe: usize,
        ids: I,
    ) -> Result<Self, VertexId> {
        let mut set = Self::new(universe);
        for v in ids {
            if v >= universe {
                return Err(v);
            }
            set.insert(v);
        }
        Ok(set)
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Low 64 bits of the membership bitmap.
    #[inline]
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Inserts `v`, returning whether it was absent. Panics if `v` is out of range.
    #[inline]
    pub fn insert(&mut self, v: VertexId) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let word = &mut self.words[v / WORD];
        let bit = 1u64 << (v % WORD);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) -> bool {
        if v >= self.universe {
            return false;
        }
        let word = &mut self.words[v / WORD];
        let bit = 1u64 << (v % WORD);
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<VertexId> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &VertexSet) {
        assert_eq!(
            self.universe, other.universe,
            "set operation across different universes"
        );
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Ordering used by every brute-force search: by size, then by the
    /// ascending member lists compared lexicographically.
    pub fn cmp_size_lex(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Space-separated ascending ids, the plain-text output convention.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
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

/// Serialized as an ascending array of ids; the universe comes from context.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Deserialized sets get the smallest universe that holds their members.
/// Callers rebind them with [`VertexSet::with_universe`].
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ids = Vec::<VertexId>::deserialize(deserializer)?;
        let universe = ids.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_iter(universe, ids))
    }
}

impl VertexSet {
    /// Re-homes the set in a universe of size `universe`, failing with the
    /// first member that does not fit.
    pub fn with_universe(&self, universe: usize) -> Result<VertexSet, VertexId> {
        VertexSet::try_from_iter(universe, self.iter())
    }
}
