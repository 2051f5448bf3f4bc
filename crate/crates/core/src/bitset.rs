//! Fixed-width bit-vector point sets.
//!
//! Every set carries its universe size `v`; points are indices in `0..v`.
//! Mixing universes is a programming error and panics, like out-of-bounds
//! indexing. All set algebra is word-parallel over `u64` limbs.

pub type PointId = usize;

const WORD_BITS: usize = 64;

fn words_for(v: usize) -> usize {
    v.div_ceil(WORD_BITS)
}

/// Subset of a fixed universe `{0, 1, ..., v-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    v: usize,
    words: Box<[u64]>,
}

impl PointSet {
    pub fn empty(v: usize) -> Self {
        PointSet {
            v,
            words: vec![0u64; words_for(v)].into_boxed_slice(),
        }
    }

    pub fn full(v: usize) -> Self {
        let mut s = Self::empty(v);
        for p in 0..v {
            s.insert(p);
        }
        s
    }

    pub fn from_points<I: IntoIterator<Item = PointId>>(v: usize, points: I) -> Self {
        let mut s = Self::empty(v);
        for p in points {
            s.insert(p);
        }
        s
    }

    /// Builds from a u64 mask; only valid for v <= 64. Used by the search
    /// kernel, which works on single-word masks.
    pub fn from_mask(v: usize, mask: u64) -> Self {
        assert!(v <= WORD_BITS, "mask constructor requires v <= 64");
        assert!(
            v == WORD_BITS || mask & !((1u64 << v) - 1) == 0,
            "mask has bits outside the universe"
        );
        let mut s = Self::empty(v);
        if !s.words.is_empty() {
            s.words[0] = mask;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.v
    }

    pub fn insert(&mut self, p: PointId) {
        assert!(p < self.v, "point {} outside universe of size {}", p, self.v);
        self.words[p / WORD_BITS] |= 1u64 << (p % WORD_BITS);
    }

    pub fn remove(&mut self, p: PointId) {
        assert!(p < self.v, "point {} outside universe of size {}", p, self.v);
        self.words[p / WORD_BITS] &= !(1u64 << (p % WORD_BITS));
    }

    pub fn contains(&self, p: PointId) -> bool {
        p < self.v && self.words[p / WORD_BITS] >> (p % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_universe(&self, other: &PointSet) {
        assert_eq!(
            self.v, other.v,
            "point sets from different universes ({} vs {})",
            self.v, other.v
        );
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> PointSet {
        self.check_universe(other);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a ^ b)
            .collect::<Vec<_>>()
            .into_boxed_slice();
        PointSet { v: self.v, words }
    }

    /// XOR-folds a family; the fold is order-independent and keeps exactly
    /// the points occurring an odd number of times. An empty family gives
    /// the empty set.
    pub fn fold_symmetric_difference<'a, I>(v: usize, sets: I) -> PointSet
    where
        I: IntoIterator<Item = &'a PointSet>,
    {
        let mut acc = PointSet::empty(v);
        for s in sets {
            acc.check_universe(s);
            for (a, b) in acc.words.iter_mut().zip(s.words.iter()) {
                *a ^= b;
            }
        }
        acc
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.check_universe(other);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect::<Vec<_>>()
            .into_boxed_slice();
        PointSet { v: self.v, words }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.check_universe(other);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect::<Vec<_>>()
            .into_boxed_slice();
        PointSet { v: self.v, words }
    }

    /// |self ∩ other| without materializing the intersection.
    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> PointSet {
        let mut out = Self::full(self.v);
        for (o, w) in out.words.iter_mut().zip(self.words.iter()) {
            *o &= !w;
        }
        out
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.v).filter(move |&p| self.contains(p))
    }

    pub fn to_vec(&self) -> Vec<PointId> {
        self.iter().collect()
    }

    /// Low word as a u64 mask; only valid for v <= 64.
    pub fn as_mask(&self) -> u64 {
        assert!(self.v <= WORD_BITS, "mask view requires v <= 64");
        self.words.first().copied().unwrap_or(0)
    }
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "}}")
    }
}

/// Orders sets as their ascending member sequences, so {0,1} < {0,1,3} < {0,2}.
/// A proper prefix sorts before its extensions. This is the block order used
/// for canonical forms throughout.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        self.check_universe(other);
        for (i, (&a, &b)) in self.words.iter().zip(other.words.iter()).enumerate() {
            let d = a ^ b;
            if d == 0 {
                continue;
            }
            let p = d.trailing_zeros();
            // First differing point. Whichever side owns it has the smaller
            // element at the first mismatch, UNLESS the other side has nothing
            // left at all (proper prefix), which sorts first.
            let a_owns = a >> p & 1 == 1;
            let other_word = if a_owns { b } else { a };
            let other_words = if a_owns { &other.words } else { &self.words };
            // Does the non-owning side have any member past the mismatch?
            let rest_nonempty = (p < 63 && other_word >> (p + 1) != 0)
                || other_words[i + 1..].iter().any(|&w| w != 0);
            return match (a_owns, rest_nonempty) {
                (true, true) => Ordering::Less,
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Greater,
                (false, false) => Ordering::Less,
            };
        }
        Ordering::Equal
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Same order as `PointSet::cmp`, on single-word masks. The search kernel
/// uses this so its canonical forms agree with the library's.
pub fn mask_seq_cmp(a: u64, b: u64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let d = a ^ b;
    if d == 0 {
        return Ordering::Equal;
    }
    let p = d.trailing_zeros();
    let a_owns = a >> p & 1 == 1;
    let other = if a_owns { b } else { a };
    let rest_nonempty = p < 63 && other >> (p + 1) != 0;
    match (a_owns, rest_nonempty) {
        (true, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
    }
}
