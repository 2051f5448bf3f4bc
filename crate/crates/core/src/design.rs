//! Set systems and design classification.
//!
//! A set system here is an ordered family of `v` blocks (nonempty subsets) of
//! a `v`-point universe. Two kinds of design matter:
//!
//! * **symmetric**: all blocks the same size `k`, every pairwise intersection
//!   the same size `λ' >= 1`, and `k > λ'`;
//! * **Ryser**: constant pairwise intersection `λ >= 1`, every block larger
//!   than `λ`, and at least two distinct block sizes.
//!
//! Every Ryser design has exactly two replication numbers `r1 > r2` with
//! `r1 + r2 = v + 1`; classification checks the remaining conditions and the
//! replication structure then comes for free.
//!
//! Block order is preserved (complementation keeps indices stable), but
//! equality of systems is set-level: two systems are equal when they have the
//! same blocks in any order.

use crate::bitset::{PointId, PointSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("universe must have at least one point")]
    ZeroUniverse,
    #[error("expected exactly {expected} blocks, got {actual}")]
    WrongBlockCount { expected: usize, actual: usize },
    #[error("block {index} is empty")]
    EmptyBlock { index: usize },
    #[error("block {index} lives in universe of size {actual}, system universe is {expected}")]
    UniverseMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("parameter pair r1={r1}, r2={r2} invalid for v={v}: need r1 > r2 and r1 + r2 = v + 1")]
    InvalidParameterPair { r1: usize, r2: usize, v: usize },
}

/// Ordered family of v nonempty blocks over a v-point universe.
///
/// Pairwise distinctness of blocks is a *design* condition, not a
/// construction precondition: `classify` reports duplicates as a violation,
/// which lets the search probe raw candidate families cheaply.
#[derive(Clone)]
pub struct SetSystem {
    v: usize,
    blocks: Vec<PointSet>,
}

impl SetSystem {
    pub fn new(v: usize, blocks: Vec<PointSet>) -> Result<Self, SystemError> {
        if v == 0 {
            return Err(SystemError::ZeroUniverse);
        }
        if blocks.len() != v {
            return Err(SystemError::WrongBlockCount {
                expected: v,
                actual: blocks.len(),
            });
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.universe() != v {
                return Err(SystemError::UniverseMismatch {
                    index: i,
                    expected: v,
                    actual: b.universe(),
                });
            }
            if b.is_empty() {
                return Err(SystemError::EmptyBlock { index: i });
            }
        }
        Ok(SetSystem { v, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &PointSet {
        &self.blocks[i]
    }

    /// First index whose block equals `set`, if any.
    pub fn index_of_block(&self, set: &PointSet) -> Option<usize> {
        self.blocks.iter().position(|b| b == set)
    }

    /// Blocks in sorted order; the comparison key behind set-level equality.
    pub fn sorted_blocks(&self) -> Vec<&PointSet> {
        let mut refs: Vec<&PointSet> = self.blocks.iter().collect();
        refs.sort();
        refs
    }

    /// How many blocks contain each point.
    pub fn replication_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.v];
        for b in &self.blocks {
            for p in b.iter() {
                counts[p] += 1;
            }
        }
        counts
    }

    pub fn replication_profile(&self) -> ReplicationProfile {
        ReplicationProfile::new(self)
    }

    pub fn classify(&self) -> DesignKind {
        classify(self)
    }

    /// Points with the given replication count.
    pub fn points_with_replication(&self, r: usize) -> PointSet {
        let counts = self.replication_counts();
        PointSet::from_points(self.v, (0..self.v).filter(|&p| counts[p] == r))
    }
}

/// Set-level equality: same blocks, any order.
impl PartialEq for SetSystem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.sorted_blocks() == other.sorted_blocks()
    }
}

impl Eq for SetSystem {}

/// Orders by the sorted block sequence, consistent with `Eq`.
impl Ord for SetSystem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.v
            .cmp(&other.v)
            .then_with(|| self.sorted_blocks().cmp(&other.sorted_blocks()))
    }
}

impl PartialOrd for SetSystem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for SetSystem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state);
        for b in self.sorted_blocks() {
            b.hash(state);
        }
    }
}

impl std::fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SetSystem(v={}, blocks=", self.v)?;
        f.debug_list().entries(self.blocks.iter()).finish()?;
        write!(f, ")")
    }
}

/// Replication structure of a system: per-point counts plus the two-value
/// split when at most two distinct counts occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplicationProfile {
    pub counts: Vec<usize>,
    /// Distinct replication values, descending.
    pub values: Vec<usize>,
    /// Populated when there are at most two distinct values.
    pub split: Option<ReplicationSplit>,
}

/// Two-value replication split. With a single observed value r, the split
/// degenerates to r1 = r2 = r with every point in the first class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplicationSplit {
    pub r1: usize,
    pub r2: usize,
    pub e1_points: PointSet,
    pub e2_points: PointSet,
}

impl ReplicationSplit {
    pub fn e1(&self) -> usize {
        self.e1_points.len()
    }

    pub fn e2(&self) -> usize {
        self.e2_points.len()
    }
}

impl ReplicationProfile {
    fn new(system: &SetSystem) -> Self {
        let counts = system.replication_counts();
        let mut values: Vec<usize> = counts.clone();
        values.sort_unstable_by(|a, b| b.cmp(a));
        values.dedup();
        let split = match values.as_slice() {
            [r] => Some(ReplicationSplit {
                r1: *r,
                r2: *r,
                e1_points: PointSet::full(system.v()),
                e2_points: PointSet::empty(system.v()),
            }),
            [r1, r2] => {
                let e1_points = PointSet::from_points(
                    system.v(),
                    (0..system.v()).filter(|&p| counts[p] == *r1),
                );
                let e2_points = e1_points.complement();
                Some(ReplicationSplit {
                    r1: *r1,
                    r2: *r2,
                    e1_points,
                    e2_points,
                })
            }
            _ => None,
        };
        ReplicationProfile {
            counts,
            values,
            split,
        }
    }
}

/// A condition a system fails to be a design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Fewer than two blocks, so no pairwise intersection number exists.
    NoBlockPairs,
    DuplicateBlocks { first: usize, second: usize },
    NonConstantIntersection {
        pair_a: (usize, usize),
        size_a: usize,
        pair_b: (usize, usize),
        size_b: usize,
    },
    /// Constant pairwise intersection, but it is zero.
    ZeroIntersection,
    /// Block no larger than the intersection number.
    BlockTooSmall {
        index: usize,
        size: usize,
        lambda: usize,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NoBlockPairs => {
                write!(f, "fewer than two blocks; intersection number undefined")
            }
            Violation::DuplicateBlocks { first, second } => {
                write!(f, "blocks {} and {} are identical", first, second)
            }
            Violation::NonConstantIntersection {
                pair_a,
                size_a,
                pair_b,
                size_b,
            } => write!(
                f,
                "non-constant intersection: |B{} & B{}| = {} but |B{} & B{}| = {}",
                pair_a.0, pair_a.1, size_a, pair_b.0, pair_b.1, size_b
            ),
            Violation::ZeroIntersection => {
                write!(f, "pairwise intersections are constant but zero")
            }
            Violation::BlockTooSmall {
                index,
                size,
                lambda,
            } => write!(
                f,
                "block {} has size {} but must exceed the intersection number {}",
                index, size, lambda
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignKind {
    Symmetric { k: usize, lambda_prime: usize },
    Ryser { lambda: usize, r1: usize, r2: usize },
    NotADesign { violations: Vec<Violation> },
}

impl DesignKind {
    pub fn is_design(&self) -> bool {
        !matches!(self, DesignKind::NotADesign { .. })
    }

    /// The common pairwise intersection number, for either design kind.
    pub fn intersection_number(&self) -> Option<usize> {
        match self {
            DesignKind::Symmetric { lambda_prime, .. } => Some(*lambda_prime),
            DesignKind::Ryser { lambda, .. } => Some(*lambda),
            DesignKind::NotADesign { .. } => None,
        }
    }
}

/// Classifies a system as symmetric, Ryser, or neither. Never errors: the
/// search uses this to probe candidates, so every failure mode is reported
/// as a violation instead.
pub fn classify(system: &SetSystem) -> DesignKind {
    let v = system.v();
    let blocks = system.blocks();
    let mut violations = Vec::new();

    if v < 2 {
        return DesignKind::NotADesign {
            violations: vec![Violation::NoBlockPairs],
        };
    }

    for i in 0..v {
        for j in (i + 1)..v {
            if blocks[i] == blocks[j] {
                violations.push(Violation::DuplicateBlocks {
                    first: i,
                    second: j,
                });
            }
        }
    }

    let first_size = blocks[0].intersection_len(&blocks[1]);
    let mut constant = true;
    'outer: for i in 0..v {
        for j in (i + 1)..v {
            let s = blocks[i].intersection_len(&blocks[j]);
            if s != first_size {
                violations.push(Violation::NonConstantIntersection {
                    pair_a: (0, 1),
                    size_a: first_size,
                    pair_b: (i, j),
                    size_b: s,
                });
                constant = false;
                break 'outer;
            }
        }
    }

    if !constant {
        return DesignKind::NotADesign { violations };
    }

    let lambda = first_size;
    if lambda == 0 {
        violations.push(Violation::ZeroIntersection);
    }

    for (i, b) in blocks.iter().enumerate() {
        if b.len() <= lambda {
            violations.push(Violation::BlockTooSmall {
                index: i,
                size: b.len(),
                lambda,
            });
        }
    }

    if !violations.is_empty() {
        return DesignKind::NotADesign { violations };
    }

    let mut sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();

    if sizes.len() == 1 {
        return DesignKind::Symmetric {
            k: sizes[0],
            lambda_prime: lambda,
        };
    }

    // Two distinct replication numbers summing to v + 1 are forced for any
    // family passing the checks above; a failure here is a library bug.
    let profile = system.replication_profile();
    let split = profile
        .split
        .as_ref()
        .expect("Ryser design must have exactly two replication numbers");
    assert!(
        split.r1 > split.r2 && split.r1 + split.r2 == v + 1,
        "replication numbers of a Ryser design must be distinct and sum to v + 1"
    );

    DesignKind::Ryser {
        lambda,
        r1: split.r1,
        r2: split.r2,
    }
}

/// Is every point replicated either r1 or r2 times? Families where all
/// counts equal one of the two values are admissible, including constant
/// families (a symmetric design answers true for any valid pair containing
/// its replication).
pub fn is_ryser_system(system: &SetSystem, r1: usize, r2: usize) -> Result<bool, SystemError> {
    let v = system.v();
    if r1 <= r2 || r1 + r2 != v + 1 {
        return Err(SystemError::InvalidParameterPair { r1, r2, v });
    }
    Ok(system
        .replication_counts()
        .iter()
        .all(|&c| c == r1 || c == r2))
}

/// Convenience: blocks given as point lists.
pub fn system_from_lists(v: usize, lists: &[Vec<PointId>]) -> Result<SetSystem, SystemError> {
    let blocks = lists
        .iter()
        .map(|pts| PointSet::from_points(v, pts.iter().copied()))
        .collect();
    SetSystem::new(v, blocks)
}
