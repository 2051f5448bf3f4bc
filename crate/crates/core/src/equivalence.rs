//! Equivalence classes under block complementation.
//!
//! Any sequence of complementations collapses to at most one: the class of a
//! system is the system itself plus its complement at each block, so a class
//! has at most v + 1 members. A Ryser design is **Type-1** when its class
//! contains a symmetric design, which happens exactly when one of its point
//! classes E1, E2 is a block. A design whose class contains no symmetric
//! member would be Type-2; none is known, and the conjecture says none
//! exists.

use crate::complement::{block_class, complement_at, BlockClass, ComplementError};
use crate::design::{classify, DesignKind, SetSystem};
use crate::invariants::{compute_ledger, InvariantError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Complement(#[from] ComplementError),
}

/// How a class member was reached from the base system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Original,
    ComplementedAt(usize),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Original => write!(f, "original"),
            Provenance::ComplementedAt(i) => write!(f, "complemented at block {}", i),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassMember {
    pub system: SetSystem,
    pub provenance: Provenance,
}

/// The complementation class of a system: the system plus every distinct
/// one-step complement, in block-index order. First provenance wins when
/// two complements coincide.
#[derive(Debug, Clone)]
pub struct EquivalenceClass {
    pub members: Vec<ClassMember>,
}

impl EquivalenceClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, system: &SetSystem) -> bool {
        self.members.iter().any(|m| &m.system == system)
    }

    pub fn systems(&self) -> impl Iterator<Item = &SetSystem> {
        self.members.iter().map(|m| &m.system)
    }
}

pub fn enumerate_class(system: &SetSystem) -> Result<EquivalenceClass, ComplementError> {
    let mut members = vec![ClassMember {
        system: system.clone(),
        provenance: Provenance::Original,
    }];
    for i in 0..system.v() {
        let c = complement_at(system, i)?;
        if !members.iter().any(|m| m.system == c) {
            members.push(ClassMember {
                system: c,
                provenance: Provenance::ComplementedAt(i),
            });
        }
    }
    Ok(EquivalenceClass { members })
}

/// One step of a complementation sequence. Indices address the system as it
/// stands when the step runs; complementation keeps positions stable, so an
/// index keeps meaning the block that now sits there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceStep {
    Identity,
    ComplementAt(usize),
}

pub fn apply_sequence(
    system: &SetSystem,
    steps: &[SequenceStep],
) -> Result<SetSystem, ComplementError> {
    let mut current = system.clone();
    for step in steps {
        if let SequenceStep::ComplementAt(i) = step {
            current = complement_at(&current, *i)?;
        }
    }
    Ok(current)
}

/// A block whose complementation yields a symmetric design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type1Witness {
    pub block_index: usize,
    /// The block coincides with the first point class (true) or the second.
    pub is_first_class: bool,
    pub v: usize,
    pub k: usize,
    pub lambda_prime: usize,
}

/// Outcome of Type-1 detection. The witness list is exactly
/// {E1, E2} ∩ blocks; empty means the class has no symmetric member and the
/// design is a Type-2 candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type1Decision {
    pub witnesses: Vec<Type1Witness>,
}

impl Type1Decision {
    pub fn is_type1(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// Fast Type-1 detection: a complement is symmetric exactly when the kept
/// block is a point class, so only E1 and E2 need to be looked up among the
/// blocks. Input must be Ryser; complement a symmetric design first.
pub fn is_type1(design: &SetSystem) -> Result<Type1Decision, EquivalenceError> {
    let ledger = compute_ledger(design)?;
    let mut witnesses = Vec::new();
    for (i, b) in design.blocks().iter().enumerate() {
        let is_first = *b == ledger.e1_points;
        let is_second = *b == ledger.e2_points;
        if !(is_first || is_second) {
            continue;
        }
        let sym = complement_at(design, i)?;
        match classify(&sym) {
            DesignKind::Symmetric { k, lambda_prime } => witnesses.push(Type1Witness {
                block_index: i,
                is_first_class: is_first,
                v: sym.v(),
                k,
                lambda_prime,
            }),
            other => unreachable!(
                "complementing a Ryser design at a point-class block must be symmetric, got {:?}",
                other
            ),
        }
    }
    Ok(Type1Decision { witnesses })
}

/// Slow Type-1 detection for cross-validation: enumerate the whole class
/// and look for a symmetric member.
#[derive(Debug, Clone)]
pub struct SlowType1 {
    pub symmetric_members: Vec<(Provenance, usize, usize)>,
}

impl SlowType1 {
    pub fn is_type1(&self) -> bool {
        !self.symmetric_members.is_empty()
    }
}

pub fn is_type1_via_class(design: &SetSystem) -> Result<SlowType1, EquivalenceError> {
    // Same precondition as the fast path.
    compute_ledger(design)?;
    let class = enumerate_class(design)?;
    let mut symmetric_members = Vec::new();
    for member in &class.members {
        if let DesignKind::Symmetric { k, lambda_prime } = classify(&member.system) {
            symmetric_members.push((member.provenance, k, lambda_prime));
        }
    }
    Ok(SlowType1 { symmetric_members })
}

/// A class member holding both a large and a small block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoexistenceViolation {
    pub provenance: Provenance,
    pub large_index: usize,
    pub small_index: usize,
}

/// Whether any member of the design's class carries a large and a small
/// block simultaneously. No known design does; if every class is free of
/// such coexistence, the conjecture follows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoexistenceReport {
    Holds,
    Violated(Vec<CoexistenceViolation>),
}

impl CoexistenceReport {
    pub fn holds(&self) -> bool {
        matches!(self, CoexistenceReport::Holds)
    }
}

/// Scans the whole class for large/small coexistence. With
/// `exhaustive = false` the first violating member settles it; otherwise
/// every violating member is reported.
pub fn check_hypothesis_h(
    design: &SetSystem,
    exhaustive: bool,
) -> Result<CoexistenceReport, EquivalenceError> {
    compute_ledger(design)?;
    let class = enumerate_class(design)?;
    let mut violations = Vec::new();
    for member in &class.members {
        if !matches!(classify(&member.system), DesignKind::Ryser { .. }) {
            continue;
        }
        let ledger = compute_ledger(&member.system)?;
        let mut large = None;
        let mut small = None;
        for (i, b) in member.system.blocks().iter().enumerate() {
            match block_class(&ledger, b)? {
                BlockClass::Large { .. } if large.is_none() => large = Some(i),
                BlockClass::Small { .. } if small.is_none() => small = Some(i),
                _ => {}
            }
        }
        if let (Some(large_index), Some(small_index)) = (large, small) {
            violations.push(CoexistenceViolation {
                provenance: member.provenance,
                large_index,
                small_index,
            });
            if !exhaustive {
                break;
            }
        }
    }
    Ok(if violations.is_empty() {
        CoexistenceReport::Holds
    } else {
        CoexistenceReport::Violated(violations)
    })
}

/// Outcome of complementing at one block of an equal-size pair: the other
/// block of the pair becomes a block of even size 2(k - λ).
#[derive(Debug, Clone)]
pub enum EvenBlockOutcome {
    Found {
        /// Indices of the equal-size pair in the input; complementation
        /// happened at the first.
        pair: (usize, usize),
        system: SetSystem,
        even_block_index: usize,
        even_block_size: usize,
    },
    NoEqualPair,
}

/// Finds the first equal-size block pair (index order) and complements at
/// its first block. The transform of the second lands at the second's
/// position with size 2(k - λ), always even.
pub fn even_block_construction(design: &SetSystem) -> Result<EvenBlockOutcome, EquivalenceError> {
    let kind = classify(design);
    if !matches!(kind, DesignKind::Ryser { .. }) {
        return Err(EquivalenceError::Invariant(InvariantError::NotRyser {
            found: format!("{:?}", kind),
        }));
    }
    let blocks = design.blocks();
    let mut pair = None;
    'outer: for i in 0..blocks.len() {
        for j in (i + 1)..blocks.len() {
            if blocks[i].len() == blocks[j].len() {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let Some((i, j)) = pair else {
        return Ok(EvenBlockOutcome::NoEqualPair);
    };
    let system = complement_at(design, i)?;
    let even_block_size = system.block(j).len();
    Ok(EvenBlockOutcome::Found {
        pair: (i, j),
        system,
        even_block_index: j,
        even_block_size,
    })
}

/// Shared helper for tests and reports: the set of non-average block
/// indices of a Ryser design.
pub fn non_average_blocks(design: &SetSystem) -> Result<Vec<usize>, EquivalenceError> {
    let ledger = compute_ledger(design)?;
    let mut out = Vec::new();
    for (i, b) in design.blocks().iter().enumerate() {
        if !block_class(&ledger, b)?.is_average() {
            out.push(i);
        }
    }
    Ok(out)
}
