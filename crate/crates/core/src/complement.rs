//! Ryser-Woodall block complementation.
//!
//! Complementing a system D at its block A keeps A and replaces every other
//! block B by the symmetric difference A △ B. The operator is an involution
//! on designs and moves a design around its equivalence class without
//! changing (v, r1, r2). The property report checks the full list of
//! structural facts the operator preserves or transforms:
//!
//! 1. complementing twice at A returns the original system;
//! 2. complementing the result at A △ B matches complementing D at B;
//! 3. the larger replication number is preserved;
//! 4. the intersection number of the result is |A| - λ;
//! 5. the r1-point class transforms to E1 △ A;
//! 6. e1 transforms by -τ1(A) + τ2(A);
//! 7. the result is symmetric exactly when A is one of the point classes.

use crate::bitset::PointSet;
use crate::design::{DesignKind, SetSystem};
use crate::invariants::{InvariantError, ParameterLedger};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplementError {
    #[error("block index {index} out of range for {v} blocks")]
    IndexOutOfRange { index: usize, v: usize },
    #[error("complementing block {kept} empties block {other} (blocks are equal)")]
    EmptyBlockProduced { kept: usize, other: usize },
    #[error("complementing block {kept} collides blocks {first} and {second}")]
    DuplicateBlockProduced {
        kept: usize,
        first: usize,
        second: usize,
    },
    #[error("property verification requires a design; classification failed: {reasons}")]
    NotADesign { reasons: String },
    #[error("property verification requires two distinct block indices, got {index} twice")]
    SameIndex { index: usize },
}

/// Keeps block `index`, replaces every other block B with A △ B. Block
/// positions are stable: the transform of the block at position j lands at
/// position j.
pub fn complement_at(system: &SetSystem, index: usize) -> Result<SetSystem, ComplementError> {
    let v = system.v();
    if index >= v {
        return Err(ComplementError::IndexOutOfRange { index, v });
    }
    let a = system.block(index);
    let mut out: Vec<PointSet> = Vec::with_capacity(v);
    for (j, b) in system.blocks().iter().enumerate() {
        if j == index {
            out.push(a.clone());
        } else {
            let t = a.symmetric_difference(b);
            if t.is_empty() {
                return Err(ComplementError::EmptyBlockProduced {
                    kept: index,
                    other: j,
                });
            }
            out.push(t);
        }
    }
    // A △ B = A △ B' only when B = B', so collisions can only reflect
    // duplicates already present in the input; checked anyway.
    for i in 0..v {
        for j in (i + 1)..v {
            if out[i] == out[j] {
                return Err(ComplementError::DuplicateBlockProduced {
                    kept: index,
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(SetSystem::new(v, out).expect("complementation preserves block count and universe"))
}

/// Predicted size of the transform of B when complementing at A:
/// |A △ B| = |A| + |B| - 2λ, which is 2(|A| - λ) + (|B| - |A|).
pub fn predict_transformed_size(size_a: usize, size_b: usize, lambda: usize) -> usize {
    debug_assert!(size_a > lambda && size_b > lambda);
    size_a + size_b - 2 * lambda
}

/// Block shape relative to the average size 2λ. Every block of a Ryser
/// design has size 2λ + t·a for an integer t; the sign of t is the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockClass {
    /// t < 0; such a block meets the first point class in more than λ points.
    Small { t: i64 },
    /// t = 0; size exactly 2λ.
    Average,
    /// t > 0; such a block meets the second point class in more than λ points.
    Large { t: i64 },
}

impl BlockClass {
    pub fn t(&self) -> i64 {
        match self {
            BlockClass::Small { t } | BlockClass::Large { t } => *t,
            BlockClass::Average => 0,
        }
    }

    pub fn is_average(&self) -> bool {
        matches!(self, BlockClass::Average)
    }
}

impl std::fmt::Display for BlockClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockClass::Small { .. } => write!(f, "small"),
            BlockClass::Average => write!(f, "average"),
            BlockClass::Large { .. } => write!(f, "large"),
        }
    }
}

/// Solves size = 2λ + t·a for t and classifies by its sign. A size not
/// congruent to 2λ modulo a cannot belong to a design with this ledger.
pub fn block_class(ledger: &ParameterLedger, block: &PointSet) -> Result<BlockClass, InvariantError> {
    let size = block.len();
    let diff = size as i64 - 2 * ledger.lambda as i64;
    if diff.rem_euclid(ledger.a) != 0 {
        return Err(InvariantError::NonIntegralT {
            size,
            two_lambda: 2 * ledger.lambda,
            a: ledger.a,
        });
    }
    let t = diff / ledger.a;
    Ok(match t.cmp(&0) {
        std::cmp::Ordering::Less => BlockClass::Small { t },
        std::cmp::Ordering::Equal => BlockClass::Average,
        std::cmp::Ordering::Greater => BlockClass::Large { t },
    })
}

/// One verified property.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of the seven-property verification at a block pair.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub kept_index: usize,
    pub other_index: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The class parameters (r1, r2) of a design: the two replication values for
/// a Ryser design, or (max, min) of {k, v+1-k} for a symmetric design with
/// block size k.
fn family_replication_pair(system: &SetSystem, kind: &DesignKind) -> (usize, usize) {
    match kind {
        DesignKind::Ryser { r1, r2, .. } => (*r1, *r2),
        DesignKind::Symmetric { k, .. } => {
            let other = system.v() + 1 - k;
            (usize::max(*k, other), usize::min(*k, other))
        }
        DesignKind::NotADesign { .. } => unreachable!("caller checks classification"),
    }
}

/// Points replicated r1 times, where r1 is the class parameter. For a
/// symmetric member whose block size equals r2 this is empty.
fn e1_points(system: &SetSystem, r1: usize) -> PointSet {
    system.points_with_replication(r1)
}

fn violations_string(kind: &DesignKind) -> String {
    match kind {
        DesignKind::NotADesign { violations } => violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; "),
        _ => String::new(),
    }
}

/// Verifies the seven complementation properties at blocks (i, j) of a
/// design. The input must classify as symmetric or Ryser; i and j must be
/// distinct.
pub fn verify_complement_properties(
    system: &SetSystem,
    i: usize,
    j: usize,
) -> Result<PropertyReport, ComplementError> {
    let v = system.v();
    if i >= v {
        return Err(ComplementError::IndexOutOfRange { index: i, v });
    }
    if j >= v {
        return Err(ComplementError::IndexOutOfRange { index: j, v });
    }
    if i == j {
        return Err(ComplementError::SameIndex { index: i });
    }
    let kind = system.classify();
    if !kind.is_design() {
        return Err(ComplementError::NotADesign {
            reasons: violations_string(&kind),
        });
    }

    let a = system.block(i).clone();
    let b = system.block(j).clone();
    let lambda = kind.intersection_number().unwrap();
    let (r1, _r2) = family_replication_pair(system, &kind);
    let e1 = e1_points(system, r1);
    let e2 = e1.complement();

    let star_a = complement_at(system, i)?;
    let kind_a = star_a.classify();
    let mut checks = Vec::with_capacity(7);

    // 1: involution.
    let back = complement_at(&star_a, i)?;
    checks.push(PropertyCheck {
        name: "involution",
        pass: back == *system,
        detail: "complementing twice at the same block returns the original".into(),
    });

    // 2: complementing the result at A △ B equals complementing at B.
    let ab = a.symmetric_difference(&b);
    let ab_index = star_a.index_of_block(&ab);
    let pass2 = match ab_index {
        Some(m) => {
            let lhs = complement_at(&star_a, m)?;
            let rhs = complement_at(system, j)?;
            lhs == rhs
        }
        None => false,
    };
    checks.push(PropertyCheck {
        name: "transfer",
        pass: pass2,
        detail: format!(
            "symmetric difference of A and B found at index {:?}; complementing there matches complementing the original at {}",
            ab_index, j
        ),
    });

    // 3: r1 preserved (the result must be a design in the same class).
    let pass3 = kind_a.is_design() && {
        let (r1_after, _) = family_replication_pair(&star_a, &kind_a);
        r1_after == r1
    };
    checks.push(PropertyCheck {
        name: "r1 preserved",
        pass: pass3,
        detail: format!("class replication r1 = {}", r1),
    });

    // 4: intersection number becomes |A| - λ.
    let expected_lambda = a.len() - lambda;
    let pass4 = kind_a.intersection_number() == Some(expected_lambda);
    checks.push(PropertyCheck {
        name: "intersection number",
        pass: pass4,
        detail: format!(
            "expected |A| - lambda = {} - {} = {}, observed {:?}",
            a.len(),
            lambda,
            expected_lambda,
            kind_a.intersection_number()
        ),
    });

    // 5: E1 transforms to E1 △ A.
    let e1_after = e1_points(&star_a, r1);
    let pass5 = e1_after == e1.symmetric_difference(&a);
    checks.push(PropertyCheck {
        name: "point class transform",
        pass: pass5,
        detail: format!("E1 after = {:?}", e1_after),
    });

    // 6: e1 moves by -τ1(A) + τ2(A).
    let tau1 = a.intersection_len(&e1);
    let tau2 = a.intersection_len(&e2);
    let pass6 = e1_after.len() + tau1 == e1.len() + tau2;
    checks.push(PropertyCheck {
        name: "point class size transform",
        pass: pass6,
        detail: format!(
            "e1 = {}, tau1(A) = {}, tau2(A) = {}, e1 after = {}",
            e1.len(),
            tau1,
            tau2,
            e1_after.len()
        ),
    });

    // 7: result symmetric exactly when A is E1 or E2.
    let is_class_block = a == e1 || a == e2;
    let is_symmetric = matches!(kind_a, DesignKind::Symmetric { .. });
    checks.push(PropertyCheck {
        name: "symmetric iff point class",
        pass: is_class_block == is_symmetric,
        detail: format!(
            "A equals a point class: {}; result symmetric: {}",
            is_class_block, is_symmetric
        ),
    });

    Ok(PropertyReport {
        kept_index: i,
        other_index: j,
        checks,
    })
}

/// Two-step identity: complementing at A, then at the transform A △ B,
/// equals complementing once at B. The middle block is located by value.
pub fn verify_triangle_identity(
    system: &SetSystem,
    i: usize,
    j: usize,
) -> Result<bool, ComplementError> {
    let v = system.v();
    if i >= v {
        return Err(ComplementError::IndexOutOfRange { index: i, v });
    }
    if j >= v {
        return Err(ComplementError::IndexOutOfRange { index: j, v });
    }
    if i == j {
        return Err(ComplementError::SameIndex { index: i });
    }
    let ab = system.block(i).symmetric_difference(system.block(j));
    let step1 = complement_at(system, i)?;
    let Some(m) = step1.index_of_block(&ab) else {
        return Ok(false);
    };
    let step2 = complement_at(&step1, m)?;
    Ok(step2 == complement_at(system, j)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::system_from_lists;

    fn fano() -> SetSystem {
        let lists: Vec<Vec<usize>> = (0..7)
            .map(|i| vec![i % 7, (1 + i) % 7, (3 + i) % 7])
            .collect();
        system_from_lists(7, &lists).unwrap()
    }

    #[test]
    fn fano_complement_block_sizes_and_classification() {
        // Complementing the plane at block 0 = {0,1,3} keeps one size-3
        // block and turns the six others into size-4 blocks; the result is
        // Ryser with λ = 2 and replications 5 (on {0,1,3}) and 3.
        let sys = fano();
        let derived = complement_at(&sys, 0).unwrap();
        let mut sizes: Vec<usize> = derived.blocks().iter().map(|b| b.len()).collect();
        assert_eq!(sizes.remove(0), 3);
        assert!(sizes.iter().all(|&s| s == 4));
        assert_eq!(
            derived.classify(),
            DesignKind::Ryser {
                lambda: 2,
                r1: 5,
                r2: 3
            }
        );
        // Replication oracle: count point memberships directly.
        let counts = derived.replication_counts();
        for (p, &got) in counts.iter().enumerate() {
            let direct = derived.blocks().iter().filter(|b| b.contains(p)).count();
            assert_eq!(got, direct);
            let expected = if [0usize, 1, 3].contains(&p) { 5 } else { 3 };
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn involution_on_fano_every_block() {
        let sys = fano();
        for i in 0..7 {
            let once = complement_at(&sys, i).unwrap();
            let twice = complement_at(&once, i).unwrap();
            assert_eq!(twice, sys);
        }
    }

    #[test]
    fn predict_transformed_size_examples() {
        assert_eq!(predict_transformed_size(5, 6, 3), 5);
        assert_eq!(predict_transformed_size(3, 3, 1), 4);
        // |B| = 2λ leaves |A| unchanged; |B| = |A| gives an even size.
        assert_eq!(predict_transformed_size(5, 6, 3), 2 * (5 - 3) + (6 - 5));
    }

    #[test]
    fn equal_blocks_error() {
        let mut lists: Vec<Vec<usize>> = (0..7)
            .map(|i| vec![i % 7, (1 + i) % 7, (3 + i) % 7])
            .collect();
        lists[2] = lists[0].clone();
        let sys = system_from_lists(7, &lists).unwrap();
        assert_eq!(
            complement_at(&sys, 0),
            Err(ComplementError::EmptyBlockProduced { kept: 0, other: 2 })
        );
    }

    #[test]
    fn seven_properties_on_derived_design() {
        let derived = complement_at(&fano(), 0).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                if i == j {
                    continue;
                }
                let report = verify_complement_properties(&derived, i, j).unwrap();
                assert!(
                    report.all_pass(),
                    "failed at ({}, {}): {:?}",
                    i,
                    j,
                    report.checks
                );
            }
        }
    }

    #[test]
    fn seven_properties_on_symmetric_seed() {
        let sys = fano();
        for i in 0..7 {
            for j in 0..7 {
                if i == j {
                    continue;
                }
                let report = verify_complement_properties(&sys, i, j).unwrap();
                assert!(report.all_pass(), "failed at ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn triangle_identity_on_fano_pairs() {
        let sys = fano();
        let derived = complement_at(&sys, 0).unwrap();
        for s in [&sys, &derived] {
            for i in 0..7 {
                for j in 0..7 {
                    if i != j {
                        assert_eq!(verify_triangle_identity(s, i, j), Ok(true));
                    }
                }
            }
        }
    }

    #[test]
    fn index_and_pair_validation() {
        let sys = fano();
        assert!(matches!(
            complement_at(&sys, 7),
            Err(ComplementError::IndexOutOfRange { index: 7, v: 7 })
        ));
        assert!(matches!(
            verify_complement_properties(&sys, 2, 2),
            Err(ComplementError::SameIndex { index: 2 })
        ));
    }
}
