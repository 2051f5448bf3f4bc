//! Seed designs: difference sets, their developments, and the symmetric-to-
//! Ryser constructions.
//!
//! A (v, k, λ') difference set D ⊆ Z/v has every nonzero residue occurring
//! exactly λ' times among the ordered differences of D. Its translates
//! D, D+1, ..., D+(v-1) form a symmetric (v, k, λ') design. Complementing a
//! symmetric design at any block (when k ≠ 2λ') yields a Ryser design, which
//! is how every Type-1 design arises.

use crate::complement::{complement_at, ComplementError};
use crate::design::{classify, DesignKind, SetSystem};
use crate::bitset::PointSet;
use thiserror::Error;

/// Desk-scale cap on the modulus for difference-set search.
pub const DEFAULT_MODULUS_BOUND: usize = 200;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("difference-set parameters need k(k-1) = lambda'(v-1); got v={v}, k={k}, lambda'={lambda_prime}")]
    ParameterArithmeticMismatch {
        v: usize,
        k: usize,
        lambda_prime: usize,
    },
    #[error("difference-set parameters out of range (need 1 <= lambda' < k < v): v={v}, k={k}, lambda'={lambda_prime}")]
    InvalidParameters {
        v: usize,
        k: usize,
        lambda_prime: usize,
    },
    #[error("modulus {v} exceeds the desk-scale bound {bound}")]
    ModulusTooLarge { v: usize, bound: usize },
    #[error("no projective plane of order {q} is built in (supported: 2, 3, 4, 5, 7)")]
    UnsupportedPlaneOrder { q: usize },
    #[error("Paley construction needs a prime q congruent to 3 mod 4; got {q}")]
    NotPaleyPrime { q: usize },
    #[error("input must classify as a symmetric design; got: {found}")]
    NotSymmetric { found: String },
    #[error("complementation of a symmetric design with k = 2*lambda' stays symmetric (k={k}, lambda'={lambda_prime}); no Ryser design arises")]
    AverageDegenerate { k: usize, lambda_prime: usize },
    #[error("block complements are not a design here: v - 2k + lambda' = {value} < 1")]
    ComplementUndefined { value: i64 },
    #[error(transparent)]
    Complement(#[from] ComplementError),
}

/// A (v, k, λ') planar-style difference set over Z/v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    pub modulus: usize,
    pub k: usize,
    pub lambda_prime: usize,
    /// Ascending residues.
    pub residues: Vec<usize>,
}

impl DifferenceSet {
    /// Symmetric design whose blocks are the translates of the set, in
    /// translate order.
    pub fn develop(&self) -> SetSystem {
        let v = self.modulus;
        let blocks: Vec<PointSet> = (0..v)
            .map(|shift| {
                PointSet::from_points(v, self.residues.iter().map(|&r| (r + shift) % v))
            })
            .collect();
        SetSystem::new(v, blocks).expect("translates of a nonempty set form a valid system")
    }
}

fn validate_parameters(v: usize, k: usize, lambda_prime: usize) -> Result<(), GeneratorError> {
    if !(1 <= lambda_prime && lambda_prime < k && k < v) {
        return Err(GeneratorError::InvalidParameters {
            v,
            k,
            lambda_prime,
        });
    }
    if k * (k - 1) != lambda_prime * (v - 1) {
        return Err(GeneratorError::ParameterArithmeticMismatch {
            v,
            k,
            lambda_prime,
        });
    }
    Ok(())
}

/// Backtracking search for the lexicographically least (v, k, λ') difference
/// set containing 0. `Ok(None)` means the search space is exhausted: no such
/// set exists.
pub fn find_difference_set(
    v: usize,
    k: usize,
    lambda_prime: usize,
) -> Result<Option<DifferenceSet>, GeneratorError> {
    find_difference_set_bounded(v, k, lambda_prime, DEFAULT_MODULUS_BOUND)
}

pub fn find_difference_set_bounded(
    v: usize,
    k: usize,
    lambda_prime: usize,
    bound: usize,
) -> Result<Option<DifferenceSet>, GeneratorError> {
    validate_parameters(v, k, lambda_prime)?;
    if v > bound {
        return Err(GeneratorError::ModulusTooLarge { v, bound });
    }

    let mut chosen = vec![0usize];
    let mut diff_count = vec![0usize; v];

    /// Adds both ordered differences of x against every chosen element,
    /// rolling everything back on a cap violation. The counts must be
    /// mutated as we go: two different partners can produce the same
    /// residue, and x - y can coincide with y - x when v is even.
    fn try_add(
        v: usize,
        lambda_prime: usize,
        chosen: &[usize],
        diff_count: &mut [usize],
        x: usize,
    ) -> bool {
        for (i, &y) in chosen.iter().enumerate() {
            let d1 = (x + v - y) % v;
            let d2 = (y + v - x) % v;
            diff_count[d1] += 1;
            diff_count[d2] += 1;
            if diff_count[d1] > lambda_prime || diff_count[d2] > lambda_prime {
                diff_count[d1] -= 1;
                diff_count[d2] -= 1;
                for &z in &chosen[..i] {
                    diff_count[(x + v - z) % v] -= 1;
                    diff_count[(z + v - x) % v] -= 1;
                }
                return false;
            }
        }
        true
    }

    fn undo_add(v: usize, chosen: &[usize], diff_count: &mut [usize], x: usize) {
        for &y in chosen.iter() {
            diff_count[(x + v - y) % v] -= 1;
            diff_count[(y + v - x) % v] -= 1;
        }
    }

    fn extend(
        v: usize,
        k: usize,
        lambda_prime: usize,
        chosen: &mut Vec<usize>,
        diff_count: &mut [usize],
    ) -> bool {
        if chosen.len() == k {
            // k(k-1) ordered differences spread over v-1 residues with cap
            // λ' each and total λ'(v-1): the cap forces equality everywhere.
            return true;
        }
        let needed = k - chosen.len();
        let last = *chosen.last().unwrap();
        for x in (last + 1)..=(v - needed) {
            if !try_add(v, lambda_prime, chosen, diff_count, x) {
                continue;
            }
            chosen.push(x);
            if extend(v, k, lambda_prime, chosen, diff_count) {
                return true;
            }
            chosen.pop();
            undo_add(v, chosen, diff_count, x);
        }
        false
    }

    if extend(v, k, lambda_prime, &mut chosen, &mut diff_count) {
        Ok(Some(DifferenceSet {
            modulus: v,
            k,
            lambda_prime,
            residues: chosen,
        }))
    } else {
        Ok(None)
    }
}

/// The (7, 3, 1) plane as translates of the least difference set.
pub fn fano() -> SetSystem {
    find_difference_set(7, 3, 1)
        .expect("parameters are arithmetic-consistent")
        .expect("a (7,3,1) difference set exists")
        .develop()
}

/// Projective plane of order q as a cyclic difference-set development,
/// for the built-in orders {2, 3, 4, 5, 7}.
pub fn pg2(q: usize) -> Result<SetSystem, GeneratorError> {
    if ![2, 3, 4, 5, 7].contains(&q) {
        return Err(GeneratorError::UnsupportedPlaneOrder { q });
    }
    let v = q * q + q + 1;
    let ds = find_difference_set(v, q + 1, 1)?
        .expect("planar difference sets exist for the built-in orders");
    Ok(ds.develop())
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Quadratic-residue difference set for a prime q ≡ 3 (mod 4), developed
/// into the symmetric (q, (q-1)/2, (q-3)/4) design.
pub fn paley(q: usize) -> Result<SetSystem, GeneratorError> {
    if q % 4 != 3 || !is_prime(q) {
        return Err(GeneratorError::NotPaleyPrime { q });
    }
    let mut residues: Vec<usize> = (1..q).map(|x| x * x % q).collect();
    residues.sort_unstable();
    residues.dedup();
    let ds = DifferenceSet {
        modulus: q,
        k: (q - 1) / 2,
        lambda_prime: (q - 3) / 4,
        residues,
    };
    Ok(ds.develop())
}

/// Complement of a symmetric design at a block: the canonical way a Type-1
/// Ryser design arises. Rejects the k = 2λ' case, where complementation
/// stays symmetric.
pub fn make_type1(sym: &SetSystem, block_index: usize) -> Result<SetSystem, GeneratorError> {
    let kind = classify(sym);
    let DesignKind::Symmetric { k, lambda_prime } = kind else {
        return Err(GeneratorError::NotSymmetric {
            found: format!("{:?}", kind),
        });
    };
    if k == 2 * lambda_prime {
        return Err(GeneratorError::AverageDegenerate { k, lambda_prime });
    }
    Ok(complement_at(sym, block_index)?)
}

/// Universe-complement of every block of a symmetric (v, k, λ') design,
/// giving the symmetric (v, v-k, v-2k+λ') design.
pub fn complement_design(sym: &SetSystem) -> Result<SetSystem, GeneratorError> {
    let kind = classify(sym);
    let DesignKind::Symmetric { k, lambda_prime } = kind else {
        return Err(GeneratorError::NotSymmetric {
            found: format!("{:?}", kind),
        });
    };
    let value = sym.v() as i64 - 2 * k as i64 + lambda_prime as i64;
    if value < 1 {
        return Err(GeneratorError::ComplementUndefined { value });
    }
    let blocks: Vec<PointSet> = sym.blocks().iter().map(|b| b.complement()).collect();
    Ok(SetSystem::new(sym.v(), blocks).expect("complements of proper blocks are nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Definition oracle: every nonzero residue occurs exactly λ' times
    /// among ordered differences.
    fn assert_difference_set(ds: &DifferenceSet) {
        let v = ds.modulus;
        let mut count = vec![0usize; v];
        for &x in &ds.residues {
            for &y in &ds.residues {
                if x != y {
                    count[(x + v - y) % v] += 1;
                }
            }
        }
        assert_eq!(count[0], 0);
        for (r, &got) in count.iter().enumerate().skip(1) {
            assert_eq!(
                got, ds.lambda_prime,
                "residue {} occurs {} times, want {}",
                r, got, ds.lambda_prime
            );
        }
    }

    #[test]
    fn least_fano_difference_set() {
        let ds = find_difference_set(7, 3, 1).unwrap().unwrap();
        assert_eq!(ds.residues, vec![0, 1, 3]);
        assert_difference_set(&ds);
    }

    #[test]
    fn least_order3_difference_set() {
        let ds = find_difference_set(13, 4, 1).unwrap().unwrap();
        assert_eq!(ds.residues, vec![0, 1, 3, 9]);
        assert_difference_set(&ds);
    }

    #[test]
    fn least_biplane_difference_set() {
        let ds = find_difference_set(11, 5, 2).unwrap().unwrap();
        assert_eq!(ds.residues, vec![0, 1, 2, 4, 7]);
        assert_difference_set(&ds);
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            find_difference_set(10, 4, 1),
            Err(GeneratorError::ParameterArithmeticMismatch { .. })
        ));
        assert!(matches!(
            find_difference_set(7, 3, 0),
            Err(GeneratorError::InvalidParameters { .. })
        ));
        assert!(matches!(
            find_difference_set_bounded(211, 15, 1, 200),
            Err(GeneratorError::ModulusTooLarge { .. })
        ));
    }

    #[test]
    fn no_difference_set_reports_none() {
        // (16, 6, 2) passes the arithmetic check (30 = 2·15) but no cyclic
        // difference set with these parameters exists.
        assert_eq!(find_difference_set(16, 6, 2).unwrap(), None);
    }

    #[test]
    fn developments_classify_symmetric() {
        for (sys, k, lp) in [
            (fano(), 3, 1),
            (pg2(3).unwrap(), 4, 1),
            (pg2(4).unwrap(), 5, 1),
            (paley(11).unwrap(), 5, 2),
            (paley(19).unwrap(), 9, 4),
        ] {
            assert_eq!(
                classify(&sys),
                DesignKind::Symmetric {
                    k,
                    lambda_prime: lp
                }
            );
        }
    }

    #[test]
    fn paley_is_quadratic_residues() {
        let sys = paley(11).unwrap();
        assert_eq!(sys.block(0).to_vec(), vec![1, 3, 4, 5, 9]);
    }

    #[test]
    fn paley_rejects_bad_orders() {
        for q in [9, 13, 15, 21] {
            assert!(matches!(
                paley(q),
                Err(GeneratorError::NotPaleyPrime { .. })
            ));
        }
    }

    #[test]
    fn make_type1_from_fano() {
        let derived = make_type1(&fano(), 0).unwrap();
        assert_eq!(
            classify(&derived),
            DesignKind::Ryser {
                lambda: 2,
                r1: 5,
                r2: 3
            }
        );
    }

    #[test]
    fn make_type1_rejects_degenerate() {
        // The (7,4,2) design has k = 2λ'; complementation stays symmetric.
        let had = complement_design(&fano()).unwrap();
        assert_eq!(
            classify(&had),
            DesignKind::Symmetric {
                k: 4,
                lambda_prime: 2
            }
        );
        assert!(matches!(
            make_type1(&had, 0),
            Err(GeneratorError::AverageDegenerate {
                k: 4,
                lambda_prime: 2
            })
        ));
    }

    #[test]
    fn complement_design_involutes() {
        let sys = pg2(3).unwrap();
        let comp = complement_design(&sys).unwrap();
        assert_eq!(
            classify(&comp),
            DesignKind::Symmetric {
                k: 9,
                lambda_prime: 6
            }
        );
        assert_eq!(complement_design(&comp).unwrap(), sys);
    }

    #[test]
    fn make_type1_rejects_ryser_input() {
        let derived = make_type1(&fano(), 0).unwrap();
        assert!(matches!(
            make_type1(&derived, 0),
            Err(GeneratorError::NotSymmetric { .. })
        ));
    }
}
