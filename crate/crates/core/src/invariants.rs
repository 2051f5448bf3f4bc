//! Parameter ledger and arithmetic identities of a Ryser design.
//!
//! From the replication pair (r1, r2) with r1 + r2 = v + 1 the ledger derives
//! the replication ratio ρ = (r1-1)/(r2-1) = c/d in lowest terms, the common
//! factor g with r1-1 = cg and r2-1 = dg (so v-1 = (c+d)g), the difference
//! a = c - d, and the point-class sizes e1, e2. Every identity tying these
//! together is checked at construction; a violation means the input is not a
//! genuine Ryser design (or the library has a bug), never a rounding issue:
//! all arithmetic is exact, big-integer and big-rational.

use crate::bitset::PointSet;
use crate::complement::{block_class, BlockClass};
use crate::design::{classify, DesignKind, SetSystem};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Renders a rational as "p/q", denominator always present ("2/1", "-3/2").
pub fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("operation requires a Ryser design; classification: {found}")]
    NotRyser { found: String },
    #[error("identity violated: {name} (lhs = {lhs}, rhs = {rhs})")]
    IdentityViolation {
        name: &'static str,
        lhs: String,
        rhs: String,
    },
    #[error("block size {size} is not congruent to 2*lambda = {two_lambda} modulo a = {a}")]
    NonIntegralT {
        size: usize,
        two_lambda: usize,
        a: i64,
    },
    #[error("block index {index} out of range for {v} blocks")]
    IndexOutOfRange { index: usize, v: usize },
    #[error("quadratic undefined when k = 2*lambda (k = {k}, lambda = {lambda})")]
    DegenerateQuadratic { k: i64, lambda: i64 },
}

fn kind_string(kind: &DesignKind) -> String {
    match kind {
        DesignKind::Symmetric { k, lambda_prime } => {
            format!("symmetric (k = {}, lambda' = {})", k, lambda_prime)
        }
        DesignKind::Ryser { lambda, r1, r2 } => {
            format!("Ryser (lambda = {}, r1 = {}, r2 = {})", lambda, r1, r2)
        }
        DesignKind::NotADesign { violations } => {
            let reasons = violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            format!("not a design ({})", reasons)
        }
    }
}

/// Derived parameters of a Ryser design, identity-checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterLedger {
    pub v: usize,
    pub lambda: usize,
    pub r1: usize,
    pub r2: usize,
    pub e1: usize,
    pub e2: usize,
    pub e1_points: PointSet,
    pub e2_points: PointSet,
    /// ρ = (r1-1)/(r2-1) = c/d in lowest terms; always > 1.
    pub rho: Rational,
    pub c: u64,
    pub d: u64,
    pub g: u64,
    /// a = c - d; positive, and coprime to both c and d.
    pub a: i64,
    /// e1 - r2.
    pub big_d: i64,
}

fn check_eq(name: &'static str, lhs: BigInt, rhs: BigInt) -> Result<(), InvariantError> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(InvariantError::IdentityViolation {
            name,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

/// Classifies, splits the points by replication, derives (ρ, c, d, g, a) and
/// verifies every identity the parameters must satisfy.
pub fn compute_ledger(system: &SetSystem) -> Result<ParameterLedger, InvariantError> {
    let kind = classify(system);
    let DesignKind::Ryser { lambda, r1, r2 } = kind else {
        return Err(InvariantError::NotRyser {
            found: kind_string(&kind),
        });
    };
    let v = system.v();
    let profile = system.replication_profile();
    let split = profile
        .split
        .expect("Ryser classification guarantees a two-value replication split");
    let (e1_points, e2_points) = (split.e1_points, split.e2_points);
    let (e1, e2) = (e1_points.len(), e2_points.len());

    let g = (r1 as u64 - 1).gcd(&(r2 as u64 - 1));
    let c = (r1 as u64 - 1) / g;
    let d = (r2 as u64 - 1) / g;
    let a = c as i64 - d as i64;
    let rho = BigRational::new(BigInt::from(c), BigInt::from(d));

    let big = |x: usize| BigInt::from(x);
    check_eq("r1 + r2 = v + 1", big(r1) + big(r2), big(v) + 1)?;
    check_eq("v - 1 = (c + d) * g", big(v) - 1, BigInt::from((c + d) * g))?;
    check_eq("gcd(c, d) = 1", BigInt::from(c.gcd(&d)), BigInt::one())?;
    // c, d, a are pairwise coprime: any common factor of two of them divides
    // the third through a = c - d.
    check_eq(
        "gcd(c, a) = 1",
        BigInt::from(c.gcd(&(a as u64))),
        BigInt::one(),
    )?;
    check_eq(
        "gcd(d, a) = 1",
        BigInt::from(d.gcd(&(a as u64))),
        BigInt::one(),
    )?;
    check_eq(
        "(c - d) * e1 = lambda * (c + d) - d * r2",
        BigInt::from(a) * big(e1),
        big(lambda) * BigInt::from(c + d) - BigInt::from(d) * big(r2),
    )?;
    check_eq(
        "(c - d) * e2 = c * r1 - lambda * (c + d)",
        BigInt::from(a) * big(e2),
        BigInt::from(c) * big(r1) - big(lambda) * BigInt::from(c + d),
    )?;
    check_eq(
        "e1 * r1 + e2 * r2 = lambda * (v - 1) + r1 * r2",
        big(e1) * big(r1) + big(e2) * big(r2),
        big(lambda) * (big(v) - 1) + big(r1) * big(r2),
    )?;
    check_eq(
        "e1 * r1 * (r1 - 1) + e2 * r2 * (r2 - 1) = lambda * v * (v - 1)",
        big(e1) * big(r1) * (big(r1) - 1) + big(e2) * big(r2) * (big(r2) - 1),
        big(lambda) * big(v) * (big(v) - 1),
    )?;

    Ok(ParameterLedger {
        v,
        lambda,
        r1,
        r2,
        e1,
        e2,
        e1_points,
        e2_points,
        rho,
        c,
        d,
        g,
        a,
        big_d: e1 as i64 - r2 as i64,
    })
}

/// Both sides of the harmonic block-size identity
/// Σ 1/(k_m - λ) = (ρ+1)²/ρ - 1/λ, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumIdentityReport {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl SumIdentityReport {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_sum_identity(system: &SetSystem, ledger: &ParameterLedger) -> SumIdentityReport {
    let lambda = BigInt::from(ledger.lambda);
    let mut lhs = BigRational::zero();
    for b in system.blocks() {
        let excess = BigInt::from(b.len()) - &lambda;
        lhs += BigRational::new(BigInt::one(), excess);
    }
    let rho = &ledger.rho;
    let rho_plus = rho + BigRational::one();
    let rhs = &rho_plus * &rho_plus / rho - BigRational::new(BigInt::one(), lambda);
    SumIdentityReport { lhs, rhs }
}

/// Shape of one block against the ledger: its size written as 2λ + t·a and
/// its intersections with the two point classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockProfile {
    pub index: usize,
    pub size: usize,
    pub t: i64,
    pub tau1: usize,
    pub tau2: usize,
    pub class: BlockClass,
}

/// Computes and verifies the block-form identities for one block:
/// size = 2λ + t·a, τ1 = λ - t·d, τ2 = λ + t·c, and the replication-weighted
/// count (r1-1)·τ1 + (r2-1)·τ2 = λ(v-1).
pub fn block_profile(
    ledger: &ParameterLedger,
    system: &SetSystem,
    index: usize,
) -> Result<BlockProfile, InvariantError> {
    if index >= system.v() {
        return Err(InvariantError::IndexOutOfRange {
            index,
            v: system.v(),
        });
    }
    let block = system.block(index);
    let size = block.len();
    let class = block_class(ledger, block)?;
    let t = class.t();
    let tau1 = block.intersection_len(&ledger.e1_points);
    let tau2 = block.intersection_len(&ledger.e2_points);

    let big = BigInt::from;
    check_eq(
        "tau1 = lambda - t * d",
        big(tau1 as i64),
        big(ledger.lambda as i64) - big(t) * big(ledger.d as i64),
    )?;
    check_eq(
        "tau2 = lambda + t * c",
        big(tau2 as i64),
        big(ledger.lambda as i64) + big(t) * big(ledger.c as i64),
    )?;
    check_eq(
        "(r1 - 1) * tau1 + (r2 - 1) * tau2 = lambda * (v - 1)",
        big(ledger.r1 as i64 - 1) * big(tau1 as i64) + big(ledger.r2 as i64 - 1) * big(tau2 as i64),
        big(ledger.lambda as i64) * big(ledger.v as i64 - 1),
    )?;

    Ok(BlockProfile {
        index,
        size,
        t,
        tau1,
        tau2,
        class,
    })
}

/// The block-count quadratic of a two-size design:
/// P(α) = α²(k-2λ)² - α(k-2λ)[v + (k-2λ)(v+1)] + (k-λ)v(v+1-4λ).
/// Undefined when k = 2λ.
pub fn evaluate_quadratic(
    v: i64,
    lambda: i64,
    k: i64,
    alpha: i64,
) -> Result<BigInt, InvariantError> {
    if k == 2 * lambda {
        return Err(InvariantError::DegenerateQuadratic { k, lambda });
    }
    let big = BigInt::from;
    let m = big(k) - big(2 * lambda);
    let alpha = big(alpha);
    let term1 = &alpha * &alpha * &m * &m;
    let term2 = &alpha * &m * (big(v) + &m * big(v + 1));
    let term3 = (big(k) - big(lambda)) * big(v) * big(v + 1 - 4 * lambda);
    Ok(term1 - term2 + term3)
}

/// Analysis of a design whose sizes are exactly {k, 2λ} with k ≠ 2λ.
#[derive(Debug, Clone)]
pub struct TwoSizeReport {
    pub v: usize,
    pub lambda: usize,
    /// The non-average size.
    pub k: usize,
    /// Count of size-k blocks.
    pub alpha: usize,
    /// Count of size-2λ blocks.
    pub beta: usize,
    /// r1·r2 = (k-λ)α + λ(β+1).
    pub product_identity_holds: bool,
    pub p_alpha: BigInt,
    pub p_one: BigInt,
    /// Whether k(k-1) = λ(v-1); exactly then α = v is also a root.
    pub symmetric_relation_at_v: bool,
    pub p_v: BigInt,
}

#[derive(Debug, Clone)]
pub enum TwoSizeAnalysis {
    Pattern(TwoSizeReport),
    /// Size multiset as (size, multiplicity), ascending by size.
    NotTwoSizePattern { sizes: Vec<(usize, usize)> },
}

/// Checks whether the design's sizes are exactly {k, 2λ} with k ≠ 2λ and, if
/// so, evaluates the block-count quadratic at α, 1, and v. Report-style: a
/// design outside the pattern is a result, not an error.
pub fn two_block_size_analysis(system: &SetSystem) -> Result<TwoSizeAnalysis, InvariantError> {
    let ledger = compute_ledger(system)?;
    let mut multiplicity: Vec<(usize, usize)> = Vec::new();
    for b in system.blocks() {
        let s = b.len();
        match multiplicity.iter_mut().find(|(size, _)| *size == s) {
            Some((_, m)) => *m += 1,
            None => multiplicity.push((s, 1)),
        }
    }
    multiplicity.sort_unstable();

    let two_lambda = 2 * ledger.lambda;
    let pattern = multiplicity.len() == 2 && multiplicity.iter().any(|&(s, _)| s == two_lambda);
    if !pattern {
        return Ok(TwoSizeAnalysis::NotTwoSizePattern {
            sizes: multiplicity,
        });
    }

    let (k, alpha) = multiplicity
        .iter()
        .copied()
        .find(|&(s, _)| s != two_lambda)
        .expect("two distinct sizes, one of them 2*lambda");
    let beta = system.v() - alpha;

    let big = BigInt::from;
    let product_identity_holds = big(ledger.r1) * big(ledger.r2)
        == big(k - ledger.lambda) * big(alpha) + big(ledger.lambda) * big(beta + 1);

    let (v, lambda) = (ledger.v as i64, ledger.lambda as i64);
    let p = |x: i64| evaluate_quadratic(v, lambda, k as i64, x);
    let p_alpha = p(alpha as i64)?;
    let p_one = p(1)?;
    let p_v = p(v)?;
    let symmetric_relation_at_v =
        big(k) * big(k - 1) == big(ledger.lambda) * big(ledger.v - 1);

    Ok(TwoSizeAnalysis::Pattern(TwoSizeReport {
        v: ledger.v,
        lambda: ledger.lambda,
        k,
        alpha,
        beta,
        product_identity_holds,
        p_alpha,
        p_one,
        symmetric_relation_at_v,
        p_v,
    }))
}

/// P(v) collapses to v·[λ(v-1) - k(k-1)]; used to cross-check the evaluator.
pub fn quadratic_at_v_closed_form(v: i64, lambda: i64, k: i64) -> BigInt {
    let big = BigInt::from;
    big(v) * (big(lambda) * big(v - 1) - big(k) * big(k - 1))
}
