//! Report shapes shared by the human and JSON output paths. Every numeric
//! field is exact: integers stay integers, rationals are "p/q" strings and
//! big integers are decimal strings.

use ryser_core::complement::BlockClass;
use ryser_core::design::{classify, DesignKind};
use ryser_core::invariants::{
    block_profile, check_sum_identity, compute_ledger, rational_str, ParameterLedger,
};
use ryser_core::SetSystem;
use serde::Serialize;
use std::fmt::Write as _;

pub fn class_str(class: &BlockClass) -> &'static str {
    match class {
        BlockClass::Small { .. } => "small",
        BlockClass::Average => "average",
        BlockClass::Large { .. } => "large",
    }
}

/// The ledger as it appears in JSON reports.
#[derive(Debug, Clone, Serialize)]
pub struct LedgerFields {
    pub v: usize,
    pub lambda: usize,
    pub r1: usize,
    pub r2: usize,
    pub e1: usize,
    pub e2: usize,
    pub e1_points: Vec<usize>,
    pub e2_points: Vec<usize>,
    pub rho: String,
    pub c: u64,
    pub d: u64,
    pub g: u64,
    pub a: i64,
    pub big_d: i64,
}

impl LedgerFields {
    pub fn from_ledger(ledger: &ParameterLedger) -> Self {
        Self {
            v: ledger.v,
            lambda: ledger.lambda,
            r1: ledger.r1,
            r2: ledger.r2,
            e1: ledger.e1,
            e2: ledger.e2,
            e1_points: ledger.e1_points.to_vec(),
            e2_points: ledger.e2_points.to_vec(),
            rho: rational_str(&ledger.rho),
            c: ledger.c,
            d: ledger.d,
            g: ledger.g,
            a: ledger.a,
            big_d: ledger.big_d,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerifyReport {
    Ryser {
        #[serde(flatten)]
        ledger: LedgerFields,
        /// The parameter identities hold by construction of the ledger.
        parameter_identities_pass: bool,
        reciprocal_sum_lhs: String,
        reciprocal_sum_rhs: String,
        reciprocal_sum_pass: bool,
        /// Per-block form identities (size, tau splits, weighted count).
        block_identities_pass: bool,
        clean: bool,
    },
    Symmetric {
        v: usize,
        k: usize,
        lambda_prime: usize,
        clean: bool,
    },
    NotADesign {
        v: usize,
        violations: Vec<String>,
        clean: bool,
    },
    /// A design classified as Ryser but failing a derived identity. No such
    /// input exists if the theory is right; the variant keeps the tool
    /// honest instead of trusting it.
    IdentityFailure {
        v: usize,
        message: String,
        clean: bool,
    },
}

impl VerifyReport {
    pub fn clean(&self) -> bool {
        match self {
            VerifyReport::Ryser { clean, .. }
            | VerifyReport::Symmetric { clean, .. }
            | VerifyReport::NotADesign { clean, .. }
            | VerifyReport::IdentityFailure { clean, .. } => *clean,
        }
    }

    pub fn build(system: &SetSystem) -> Self {
        let v = system.v();
        match classify(system) {
            DesignKind::Symmetric { k, lambda_prime } => VerifyReport::Symmetric {
                v,
                k,
                lambda_prime,
                clean: true,
            },
            DesignKind::NotADesign { violations } => VerifyReport::NotADesign {
                v,
                violations: violations.iter().map(|x| x.to_string()).collect(),
                clean: false,
            },
            DesignKind::Ryser { .. } => match compute_ledger(system) {
                Err(e) => VerifyReport::IdentityFailure {
                    v,
                    message: e.to_string(),
                    clean: false,
                },
                Ok(ledger) => {
                    let sum = check_sum_identity(system, &ledger);
                    let mut block_failure = None;
                    for i in 0..v {
                        if let Err(e) = block_profile(&ledger, system, i) {
                            block_failure = Some(e.to_string());
                            break;
                        }
                    }
                    let clean = sum.pass() && block_failure.is_none();
                    VerifyReport::Ryser {
                        ledger: LedgerFields::from_ledger(&ledger),
                        parameter_identities_pass: true,
                        reciprocal_sum_lhs: rational_str(&sum.lhs),
                        reciprocal_sum_rhs: rational_str(&sum.rhs),
                        reciprocal_sum_pass: sum.pass(),
                        block_identities_pass: block_failure.is_none(),
                        clean,
                    }
                }
            },
        }
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        match self {
            VerifyReport::Ryser {
                ledger,
                parameter_identities_pass,
                reciprocal_sum_lhs,
                reciprocal_sum_rhs,
                reciprocal_sum_pass,
                block_identities_pass,
                clean,
            } => {
                let _ = writeln!(out, "classification: Ryser design");
                let _ = writeln!(
                    out,
                    "v = {}, lambda = {}, r1 = {}, r2 = {}",
                    ledger.v, ledger.lambda, ledger.r1, ledger.r2
                );
                let _ = writeln!(
                    out,
                    "e1 = {} {:?}, e2 = {} {:?}",
                    ledger.e1, ledger.e1_points, ledger.e2, ledger.e2_points
                );
                let _ = writeln!(
                    out,
                    "rho = {} (c = {}, d = {}, g = {}, a = {}, D = {})",
                    ledger.rho, ledger.c, ledger.d, ledger.g, ledger.a, ledger.big_d
                );
                let _ = writeln!(
                    out,
                    "parameter identities: {}",
                    pass_str(*parameter_identities_pass)
                );
                let _ = writeln!(
                    out,
                    "reciprocal size sum: {} = {} ({})",
                    reciprocal_sum_lhs,
                    reciprocal_sum_rhs,
                    pass_str(*reciprocal_sum_pass)
                );
                let _ = writeln!(
                    out,
                    "block form identities: {}",
                    pass_str(*block_identities_pass)
                );
                let _ = writeln!(out, "clean: {}", yes_no(*clean));
            }
            VerifyReport::Symmetric {
                v,
                k,
                lambda_prime,
                clean,
            } => {
                let _ = writeln!(out, "classification: symmetric design");
                let _ = writeln!(out, "v = {}, k = {}, lambda' = {}", v, k, lambda_prime);
                let _ = writeln!(out, "clean: {}", yes_no(*clean));
            }
            VerifyReport::NotADesign {
                v,
                violations,
                clean,
            } => {
                let _ = writeln!(out, "classification: not a design (v = {})", v);
                for viol in violations {
                    let _ = writeln!(out, "  violation: {}", viol);
                }
                let _ = writeln!(out, "clean: {}", yes_no(*clean));
            }
            VerifyReport::IdentityFailure { v, message, clean } => {
                let _ = writeln!(out, "classification: Ryser design (v = {})", v);
                let _ = writeln!(out, "identity failure: {}", message);
                let _ = writeln!(out, "clean: {}", yes_no(*clean));
            }
        }
        out
    }
}

pub fn pass_str(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    pub index: usize,
    pub size: usize,
    pub t: i64,
    pub tau1: usize,
    pub tau2: usize,
    pub class: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileReport {
    #[serde(flatten)]
    pub ledger: LedgerFields,
    pub blocks: Vec<ProfileRow>,
}

impl ProfileReport {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "v = {}, lambda = {}, r1 = {}, r2 = {}, a = {}",
            self.ledger.v, self.ledger.lambda, self.ledger.r1, self.ledger.r2, self.ledger.a
        );
        let _ = writeln!(out, "{:>5} {:>5} {:>4} {:>5} {:>5}  class", "block", "size", "t", "tau1", "tau2");
        for row in &self.blocks {
            let _ = writeln!(
                out,
                "{:>5} {:>5} {:>4} {:>5} {:>5}  {}",
                row.index, row.size, row.t, row.tau1, row.tau2, row.class
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassMemberReport {
    pub index: usize,
    pub provenance: String,
    pub kind: String,
    pub block_sizes: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub v: usize,
    pub size: usize,
    /// v + 1: the provable ceiling on the class size.
    pub max_size: usize,
    pub symmetric_members: usize,
    pub members: Vec<ClassMemberReport>,
}

impl ClassReport {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "class size: {} (ceiling {}), symmetric members: {}",
            self.size, self.max_size, self.symmetric_members
        );
        for m in &self.members {
            let _ = writeln!(
                out,
                "  member {:>2}: {} | {} | sizes {:?}",
                m.index, m.provenance, m.kind, m.block_sizes
            );
        }
        out
    }
}

pub fn kind_summary(kind: &DesignKind) -> String {
    match kind {
        DesignKind::Symmetric { k, lambda_prime } => {
            format!("symmetric (k = {}, lambda' = {})", k, lambda_prime)
        }
        DesignKind::Ryser { lambda, r1, r2 } => {
            format!("ryser (lambda = {}, r1 = {}, r2 = {})", lambda, r1, r2)
        }
        DesignKind::NotADesign { .. } => "not a design".to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub block_index: usize,
    /// 1 when the block equals the first point class, 2 for the second.
    pub point_class: u8,
    pub v: usize,
    pub k: usize,
    pub lambda_prime: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Type1Report {
    pub type1: bool,
    pub witnesses: Vec<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slow_path_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slow_path_symmetric_members: Option<usize>,
}

impl Type1Report {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "type1: {}", yes_no(self.type1));
        for w in &self.witnesses {
            let _ = writeln!(
                out,
                "  witness: block {} equals point class E{}; complementing there \
                 yields a symmetric ({}, {}, {}) design",
                w.block_index, w.point_class, w.v, w.k, w.lambda_prime
            );
        }
        if !self.type1 {
            let _ = writeln!(
                out,
                "  no block equals a point class: Type-2 candidate"
            );
        }
        if let Some(agrees) = self.slow_path_agrees {
            let _ = writeln!(
                out,
                "slow path: {} ({} symmetric member(s) in the class)",
                if agrees { "agrees" } else { "DISAGREES" },
                self.slow_path_symmetric_members.unwrap_or(0)
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoexistenceRow {
    pub provenance: String,
    pub large_index: usize,
    pub small_index: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub holds: bool,
    pub violations: Vec<CoexistenceRow>,
}

impl HypothesisReport {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "large/small coexistence hypothesis: {}",
            if self.holds { "holds" } else { "VIOLATED" }
        );
        for row in &self.violations {
            let _ = writeln!(
                out,
                "  member ({}): block {} is large and block {} is small",
                row.provenance, row.large_index, row.small_index
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum EvenBlockReport {
    Found {
        pair: (usize, usize),
        even_block_index: usize,
        even_block_size: usize,
        blocks: Vec<Vec<usize>>,
    },
    NoEqualPair,
}

impl EvenBlockReport {
    pub fn render_human(&self) -> String {
        match self {
            EvenBlockReport::Found {
                pair,
                even_block_index,
                even_block_size,
                ..
            } => format!(
                "complemented at block {}; block {} of the result has even size {}\n",
                pair.0, even_block_index, even_block_size
            ),
            EvenBlockReport::NoEqualPair => {
                "no two blocks share a size; construction not applicable\n".to_string()
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "pattern")]
pub enum TwoSizeJson {
    #[serde(rename = "two-size")]
    Pattern {
        v: usize,
        lambda: usize,
        k: usize,
        alpha: usize,
        beta: usize,
        product_identity_holds: bool,
        p_alpha: String,
        p_one: String,
        p_v: String,
        symmetric_relation_at_v: bool,
    },
    #[serde(rename = "other")]
    NotTwoSize { sizes: Vec<(usize, usize)> },
}

impl TwoSizeJson {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        match self {
            TwoSizeJson::Pattern {
                v,
                lambda,
                k,
                alpha,
                beta,
                product_identity_holds,
                p_alpha,
                p_one,
                p_v,
                symmetric_relation_at_v,
            } => {
                let _ = writeln!(
                    out,
                    "two-size pattern: sizes {{{}, {}}} with alpha = {}, beta = {}",
                    k,
                    2 * lambda,
                    alpha,
                    beta
                );
                let _ = writeln!(out, "v = {}, lambda = {}", v, lambda);
                let _ = writeln!(
                    out,
                    "product identity r1*r2 = (k - lambda)*alpha + lambda*(beta + 1): {}",
                    pass_str(*product_identity_holds)
                );
                let _ = writeln!(out, "P(alpha) = {}", p_alpha);
                let _ = writeln!(out, "P(1) = {}", p_one);
                let _ = writeln!(
                    out,
                    "P(v) = {} (symmetric relation at v: {})",
                    p_v,
                    yes_no(*symmetric_relation_at_v)
                );
            }
            TwoSizeJson::NotTwoSize { sizes } => {
                let _ = writeln!(out, "not a two-size pattern; size multiset:");
                for (size, count) in sizes {
                    let _ = writeln!(out, "  size {} x{}", size, count);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchTripleJson {
    pub r1: usize,
    pub r2: usize,
    pub e1: usize,
    pub e2: usize,
    pub allowed_sizes: Vec<usize>,
    pub nodes: u64,
    pub designs_found: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RejectedPairJson {
    pub r1: usize,
    pub r2: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FoundDesignJson {
    pub blocks: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
    pub r1: usize,
    pub r2: usize,
    pub type1: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchJson {
    pub v: usize,
    pub lambda: usize,
    pub admissible: Vec<SearchTripleJson>,
    pub rejected: Vec<RejectedPairJson>,
    pub designs: Vec<FoundDesignJson>,
    pub type2_candidates: usize,
    pub nodes_expanded: u64,
    pub completed: bool,
}

impl SearchJson {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "search cell: v = {}, lambda = {}", self.v, self.lambda);
        if self.admissible.is_empty() {
            let _ = writeln!(out, "no admissible replication pair");
        }
        for t in &self.admissible {
            let _ = writeln!(
                out,
                "pair r1 = {}, r2 = {}: e1 = {}, e2 = {}, sizes {:?}, nodes {}, designs {}",
                t.r1, t.r2, t.e1, t.e2, t.allowed_sizes, t.nodes, t.designs_found
            );
        }
        for r in &self.rejected {
            let _ = writeln!(out, "pair r1 = {}, r2 = {} rejected: {}", r.r1, r.r2, r.reason);
        }
        let _ = writeln!(out, "designs found: {}", self.designs.len());
        for (i, d) in self.designs.iter().enumerate() {
            let _ = writeln!(
                out,
                "  design {}: sizes {:?}, type1 {}, blocks {:?}",
                i,
                d.block_sizes,
                yes_no(d.type1),
                d.blocks
            );
        }
        let _ = writeln!(out, "type-2 candidates: {}", self.type2_candidates);
        let _ = writeln!(out, "nodes expanded: {}", self.nodes_expanded);
        let _ = writeln!(out, "completed: {}", yes_no(self.completed));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanCellJson {
    pub v: usize,
    pub lambda: usize,
    pub designs_found: usize,
    pub type1_count: usize,
    pub type2_count: usize,
    pub completed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanJson {
    pub v_max: usize,
    pub lambda_max: usize,
    pub cells: Vec<ScanCellJson>,
    pub type2_total: usize,
    pub nodes_expanded: u64,
    pub completed: bool,
}

impl ScanJson {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "scan up to v = {}, lambda = {}",
            self.v_max, self.lambda_max
        );
        let _ = writeln!(out, "{:>3} {:>7} {:>8} {:>6} {:>6}  complete", "v", "lambda", "designs", "type1", "type2");
        for cell in &self.cells {
            let _ = writeln!(
                out,
                "{:>3} {:>7} {:>8} {:>6} {:>6}  {}",
                cell.v,
                cell.lambda,
                cell.designs_found,
                cell.type1_count,
                cell.type2_count,
                yes_no(cell.completed)
            );
        }
        let _ = writeln!(out, "type-2 total: {}", self.type2_total);
        let _ = writeln!(out, "nodes expanded: {}", self.nodes_expanded);
        let _ = writeln!(out, "completed: {}", yes_no(self.completed));
        out
    }
}
