//! Exhaustive desk-scale search for Ryser designs, plus canonical forms.
//!
//! The search fixes (v, λ), derives every feasible replication pair
//! (r1, r2) with r1 + r2 = v + 1 by integer arithmetic, and then runs an
//! orderly backtracking enumeration per pair: blocks are chosen in strictly
//! ascending set order, and a partial sequence is extended only while it is
//! the lexicographically least relabeling of itself. Every isomorphism
//! class is therefore produced exactly once, as its canonical
//! representative. Solutions are cross-checked against the replication
//! profile before being reported, and each found design is tested for
//! Type-1 membership.
//!
//! The smallest replication number is at least 2: a point lying in a single
//! block cannot supply that block's λ-point intersections with the other
//! v - 1 blocks.

use crate::bitset::{mask_seq_cmp, PointSet};
use crate::design::{classify, DesignKind, SetSystem};
use crate::equivalence::{is_type1, EquivalenceError};
use num::integer::{gcd, lcm};
use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Hard cap on the universe size the exhaustive search accepts.
pub const SEARCH_V_CAP: usize = 12;
/// Hard cap on the universe size the conjecture scan sweeps.
pub const SCAN_V_CAP: usize = 8;
/// Largest universe for which `canonical_form` is exact rather than
/// heuristic.
pub const EXACT_CANONICAL_V_MAX: usize = 9;
/// Default bound on candidate examinations per search call.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("universe size {v} exceeds the search cap {max}")]
    VTooLarge { v: usize, max: usize },
    #[error("universe size must be at least 2, got {v}")]
    VTooSmall { v: usize },
    #[error("the intersection number must be at least 1")]
    LambdaZero,
    #[error("scan sweeps up to {cap} points; got v_max = {v_max}")]
    ScanTooLarge { v_max: usize, cap: usize },
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
}

/// Knobs for `search_ryser` and `conjecture_scan`.
///
/// With `workers <= 1` and an unexhausted budget the run is fully
/// deterministic. Completed runs are deterministic at any worker count;
/// only the partial results of a budget-exhausted parallel run depend on
/// scheduling.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Upper bound on candidate examinations; `None` removes the bound.
    pub node_budget: Option<u64>,
    /// Wall-clock cap; `None` removes it. A `conjecture_scan` shares one
    /// deadline across all its cells. Exceeding it marks the run incomplete
    /// rather than failing it.
    pub time_budget: Option<Duration>,
    /// Worker threads for the subtree tasks; 0 and 1 both mean sequential.
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            node_budget: Some(DEFAULT_NODE_BUDGET),
            time_budget: None,
            workers: 1,
        }
    }
}

/// One feasible replication pair for fixed (v, λ), with everything the
/// enumeration needs precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleTriple {
    pub lambda: usize,
    pub r1: usize,
    pub r2: usize,
    /// Point-class sizes: e1 points of replication r1, e2 of r2.
    pub e1: usize,
    pub e2: usize,
    /// (r1 - 1)/(r2 - 1) = c/d in lowest terms; g is the common factor and
    /// a = c - d.
    pub c: usize,
    pub d: usize,
    pub g: usize,
    pub a: usize,
    /// Block sizes that fit the block-form constraints, ascending.
    pub allowed_sizes: Vec<usize>,
}

/// Outcome of feasibility screening for one replication pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripleVerdict {
    Admissible(AdmissibleTriple),
    Rejected {
        r1: usize,
        r2: usize,
        reason: String,
    },
}

/// Screens every replication pair r1 > r2 >= 2 with r1 + r2 = v + 1.
pub fn replication_cases(v: usize, lambda: usize) -> Vec<TripleVerdict> {
    let mut out = Vec::new();
    let mut r2 = 2usize;
    while 2 * r2 < v + 1 {
        let r1 = v + 1 - r2;
        out.push(derive_triple(v, lambda, r1, r2));
        r2 += 1;
    }
    out
}

fn derive_triple(v: usize, lambda: usize, r1: usize, r2: usize) -> TripleVerdict {
    let reject = |reason: String| TripleVerdict::Rejected { r1, r2, reason };
    let g = gcd(r1 - 1, r2 - 1);
    let c = (r1 - 1) / g;
    let d = (r2 - 1) / g;
    let a = c - d;
    debug_assert!(a >= 1, "r1 > r2 forces c > d");
    debug_assert_eq!((c + d) * g, v - 1);

    let num1 = lambda as i64 * (c + d) as i64 - (d * r2) as i64;
    if num1 <= 0 || num1 % a as i64 != 0 {
        return reject(format!(
            "point-class equation (c-d)*e1 = lambda*(c+d) - d*r2 has no positive integer solution (c={c}, d={d})"
        ));
    }
    let e1 = (num1 / a as i64) as usize;
    if e1 >= v {
        return reject("second point class would be empty".to_string());
    }
    let e2 = v - e1;
    debug_assert_eq!(a * e2, c * r1 - lambda * (c + d));
    debug_assert_eq!(
        e1 * r1 * (r1 - 1) + e2 * r2 * (r2 - 1),
        lambda * v * (v - 1)
    );

    // Block-form menu: size 2λ + t·a splits as λ - t·d points in the first
    // class and λ + t·c in the second, so both parts must fit their class.
    let mut sizes: Vec<usize> = Vec::new();
    let lam = lambda as i64;
    for t in -lam..=lam {
        let tau1 = lam - t * d as i64;
        let tau2 = lam + t * c as i64;
        if tau1 < 0 || tau1 > e1 as i64 || tau2 < 0 || tau2 > e2 as i64 {
            continue;
        }
        let k = 2 * lam + t * a as i64;
        debug_assert_eq!(k, tau1 + tau2);
        if k <= lam || k > v as i64 {
            continue;
        }
        sizes.push(k as usize);
    }
    if sizes.len() < 2 {
        return reject("fewer than two feasible block sizes".to_string());
    }

    if let Err(reason) = harmonic_scale(v, lambda, c, d, &sizes) {
        return reject(reason);
    }

    let size_total = e1 * r1 + e2 * r2;
    let min_size = sizes[0];
    let max_size = *sizes.last().unwrap();
    if size_total < v * min_size || size_total > v * max_size {
        return reject("total block size is out of range for the feasible sizes".to_string());
    }

    TripleVerdict::Admissible(AdmissibleTriple {
        lambda,
        r1,
        r2,
        e1,
        e2,
        c,
        d,
        g,
        a,
        allowed_sizes: sizes,
    })
}

/// Scales the reciprocal-size identity Σ 1/(k - λ) = (c+d)²/(cd) - 1/λ to
/// integers over the given size menu. Returns (L, target, min_term,
/// max_term) or a reason no design can use this menu.
fn harmonic_scale(
    v: usize,
    lambda: usize,
    c: usize,
    d: usize,
    sizes: &[usize],
) -> Result<(u64, u64, u64, u64), String> {
    let l: u64 = sizes
        .iter()
        .map(|&k| (k - lambda) as u64)
        .fold(1, lcm);
    let num = lambda as u64 * ((c + d) * (c + d)) as u64 - (c * d) as u64;
    let den = (c * d * lambda) as u64;
    if !(l * num).is_multiple_of(den) {
        return Err("reciprocal-size identity has no integral solution at this scale".to_string());
    }
    let target = l * num / den;
    let min_term = l / (sizes.last().unwrap() - lambda) as u64;
    let max_term = l / (sizes[0] - lambda) as u64;
    if target < v as u64 * min_term || target > v as u64 * max_term {
        return Err("reciprocal-size identity is unsatisfiable with the feasible sizes".to_string());
    }
    Ok((l, target, min_term, max_term))
}

// ---------------------------------------------------------------------------
// Canonical forms.
//
// The canonical representative of a system is the lexicographically least
// sorted block sequence over all relabelings of the points, comparing
// blocks by their ascending member sequences. The minimization works on a
// pairing partition: ordered cells (O, N) mean the points of O map onto the
// labels of N, with the point-level assignment still free. Committing a
// block to its minimal image splits each cell and keeps the new-label sets
// consecutive, so per-cell greedy choices are globally least.
// ---------------------------------------------------------------------------

type Cell = (u64, u64);

fn full_mask(v: usize) -> u64 {
    if v == 64 {
        u64::MAX
    } else {
        (1u64 << v) - 1
    }
}

fn lowest_bits(mask: u64, k: usize) -> u64 {
    debug_assert!(mask.count_ones() as usize >= k);
    let mut m = mask;
    let mut acc = 0u64;
    for _ in 0..k {
        let b = m & m.wrapping_neg();
        acc |= b;
        m ^= b;
    }
    acc
}

/// Least possible image of `x` under any relabeling consistent with the
/// cells.
fn min_image(x: u64, cells: &[Cell]) -> u64 {
    let mut img = 0u64;
    for &(old, new) in cells {
        let k = (x & old).count_ones() as usize;
        if k > 0 {
            img |= lowest_bits(new, k);
        }
    }
    img
}

/// Splits the cells so that `x` maps exactly onto its minimal image.
fn commit(x: u64, cells: &[Cell]) -> Vec<Cell> {
    let mut out = Vec::with_capacity(cells.len() + 2);
    for &(old, new) in cells {
        let inside = x & old;
        if inside == 0 || inside == old {
            out.push((old, new));
            continue;
        }
        let low = lowest_bits(new, inside.count_ones() as usize);
        out.push((inside, low));
        out.push((old & !inside, new & !low));
    }
    out
}

/// True when no relabeling consistent with the cells makes the sorted image
/// of the sequence lexicographically smaller than the sequence itself.
fn no_smaller_image(seq: &[u64], used: &mut [bool], idx: usize, cells: &[Cell]) -> bool {
    if idx == seq.len() {
        return true;
    }
    let target = seq[idx];
    let mut ties: Vec<usize> = Vec::new();
    for (bi, &x) in seq.iter().enumerate() {
        if used[bi] {
            continue;
        }
        match mask_seq_cmp(min_image(x, cells), target) {
            Ordering::Less => return false,
            Ordering::Equal => ties.push(bi),
            Ordering::Greater => {}
        }
    }
    for bi in ties {
        used[bi] = true;
        let next = commit(seq[bi], cells);
        let ok = no_smaller_image(seq, used, idx + 1, &next);
        used[bi] = false;
        if !ok {
            return false;
        }
    }
    true
}

/// Exact canonicity test for a sorted mask sequence. A prefix of a
/// canonical sequence is itself canonical, which is what makes the orderly
/// search sound: order statistics of a superset never grow, so a relabeling
/// beating a prefix would beat the whole sequence.
fn is_canonical_seq(seq: &[u64], v: usize) -> bool {
    debug_assert!(seq
        .windows(2)
        .all(|w| mask_seq_cmp(w[0], w[1]) == Ordering::Less));
    let full = full_mask(v);
    let mut used = vec![false; seq.len()];
    no_smaller_image(seq, &mut used, 0, &[(full, full)])
}

fn seq_cmp(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match mask_seq_cmp(*x, *y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Lexicographically least sorted image sequence over all relabelings.
fn exact_canonical_seq(blocks: &[u64], v: usize) -> Vec<u64> {
    fn go(blocks: &[u64], used: &mut [bool], cells: &[Cell]) -> Vec<u64> {
        let remaining = used.iter().filter(|u| !**u).count();
        if remaining == 0 {
            return Vec::new();
        }
        let mut mu: Option<u64> = None;
        let mut ties: Vec<usize> = Vec::new();
        for (bi, &x) in blocks.iter().enumerate() {
            if used[bi] {
                continue;
            }
            let img = min_image(x, cells);
            match mu {
                None => {
                    mu = Some(img);
                    ties.push(bi);
                }
                Some(m) => match mask_seq_cmp(img, m) {
                    Ordering::Less => {
                        mu = Some(img);
                        ties.clear();
                        ties.push(bi);
                    }
                    Ordering::Equal => ties.push(bi),
                    Ordering::Greater => {}
                },
            }
        }
        let mu = mu.expect("at least one block remains");
        let mut best: Option<Vec<u64>> = None;
        for bi in ties {
            used[bi] = true;
            let rest = go(blocks, used, &commit(blocks[bi], cells));
            used[bi] = false;
            if best
                .as_ref()
                .map(|b| seq_cmp(&rest, &b[1..]) == Ordering::Less)
                .unwrap_or(true)
            {
                let mut s = Vec::with_capacity(remaining);
                s.push(mu);
                s.extend_from_slice(&rest);
                best = Some(s);
            }
        }
        best.expect("ties is nonempty")
    }
    let full = full_mask(v);
    let mut used = vec![false; blocks.len()];
    go(blocks, &mut used, &[(full, full)])
}

/// Stable refinement relabeling for universes too large for the exact
/// minimization. Points are colored by iterated block/point signatures and
/// relabeled by (color, current label); the result is idempotent, though
/// two isomorphic systems may map to distinct forms when symmetry leaves
/// colors tied.
fn refinement_relabel(system: &SetSystem) -> SetSystem {
    let v = system.v();
    let blocks = system.blocks();
    let mut point_color: Vec<usize> = vec![0; v];
    let mut block_color: Vec<usize> = vec![0; blocks.len()];
    loop {
        let block_keys: Vec<(usize, usize, Vec<usize>)> = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut members: Vec<usize> = b.iter().map(|p| point_color[p]).collect();
                members.sort_unstable();
                (block_color[i], b.len(), members)
            })
            .collect();
        let new_block_color = rank_keys(&block_keys);
        let point_keys: Vec<(usize, Vec<usize>)> = (0..v)
            .map(|p| {
                let mut incident: Vec<usize> = blocks
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| b.contains(p))
                    .map(|(i, _)| new_block_color[i])
                    .collect();
                incident.sort_unstable();
                (point_color[p], incident)
            })
            .collect();
        let new_point_color = rank_keys(&point_keys);
        let stable = new_point_color == point_color && new_block_color == block_color;
        point_color = new_point_color;
        block_color = new_block_color;
        if stable {
            break;
        }
    }
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by_key(|&p| (point_color[p], p));
    let mut relabel = vec![0usize; v];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let mut new_blocks: Vec<PointSet> = blocks
        .iter()
        .map(|b| PointSet::from_points(v, b.iter().map(|p| relabel[p])))
        .collect();
    new_blocks.sort();
    SetSystem::new(v, new_blocks).expect("relabeling preserves validity")
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key came from the list"))
        .collect()
}

/// Canonical representative of a system under point relabeling: exact (the
/// true lexicographic minimum) up to `EXACT_CANONICAL_V_MAX` points, a
/// deterministic idempotent refinement relabeling above that.
pub fn canonical_form(system: &SetSystem) -> SetSystem {
    let v = system.v();
    if v <= EXACT_CANONICAL_V_MAX {
        let masks: Vec<u64> = system.blocks().iter().map(|b| b.as_mask()).collect();
        let seq = exact_canonical_seq(&masks, v);
        let blocks = seq.into_iter().map(|m| PointSet::from_mask(v, m)).collect();
        SetSystem::new(v, blocks).expect("relabeling preserves validity")
    } else {
        refinement_relabel(system)
    }
}

/// Exact test that the system's sorted block sequence is its own canonical
/// form. Cost grows with the symmetry of the system; intended for small
/// universes (at most 64 points).
pub fn is_canonical(system: &SetSystem) -> bool {
    let v = system.v();
    let mut masks: Vec<u64> = system.blocks().iter().map(|b| b.as_mask()).collect();
    masks.sort_by(|&x, &y| mask_seq_cmp(x, y));
    is_canonical_seq(&masks, v)
}

// ---------------------------------------------------------------------------
// The orderly enumeration.
// ---------------------------------------------------------------------------

struct NodeBudget {
    limit: Option<u64>,
    deadline: Option<Instant>,
    expired: AtomicU64,
    used: AtomicU64,
}

/// How many `consume` calls pass between wall-clock checks. Clock reads are
/// far more expensive than the atomic bump, so they are amortized.
const CLOCK_STRIDE: u64 = 1024;

impl NodeBudget {
    fn new(limit: Option<u64>, deadline: Option<Instant>) -> Self {
        Self {
            limit,
            deadline,
            expired: AtomicU64::new(0),
            used: AtomicU64::new(0),
        }
    }

    fn consume(&self) -> bool {
        let prev = self.used.fetch_add(1, AtomicOrdering::Relaxed);
        if let Some(l) = self.limit {
            if prev >= l {
                return false;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.expired.load(AtomicOrdering::Relaxed) != 0 {
                return false;
            }
            if prev.is_multiple_of(CLOCK_STRIDE) && Instant::now() >= deadline {
                self.expired.store(1, AtomicOrdering::Relaxed);
                return false;
            }
        }
        true
    }

    fn total(&self) -> u64 {
        self.used.load(AtomicOrdering::Relaxed)
    }
}

/// One per-triple, per-minimum-size slice of the search space. The first
/// block of a canonical sequence is always the initial segment of the
/// design's smallest block size, so each branch pins it.
struct Branch {
    triple_idx: usize,
    v: usize,
    lambda: usize,
    r1: usize,
    r2: usize,
    e1: usize,
    first: u64,
    first_idx: usize,
    /// Every mask whose size is in this branch's menu, ascending.
    cands: Vec<u64>,
    l_scale: u64,
    h_target: u64,
    min_term: u64,
    max_term: u64,
    size_total: usize,
    min_size: usize,
    max_size: usize,
}

#[derive(Default)]
struct TaskResult {
    designs: Vec<Vec<u64>>,
    nodes: u64,
    budget_hit: bool,
}

/// All feasibility cuts for appending `cand`; returns the updated partial
/// sums when the extension stays viable.
fn admit(b: &Branch, seq: &[u64], cnt: &[u8], cand: u64, hsum: u64, ssum: usize) -> Option<(u64, usize)> {
    for &x in seq {
        if (x & cand).count_ones() as usize != b.lambda {
            return None;
        }
    }
    let rem = b.v - seq.len() - 1;
    let mut must_r1 = 0usize;
    let mut locked_r2 = 0usize;
    for (p, &have) in cnt.iter().enumerate() {
        let c = have as usize + ((cand >> p) & 1) as usize;
        if c > b.r1 || c + rem < b.r2 {
            return None;
        }
        let can_reach_r1 = c + rem >= b.r1;
        if c > b.r2 {
            if !can_reach_r1 {
                return None;
            }
            must_r1 += 1;
        }
        if !can_reach_r1 {
            locked_r2 += 1;
        }
    }
    if must_r1 > b.e1 || locked_r2 > b.v - b.e1 {
        return None;
    }
    let size = cand.count_ones() as usize;
    let h2 = hsum + b.l_scale / (size - b.lambda) as u64;
    let rem64 = rem as u64;
    if h2 + rem64 * b.min_term > b.h_target || h2 + rem64 * b.max_term < b.h_target {
        return None;
    }
    let s2 = ssum + size;
    if s2 + rem * b.min_size > b.size_total || s2 + rem * b.max_size < b.size_total {
        return None;
    }
    Some((h2, s2))
}

fn profile_ok(b: &Branch, cnt: &[u8]) -> bool {
    let mut n1 = 0usize;
    for &have in cnt {
        let c = have as usize;
        if c == b.r1 {
            n1 += 1;
        } else if c != b.r2 {
            return false;
        }
    }
    n1 == b.e1
}

#[allow(clippy::too_many_arguments)]
fn extend(
    b: &Branch,
    budget: &NodeBudget,
    seq: &mut Vec<u64>,
    cnt: &mut [u8],
    start: usize,
    hsum: u64,
    ssum: usize,
    out: &mut TaskResult,
) {
    if seq.len() == b.v {
        if profile_ok(b, cnt) {
            out.designs.push(seq.clone());
        }
        return;
    }
    for ci in start..b.cands.len() {
        if !budget.consume() {
            out.budget_hit = true;
            return;
        }
        out.nodes += 1;
        let cand = b.cands[ci];
        let Some((h2, s2)) = admit(b, seq, cnt, cand, hsum, ssum) else {
            continue;
        };
        seq.push(cand);
        if is_canonical_seq(seq, b.v) {
            for (p, c) in cnt.iter_mut().enumerate() {
                *c += ((cand >> p) & 1) as u8;
            }
            extend(b, budget, seq, cnt, ci + 1, h2, s2, out);
            for (p, c) in cnt.iter_mut().enumerate() {
                *c -= ((cand >> p) & 1) as u8;
            }
        }
        seq.pop();
        if out.budget_hit {
            return;
        }
    }
}

/// Depth-one filtering: the surviving second blocks become the parallel
/// tasks, in candidate order.
fn branch_tasks(b: &Branch, budget: &NodeBudget) -> (Vec<usize>, u64, bool) {
    let mut tasks = Vec::new();
    let mut nodes = 0u64;
    let seq = [b.first];
    let mut cnt = vec![0u8; b.v];
    for (p, c) in cnt.iter_mut().enumerate() {
        *c = ((b.first >> p) & 1) as u8;
    }
    let hsum = b.l_scale / (b.first.count_ones() as usize - b.lambda) as u64;
    let ssum = b.first.count_ones() as usize;
    for ci in (b.first_idx + 1)..b.cands.len() {
        if !budget.consume() {
            return (tasks, nodes, true);
        }
        nodes += 1;
        let cand = b.cands[ci];
        if admit(b, &seq, &cnt, cand, hsum, ssum).is_none() {
            continue;
        }
        if is_canonical_seq(&[b.first, cand], b.v) {
            tasks.push(ci);
        }
    }
    (tasks, nodes, false)
}

fn run_task(b: &Branch, second_idx: usize, budget: &NodeBudget) -> TaskResult {
    let mut out = TaskResult::default();
    let mut seq = vec![b.first, b.cands[second_idx]];
    let mut cnt = vec![0u8; b.v];
    for &m in &seq {
        for (p, c) in cnt.iter_mut().enumerate() {
            *c += ((m >> p) & 1) as u8;
        }
    }
    let hsum: u64 = seq
        .iter()
        .map(|m| b.l_scale / (m.count_ones() as usize - b.lambda) as u64)
        .sum();
    let ssum: usize = seq.iter().map(|m| m.count_ones() as usize).sum();
    extend(b, budget, &mut seq, &mut cnt, second_idx + 1, hsum, ssum, &mut out);
    out
}

fn run_all(
    branches: &[Branch],
    tasks: &[(usize, usize)],
    budget: &NodeBudget,
    workers: usize,
) -> Vec<TaskResult> {
    let n = tasks.len();
    let w = workers.max(1).min(n.max(1));
    if w <= 1 {
        return tasks
            .iter()
            .map(|&(bi, ci)| run_task(&branches[bi], ci, budget))
            .collect();
    }
    let mut results: Vec<Option<TaskResult>> = Vec::with_capacity(n);
    results.resize_with(n, || None);
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..w)
            .map(|_| {
                scope.spawn(|| {
                    let mut local: Vec<(usize, TaskResult)> = Vec::new();
                    loop {
                        let i = cursor.fetch_add(1, AtomicOrdering::Relaxed);
                        if i >= n {
                            break;
                        }
                        let (bi, ci) = tasks[i];
                        local.push((i, run_task(&branches[bi], ci, budget)));
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("search worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    results
        .into_iter()
        .map(|r| r.expect("every task produces a result"))
        .collect()
}

/// A design the search produced, already in canonical form.
#[derive(Debug, Clone)]
pub struct FoundDesign {
    pub system: SetSystem,
    pub lambda: usize,
    pub r1: usize,
    pub r2: usize,
    /// Block sizes, ascending.
    pub block_sizes: Vec<usize>,
    /// Whether the design's class contains a symmetric member.
    pub type1: bool,
}

/// Per-replication-pair accounting.
#[derive(Debug, Clone)]
pub struct TripleOutcome {
    pub r1: usize,
    pub r2: usize,
    pub e1: usize,
    pub e2: usize,
    pub allowed_sizes: Vec<usize>,
    pub nodes: u64,
    pub designs_found: usize,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub v: usize,
    pub lambda: usize,
    pub admissible: Vec<TripleOutcome>,
    /// Replication pairs screened out before enumeration, with reasons.
    pub rejected: Vec<(usize, usize, String)>,
    pub designs: Vec<FoundDesign>,
    /// Candidate examinations across screening and enumeration.
    pub nodes_expanded: u64,
    /// False when the node budget cut the run short.
    pub completed: bool,
}

/// Exhaustively enumerates the Ryser designs with the given universe size
/// and intersection number, one canonical representative per isomorphism
/// class.
pub fn search_ryser(
    v: usize,
    lambda: usize,
    config: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    let deadline = config.time_budget.map(|limit| Instant::now() + limit);
    search_with_deadline(v, lambda, config, deadline)
}

fn search_with_deadline(
    v: usize,
    lambda: usize,
    config: &SearchConfig,
    deadline: Option<Instant>,
) -> Result<SearchReport, SearchError> {
    if lambda == 0 {
        return Err(SearchError::LambdaZero);
    }
    if v < 2 {
        return Err(SearchError::VTooSmall { v });
    }
    if v > SEARCH_V_CAP {
        return Err(SearchError::VTooLarge {
            v,
            max: SEARCH_V_CAP,
        });
    }

    let budget = NodeBudget::new(config.node_budget, deadline);
    let mut rejected = Vec::new();
    let mut triples: Vec<AdmissibleTriple> = Vec::new();
    for case in replication_cases(v, lambda) {
        match case {
            TripleVerdict::Admissible(t) => triples.push(t),
            TripleVerdict::Rejected { r1, r2, reason } => rejected.push((r1, r2, reason)),
        }
    }

    let mut branches: Vec<Branch> = Vec::new();
    for (ti, t) in triples.iter().enumerate() {
        for (si, &s) in t.allowed_sizes.iter().enumerate() {
            let menu: Vec<usize> = t.allowed_sizes[si..].to_vec();
            // The branch's minimum size must be joined by a second size.
            if menu.len() < 2 {
                continue;
            }
            let Ok((l_scale, h_target, min_term, max_term)) =
                harmonic_scale(v, lambda, t.c, t.d, &menu)
            else {
                continue;
            };
            let size_total = t.e1 * t.r1 + t.e2 * t.r2;
            let min_size = menu[0];
            let max_size = *menu.last().unwrap();
            if size_total < v * min_size || size_total > v * max_size {
                continue;
            }
            let mut cands: Vec<u64> = (1..(1u64 << v))
                .filter(|m| menu.contains(&(m.count_ones() as usize)))
                .collect();
            cands.sort_by(|&x, &y| mask_seq_cmp(x, y));
            let first = full_mask(s);
            let first_idx = cands
                .iter()
                .position(|&m| m == first)
                .expect("the initial segment has a menu size");
            branches.push(Branch {
                triple_idx: ti,
                v,
                lambda,
                r1: t.r1,
                r2: t.r2,
                e1: t.e1,
                first,
                first_idx,
                cands,
                l_scale,
                h_target,
                min_term,
                max_term,
                size_total,
                min_size,
                max_size,
            });
        }
    }

    let mut per_triple_nodes = vec![0u64; triples.len()];
    let mut tasks: Vec<(usize, usize)> = Vec::new();
    let mut budget_hit = false;
    for (bi, b) in branches.iter().enumerate() {
        let (seconds, nodes, hit) = branch_tasks(b, &budget);
        per_triple_nodes[b.triple_idx] += nodes;
        tasks.extend(seconds.into_iter().map(|ci| (bi, ci)));
        if hit {
            budget_hit = true;
            break;
        }
    }

    let results = if budget_hit {
        Vec::new()
    } else {
        run_all(&branches, &tasks, &budget, config.workers)
    };

    let mut per_triple_found = vec![0usize; triples.len()];
    let mut designs: Vec<FoundDesign> = Vec::new();
    for ((bi, _), res) in tasks.iter().zip(results) {
        let ti = branches[*bi].triple_idx;
        per_triple_nodes[ti] += res.nodes;
        budget_hit |= res.budget_hit;
        for seq in res.designs {
            let blocks = seq
                .iter()
                .map(|&m| PointSet::from_mask(v, m))
                .collect::<Vec<_>>();
            let system = SetSystem::new(v, blocks).expect("search blocks are valid");
            let kind = classify(&system);
            let DesignKind::Ryser {
                lambda: found_lambda,
                r1,
                r2,
            } = kind
            else {
                unreachable!("orderly completions classify as Ryser, got {:?}", kind)
            };
            assert_eq!(
                (found_lambda, r1, r2),
                (lambda, triples[ti].r1, triples[ti].r2),
                "completion disagrees with its replication case"
            );
            let mut block_sizes: Vec<usize> =
                system.blocks().iter().map(|b| b.len()).collect();
            block_sizes.sort_unstable();
            let type1 = is_type1(&system)?.is_type1();
            per_triple_found[ti] += 1;
            designs.push(FoundDesign {
                system,
                lambda,
                r1,
                r2,
                block_sizes,
                type1,
            });
        }
    }

    let admissible = triples
        .into_iter()
        .enumerate()
        .map(|(ti, t)| TripleOutcome {
            r1: t.r1,
            r2: t.r2,
            e1: t.e1,
            e2: t.e2,
            allowed_sizes: t.allowed_sizes,
            nodes: per_triple_nodes[ti],
            designs_found: per_triple_found[ti],
        })
        .collect();

    Ok(SearchReport {
        v,
        lambda,
        admissible,
        rejected,
        designs,
        nodes_expanded: budget.total(),
        completed: !budget_hit,
    })
}

/// One (v, λ) cell of the conjecture scan.
#[derive(Debug, Clone)]
pub struct ScanCell {
    pub v: usize,
    pub lambda: usize,
    pub designs_found: usize,
    pub type1_count: usize,
    pub type2_count: usize,
    pub completed: bool,
}

#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub v_max: usize,
    pub lambda_max: usize,
    pub cells: Vec<ScanCell>,
    /// Designs whose class holds no symmetric member; the conjecture says
    /// this stays zero.
    pub type2_total: usize,
    pub nodes_expanded: u64,
    pub completed: bool,
}

/// Sweeps every (v, λ) with 2 <= v <= v_max and 1 <= λ <= lambda_max,
/// counting Type-1 and Type-2 designs per cell.
pub fn conjecture_scan(
    v_max: usize,
    lambda_max: usize,
    config: &SearchConfig,
) -> Result<ScanSummary, SearchError> {
    if v_max < 2 {
        return Err(SearchError::VTooSmall { v: v_max });
    }
    if v_max > SCAN_V_CAP {
        return Err(SearchError::ScanTooLarge {
            v_max,
            cap: SCAN_V_CAP,
        });
    }
    if lambda_max == 0 {
        return Err(SearchError::LambdaZero);
    }
    // One deadline for the whole sweep, not one per cell.
    let deadline = config.time_budget.map(|limit| Instant::now() + limit);
    let mut cells = Vec::new();
    let mut type2_total = 0usize;
    let mut nodes = 0u64;
    let mut completed = true;
    for v in 2..=v_max {
        for lambda in 1..=lambda_max {
            let report = search_with_deadline(v, lambda, config, deadline)?;
            let type1_count = report.designs.iter().filter(|d| d.type1).count();
            let type2_count = report.designs.len() - type1_count;
            type2_total += type2_count;
            nodes += report.nodes_expanded;
            completed &= report.completed;
            cells.push(ScanCell {
                v,
                lambda,
                designs_found: report.designs.len(),
                type1_count,
                type2_count,
                completed: report.completed,
            });
        }
    }
    Ok(ScanSummary {
        v_max,
        lambda_max,
        cells,
        type2_total,
        nodes_expanded: nodes,
        completed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::system_from_lists;
    use crate::generators::{fano, make_type1};
    use proptest::prelude::*;

    fn relabel(system: &SetSystem, perm: &[usize]) -> SetSystem {
        let v = system.v();
        let blocks: Vec<PointSet> = system
            .blocks()
            .iter()
            .map(|b| PointSet::from_points(v, b.iter().map(|p| perm[p])))
            .collect();
        SetSystem::new(v, blocks).unwrap()
    }

    fn near_pencil(v: usize) -> SetSystem {
        let mut lists: Vec<Vec<usize>> = (1..v).map(|i| vec![0, i]).collect();
        lists.push((1..v).collect());
        system_from_lists(v, &lists).unwrap()
    }

    #[test]
    fn replication_cases_for_fano_lambda() {
        let cases = replication_cases(7, 2);
        assert_eq!(cases.len(), 2);
        let admissible: Vec<&AdmissibleTriple> = cases
            .iter()
            .filter_map(|c| match c {
                TripleVerdict::Admissible(t) => Some(t),
                _ => None,
            })
            .collect();
        assert_eq!(admissible.len(), 1);
        let t = admissible[0];
        assert_eq!((t.r1, t.r2, t.e1, t.e2), (5, 3, 3, 4));
        assert_eq!((t.c, t.d, t.g, t.a), (2, 1, 2, 1));
        assert_eq!(t.allowed_sizes, vec![3, 4, 5]);
    }

    #[test]
    fn infeasible_cells_reject_every_pair() {
        for (v, lambda) in [(6, 2), (8, 2), (8, 3)] {
            for case in replication_cases(v, lambda) {
                assert!(
                    matches!(case, TripleVerdict::Rejected { .. }),
                    "expected ({v},{lambda}) to be screened out, got {case:?}"
                );
            }
        }
    }

    #[test]
    fn near_pencil_triple() {
        let cases = replication_cases(5, 1);
        assert_eq!(cases.len(), 1);
        let TripleVerdict::Admissible(t) = &cases[0] else {
            panic!("expected admissible");
        };
        assert_eq!((t.r1, t.r2, t.e1, t.e2), (4, 2, 1, 4));
        assert_eq!(t.allowed_sizes, vec![2, 4]);
    }

    #[test]
    fn canonical_sequence_basics() {
        // An initial segment is canonical; a shifted copy of it is not.
        assert!(is_canonical_seq(&[0b111], 7));
        assert!(!is_canonical_seq(&[0b1110], 7));
        // {0,1},{0,2} is the least relabeling of any two 2-sets sharing a
        // point.
        assert!(is_canonical_seq(&[0b011, 0b101], 4));
        assert!(!is_canonical_seq(&[0b011, 0b110], 4));
    }

    #[test]
    fn canonical_form_of_near_pencil_is_itself() {
        let np = near_pencil(4);
        assert!(is_canonical(&np));
        assert_eq!(canonical_form(&np), np);
        // Moving the center to label 3 must come back to the same form.
        let shifted = relabel(&np, &[3, 0, 1, 2]);
        assert_eq!(canonical_form(&shifted), np);
    }

    #[test]
    fn canonical_form_invariant_under_relabeling() {
        let derived = make_type1(&fano(), 0).unwrap();
        let canon = canonical_form(&derived);
        assert!(is_canonical(&canon));
        let perms = [
            vec![1, 0, 2, 3, 4, 5, 6],
            vec![6, 5, 4, 3, 2, 1, 0],
            vec![2, 4, 6, 1, 3, 5, 0],
        ];
        for perm in &perms {
            assert_eq!(canonical_form(&relabel(&derived, perm)), canon);
        }
        assert_eq!(canonical_form(&canon), canon);
    }

    #[test]
    fn search_finds_the_fano_derived_class() {
        let report = search_ryser(7, 2, &SearchConfig::default()).unwrap();
        assert!(report.completed);
        assert_eq!(report.admissible.len(), 1);
        assert_eq!(report.designs.len(), 1);
        let d = &report.designs[0];
        assert_eq!((d.lambda, d.r1, d.r2), (2, 5, 3));
        assert_eq!(d.block_sizes, vec![3, 4, 4, 4, 4, 4, 4]);
        assert!(d.type1);
        let expected = canonical_form(&make_type1(&fano(), 0).unwrap());
        assert_eq!(d.system, expected);
    }

    #[test]
    fn search_matches_across_worker_counts() {
        let seq = search_ryser(7, 2, &SearchConfig::default()).unwrap();
        let par = search_ryser(
            7,
            2,
            &SearchConfig {
                workers: 4,
                ..SearchConfig::default()
            },
        )
        .unwrap();
        assert_eq!(seq.designs.len(), par.designs.len());
        for (a, b) in seq.designs.iter().zip(par.designs.iter()) {
            assert_eq!(a.system, b.system);
        }
        assert_eq!(seq.nodes_expanded, par.nodes_expanded);
    }

    #[test]
    fn search_finds_near_pencils() {
        for v in [4usize, 5, 6] {
            let report = search_ryser(v, 1, &SearchConfig::default()).unwrap();
            assert_eq!(report.designs.len(), 1, "v = {v}");
            let d = &report.designs[0];
            assert!(d.type1);
            assert_eq!(d.system, canonical_form(&near_pencil(v)));
        }
    }

    #[test]
    fn empty_cells_stay_empty() {
        for (v, lambda) in [(6, 2), (8, 2), (3, 1), (5, 2)] {
            let report = search_ryser(v, lambda, &SearchConfig::default()).unwrap();
            assert!(report.completed);
            assert_eq!(report.designs.len(), 0, "({v},{lambda})");
        }
    }

    #[test]
    fn budget_marks_incomplete() {
        let report = search_ryser(
            7,
            2,
            &SearchConfig {
                node_budget: Some(5),
                ..SearchConfig::default()
            },
        )
        .unwrap();
        assert!(!report.completed);
    }

    #[test]
    fn scan_is_all_type1() {
        let summary = conjecture_scan(8, 2, &SearchConfig::default()).unwrap();
        assert!(summary.completed);
        assert_eq!(summary.type2_total, 0);
        let found: usize = summary.cells.iter().map(|c| c.designs_found).sum();
        // Near-pencils at v = 4..8 plus the Fano-derived class.
        assert_eq!(found, 6);
        for cell in &summary.cells {
            assert_eq!(cell.type1_count, cell.designs_found);
        }
    }

    #[test]
    fn scan_rejects_out_of_cap() {
        assert!(matches!(
            conjecture_scan(9, 1, &SearchConfig::default()),
            Err(SearchError::ScanTooLarge { .. })
        ));
        assert!(matches!(
            search_ryser(13, 1, &SearchConfig::default()),
            Err(SearchError::VTooLarge { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonical_form_is_invariant_and_idempotent(
            masks in proptest::collection::vec(1u64..(1 << 6), 6),
            keys in proptest::collection::vec(any::<u64>(), 6),
        ) {
            let mut distinct = masks.clone();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assume!(distinct.len() == 6);
            let blocks: Vec<PointSet> =
                masks.iter().map(|&m| PointSet::from_mask(6, m)).collect();
            let sys = SetSystem::new(6, blocks).unwrap();
            let mut order: Vec<usize> = (0..6).collect();
            order.sort_by_key(|&i| keys[i]);
            let mut perm = vec![0usize; 6];
            for (new, &old) in order.iter().enumerate() {
                perm[old] = new;
            }
            let canon = canonical_form(&sys);
            prop_assert_eq!(canonical_form(&relabel(&sys, &perm)), canon.clone());
            prop_assert_eq!(canonical_form(&canon), canon.clone());
            prop_assert!(is_canonical(&canon));
        }

        #[test]
        fn refinement_relabel_is_idempotent(
            masks in proptest::collection::vec(1u64..(1 << 10), 10),
        ) {
            let mut distinct = masks.clone();
            distinct.sort_unstable();
            distinct.dedup();
            prop_assume!(distinct.len() == 10);
            let blocks: Vec<PointSet> =
                masks.iter().map(|&m| PointSet::from_mask(10, m)).collect();
            let sys = SetSystem::new(10, blocks).unwrap();
            let once = canonical_form(&sys);
            prop_assert_eq!(canonical_form(&once), once.clone());
        }
    }
}
