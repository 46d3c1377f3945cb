//! Exact Gromov–Hausdorff distances on small finite spaces.
//!
//! `gh_exact` minimizes distortion over correspondences by branch and bound,
//! `gh_pair_inf` brute-forces the equivalent mapping-pair form (the oracle for
//! the correspondence search), and `gh_class` restricts the pair family to
//! injective/surjective/bijective/inverse-pair mappings.
//!
//! Every search runs in two phases. The value phase explores rows in
//! decreasing-eccentricity order and may evaluate top-level branches
//! concurrently; branches never share incumbents, so each branch's node count
//! depends only on the input and the seeded upper bound, making the total
//! deterministic across thread counts. The witness phase then rebuilds the
//! lexicographically smallest optimal witness by a sequential first-hit
//! search at the known optimal value.

use rayon::prelude::*;

use crate::distortion::{dis_map, gh_pair};
use crate::error::{Error, Result};
use crate::map::{Correspondence, Mapping};
use crate::scalar::Scalar;
use crate::space::MetricSpace;

/// Mapping-class restriction for [`gh_class`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    /// No restriction: all total mapping pairs.
    Any,
    /// Injective both ways; requires equal sizes, where it forces bijectivity.
    Injective,
    /// Surjective both ways; requires equal sizes.
    Surjective,
    /// Bijective both ways, the two maps independent.
    Bijective,
    /// Pairs `(f, f⁻¹)` over bijections `f`.
    InversePair,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Any => "any",
            ClassTag::Injective => "injective",
            ClassTag::Surjective => "surjective",
            ClassTag::Bijective => "bijective",
            ClassTag::InversePair => "inversePair",
        }
    }
}

/// How a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    BruteForce,
    BranchAndBound,
}

impl SearchMethod {
    pub fn name(self) -> &'static str {
        match self {
            SearchMethod::BruteForce => "bruteForce",
            SearchMethod::BranchAndBound => "branchAndBound",
        }
    }
}

/// Optimal witness: the minimizing correspondence, or the minimizing mapping
/// pair for family-restricted searches.
#[derive(Debug, Clone, PartialEq)]
pub enum GhWitness {
    Correspondence(Correspondence),
    MappingPair { f: Mapping, g: Mapping },
}

impl GhWitness {
    /// Canonical sorted pair list of the witness (`gr f ∪ gr⁻¹ g` for pairs).
    pub fn pair_list(&self) -> Vec<(usize, usize)> {
        match self {
            GhWitness::Correspondence(r) => r.pairs().to_vec(),
            GhWitness::MappingPair { f, g } => Correspondence::from_mappings(f, g)
                .expect("mapping pair is total")
                .pairs()
                .to_vec(),
        }
    }
}

/// A computed distance with its witness and search statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct GhResult<T> {
    pub value: T,
    pub witness: GhWitness,
    pub nodes_explored: u64,
    pub method: SearchMethod,
}

/// Search limits. Caps are configuration, not contract: they bound the work,
/// and oversize inputs fail with a capacity error naming the cap.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Maximum size per side for the correspondence search.
    pub correspondence_cap: usize,
    /// Maximum size for the inverse-pair permutation search.
    pub permutation_cap: usize,
    /// Maximum number of mapping pairs `|Y|^|X| · |X|^|Y|` to enumerate.
    pub pair_budget: u64,
    /// Evaluate disjoint top-level branches on a thread pool.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            correspondence_cap: 8,
            permutation_cap: 12,
            pair_budget: 1_000_000,
            parallel: false,
        }
    }
}

/// `½ |diam X − diam Y|`, a lower bound for every variant: any correspondence
/// relates a diameter pair of the larger-diameter space to some pair of the
/// other, so its distortion is at least the diameter difference.
pub fn gh_lower_bound<T: Scalar>(x: &MetricSpace<T>, y: &MetricSpace<T>) -> T {
    T::from_f64(0.5).unwrap() * (x.diameter() - y.diameter()).abs()
}

// ---------------------------------------------------------------------------
// Correspondence search (gh_exact)
// ---------------------------------------------------------------------------

/// Rows of X in decreasing eccentricity (max row distance), ties by index.
fn eccentricity_order<T: Scalar>(x: &MetricSpace<T>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.size()).collect();
    order.sort_by(|&a, &b| {
        x.eccentricity(b)
            .partial_cmp(&x.eccentricity(a))
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}

/// Nonempty subsets of `0..m` as bitmasks, smallest popcount first. Small
/// rows are where minimal correspondences live, so trying them early finds
/// good incumbents fast.
fn subsets_by_size(m: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (1..(1u32 << m)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    subsets
}

fn mask_members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |j| mask & (1 << j) != 0)
}

/// Distortion term of two related pairs, evaluated in canonical (sorted)
/// pair order. Matrices that passed validation are symmetric and do not
/// care; orienting the lookups keeps the search phases consistent with each
/// other even on unvalidated input.
#[inline]
fn pair_term<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    a: (usize, usize),
    b: (usize, usize),
) -> T {
    let (p, q) = if a <= b { (a, b) } else { (b, a) };
    (x.dist(p.0, q.0) - y.dist(p.1, q.1)).abs()
}

/// Incremental distortion of adding row `(xi, mask)` against the pairs
/// already assigned, plus the within-row contribution.
fn row_increment<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    assigned: &[(usize, usize)],
    xi: usize,
    mask: u32,
) -> T {
    let mut inc = T::zero();
    for j in mask_members(mask) {
        for &pair in assigned {
            inc = inc.max(pair_term(x, y, (xi, j), pair));
        }
        for j2 in mask_members(mask) {
            if j2 > j {
                inc = inc.max(pair_term(x, y, (xi, j), (xi, j2)));
            }
        }
    }
    inc
}

struct CorrSearch<'a, T> {
    x: &'a MetricSpace<T>,
    y: &'a MetricSpace<T>,
    rows: Vec<usize>,
    subsets: Vec<u32>,
    lb: T,
}

impl<'a, T: Scalar> CorrSearch<'a, T> {
    /// Value phase below one top-level branch. `best` starts at the seeded
    /// upper bound and improves locally; returns the branch optimum and the
    /// number of nodes expanded, both independent of other branches.
    fn descend(
        &self,
        depth: usize,
        assigned: &mut Vec<(usize, usize)>,
        covered: u32,
        partial: T,
        best: &mut T,
        nodes: &mut u64,
    ) {
        if depth == self.rows.len() {
            let full = (1u32 << self.y.size()) - 1;
            if covered == full && partial < *best {
                *best = partial;
            }
            return;
        }
        if *best <= self.lb {
            return; // nothing below the global lower bound can exist
        }
        let xi = self.rows[depth];
        let last = depth + 1 == self.rows.len();
        let full = (1u32 << self.y.size()) - 1;
        for &mask in &self.subsets {
            if last && (covered | mask) != full {
                continue;
            }
            *nodes += 1;
            let inc = row_increment(self.x, self.y, assigned, xi, mask);
            let next = partial.max(inc);
            if next >= *best {
                continue;
            }
            if !self.columns_feasible(assigned, xi, mask, covered, depth, *best) {
                continue;
            }
            let start = assigned.len();
            assigned.extend(mask_members(mask).map(|j| (xi, j)));
            self.descend(depth + 1, assigned, covered | mask, next, best, nodes);
            assigned.truncate(start);
        }
    }

    /// Every still-uncovered column must be adoptable by some remaining row
    /// without pushing the distortion to `bound` or beyond.
    fn columns_feasible(
        &self,
        assigned: &[(usize, usize)],
        xi: usize,
        mask: u32,
        covered: u32,
        depth: usize,
        bound: T,
    ) -> bool {
        let remaining = &self.rows[depth + 1..];
        let now_covered = covered | mask;
        for j in 0..self.y.size() {
            if now_covered & (1 << j) != 0 {
                continue;
            }
            let mut adoptable = false;
            'rows: for &xr in remaining {
                for &pair in assigned {
                    if pair_term(self.x, self.y, (xr, j), pair) >= bound {
                        continue 'rows;
                    }
                }
                for j2 in mask_members(mask) {
                    if pair_term(self.x, self.y, (xr, j), (xi, j2)) >= bound {
                        continue 'rows;
                    }
                }
                adoptable = true;
                break;
            }
            if !adoptable {
                return false;
            }
        }
        true
    }

    /// Witness phase: first correspondence with distortion `<= value` in the
    /// lexicographic order of canonical pair lists. Rows go in index order;
    /// inner rows enumerate masks so that supersets sharing a prefix come
    /// first (their next pair token is smaller than the following row's),
    /// while the final row uses plain sequence order, where a prefix sorts
    /// before its extensions.
    #[allow(clippy::too_many_arguments)]
    fn reconstruct(
        &self,
        value: T,
        depth: usize,
        assigned: &mut Vec<(usize, usize)>,
        covered: u32,
        inner_masks: &[u32],
        last_masks: &[u32],
        nodes: &mut u64,
    ) -> bool {
        let n = self.x.size();
        if depth == n {
            return covered == (1u32 << self.y.size()) - 1;
        }
        let last = depth + 1 == n;
        let masks = if last { last_masks } else { inner_masks };
        let full = (1u32 << self.y.size()) - 1;
        for &mask in masks {
            if last && (covered | mask) != full {
                continue;
            }
            *nodes += 1;
            let inc = row_increment(self.x, self.y, assigned, depth, mask);
            if inc > value {
                continue;
            }
            if !self.columns_feasible_at(assigned, depth, mask, covered, value) {
                continue;
            }
            let start = assigned.len();
            assigned.extend(mask_members(mask).map(|j| (depth, j)));
            if self.reconstruct(
                value,
                depth + 1,
                assigned,
                covered | mask,
                inner_masks,
                last_masks,
                nodes,
            ) {
                return true;
            }
            assigned.truncate(start);
        }
        false
    }

    /// Same column check as the value phase, but rows are indexed 0..n and
    /// the cut is strict (`> bound` fails, `== bound` is still admissible).
    fn columns_feasible_at(
        &self,
        assigned: &[(usize, usize)],
        row: usize,
        mask: u32,
        covered: u32,
        bound: T,
    ) -> bool {
        let n = self.x.size();
        let now_covered = covered | mask;
        for j in 0..self.y.size() {
            if now_covered & (1 << j) != 0 {
                continue;
            }
            let mut adoptable = false;
            'rows: for xr in (row + 1)..n {
                for &pair in assigned {
                    if pair_term(self.x, self.y, (xr, j), pair) > bound {
                        continue 'rows;
                    }
                }
                for j2 in mask_members(mask) {
                    if pair_term(self.x, self.y, (xr, j), (row, j2)) > bound {
                        continue 'rows;
                    }
                }
                adoptable = true;
                break;
            }
            if !adoptable {
                return false;
            }
        }
        true
    }
}

/// Mask order for non-final rows of the witness reconstruction: sorted
/// member lists compared elementwise, a strict prefix sorting *after* its
/// extensions (the extension's extra pair token beats the next row's token).
fn inner_mask_order(m: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << m)).collect();
    masks.sort_by(|&a, &b| compare_masks(a, b, true));
    masks
}

/// Mask order for the final row: plain sequence order, prefix first.
fn last_mask_order(m: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << m)).collect();
    masks.sort_by(|&a, &b| compare_masks(a, b, false));
    masks
}

fn compare_masks(a: u32, b: u32, prefix_after: bool) -> std::cmp::Ordering {
    let av: Vec<usize> = mask_members(a).collect();
    let bv: Vec<usize> = mask_members(b).collect();
    for (x, y) in av.iter().zip(bv.iter()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    let by_len = av.len().cmp(&bv.len());
    if prefix_after {
        by_len.reverse()
    } else {
        by_len
    }
}

/// A cheap feasible correspondence to seed the incumbent: greedily extend a
/// mapping each way, always taking the partner that least increases the
/// distortion of the union graph so far, plus the identity matching on equal
/// sizes.
fn seed_bound<T: Scalar>(x: &MetricSpace<T>, y: &MetricSpace<T>) -> T {
    let n = x.size();
    let m = y.size();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n + m);
    let extend = |from: usize, to: usize, flip: bool, pairs: &mut Vec<(usize, usize)>| {
        for a in 0..from {
            let mut best: Option<(T, usize)> = None;
            for b in 0..to {
                let pair = if flip { (b, a) } else { (a, b) };
                let mut cost = T::zero();
                for &other in pairs.iter() {
                    cost = cost.max(pair_term(x, y, pair, other));
                }
                if best.is_none_or(|(c, _)| cost < c) {
                    best = Some((cost, b));
                }
            }
            let (_, b) = best.expect("target side is nonempty");
            pairs.push(if flip { (b, a) } else { (a, b) });
        }
    };
    extend(n, m, false, &mut pairs);
    extend(m, n, true, &mut pairs);
    // evaluate the bounds canonically (as sorted correspondences) so they are
    // attainable values of the search itself
    let greedy = Correspondence::new(n, m, pairs).expect("graphs of total maps");
    let mut best = crate::distortion::dis_rel(&greedy, x, y).expect("nonempty");
    if n == m {
        let id = Correspondence::identity(n);
        best = best.min(crate::distortion::dis_rel(&id, x, y).expect("nonempty"));
    }
    best
}

/// Exact `d_GH` as `½ · min dis R` over correspondences, with the
/// lexicographically smallest optimal correspondence as witness.
pub fn gh_exact<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    config: &SearchConfig,
) -> Result<GhResult<T>> {
    let (n, m) = (x.size(), y.size());
    if n > config.correspondence_cap || m > config.correspondence_cap {
        return Err(Error::CapExceeded {
            x: n,
            y: m,
            cap: config.correspondence_cap,
        });
    }
    // column subsets are u32 bitmasks
    let mask_limit = 31.min(config.correspondence_cap);
    if m > mask_limit {
        return Err(Error::CapExceeded {
            x: n,
            y: m,
            cap: mask_limit,
        });
    }
    let search = CorrSearch {
        x,
        y,
        rows: eccentricity_order(x),
        subsets: subsets_by_size(m),
        lb: (x.diameter() - y.diameter()).abs(),
    };
    let seed = seed_bound(x, y);

    // Value phase: top-level branches are the first row's subsets, each
    // explored in isolation against the seeded bound.
    let first_row = search.rows[0];
    let branch = |&mask: &u32| -> (T, u64) {
        let mut nodes = 1u64;
        let mut best = seed;
        let inc = row_increment(x, y, &[], first_row, mask);
        if inc < best && search.columns_feasible(&[], first_row, mask, 0, 0, best) {
            let mut assigned: Vec<(usize, usize)> =
                mask_members(mask).map(|j| (first_row, j)).collect();
            search.descend(1, &mut assigned, mask, inc, &mut best, &mut nodes);
        }
        (best, nodes)
    };
    let branch_results: Vec<(T, u64)> = if config.parallel {
        search.subsets.par_iter().map(branch).collect()
    } else {
        search.subsets.iter().map(branch).collect()
    };
    let mut value = seed;
    let mut nodes = 0u64;
    for (v, k) in branch_results {
        value = value.min(v);
        nodes += k;
    }

    // Witness phase: sequential lexicographic first hit at the optimum.
    let inner = inner_mask_order(m);
    let last = last_mask_order(m);
    let mut assigned = Vec::new();
    let found = search.reconstruct(value, 0, &mut assigned, 0, &inner, &last, &mut nodes);
    assert!(
        found,
        "optimal value must be attainable by some correspondence"
    );
    let witness = Correspondence::new(n, m, assigned)?;
    Ok(GhResult {
        value: T::from_f64(0.5).unwrap() * value,
        witness: GhWitness::Correspondence(witness),
        nodes_explored: nodes,
        method: SearchMethod::BranchAndBound,
    })
}

// ---------------------------------------------------------------------------
// Mapping-pair brute force (gh_pair_inf and restricted families)
// ---------------------------------------------------------------------------

/// Iterates all total mappings `domain -> codomain` as image arrays in
/// lexicographic order.
struct MappingEnum {
    domain: usize,
    codomain: usize,
    current: Option<Vec<usize>>,
}

impl MappingEnum {
    fn new(domain: usize, codomain: usize) -> Self {
        Self {
            domain,
            codomain,
            current: Some(vec![0; domain]),
        }
    }
}

impl Iterator for MappingEnum {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let image = self.current.as_mut().unwrap();
        let mut pos = self.domain;
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            image[pos] += 1;
            if image[pos] < self.codomain {
                break;
            }
            image[pos] = 0;
        }
        Some(out)
    }
}

fn count_pairs(n: usize, m: usize) -> u128 {
    let fs = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let gs = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    fs.saturating_mul(gs)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128)
        .try_fold(1u128, u128::checked_mul)
        .unwrap_or(u128::MAX)
}

/// `d_GH` via the mapping-pair form: minimum of `d_GH(f, g)` over all total
/// pairs. Exponential; guarded by `pair_budget`. Oracle for [`gh_exact`].
pub fn gh_pair_inf<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    config: &SearchConfig,
) -> Result<GhResult<T>> {
    let (n, m) = (x.size(), y.size());
    let needed = count_pairs(n, m);
    if needed > config.pair_budget as u128 {
        return Err(Error::PairBudgetExceeded {
            needed,
            budget: config.pair_budget,
        });
    }
    let mut best: Option<(T, Mapping, Mapping)> = None;
    let mut nodes = 0u64;
    for f_img in MappingEnum::new(n, m) {
        let f = Mapping::new(n, m, f_img)?;
        for g_img in MappingEnum::new(m, n) {
            let g = Mapping::new(m, n, g_img)?;
            nodes += 1;
            let score = gh_pair(&f, &g, x, y)?;
            // strict improvement keeps the lexicographically first optimum
            if best.as_ref().is_none_or(|(v, _, _)| score.gh < *v) {
                best = Some((score.gh, f.clone(), g));
            }
        }
    }
    let (value, f, g) = best.expect("spaces are nonempty");
    Ok(GhResult {
        value,
        witness: GhWitness::MappingPair { f, g },
        nodes_explored: nodes,
        method: SearchMethod::BruteForce,
    })
}

/// Enumerates permutation image arrays of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut image: Vec<usize> = (0..n).collect();
    loop {
        out.push(image.clone());
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| image[i] < image[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| image[j] > image[i]).unwrap();
        image.swap(i, j);
        image[i + 1..].reverse();
    }
    out
}

/// Class-restricted `(m)d_GH` per the family tag. `modified` drops the
/// co-distortion term. `InversePair` runs the bottleneck permutation search;
/// the other restricted tags brute-force the (here bijective) family.
pub fn gh_class<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    tag: ClassTag,
    modified: bool,
    config: &SearchConfig,
) -> Result<GhResult<T>> {
    let (n, m) = (x.size(), y.size());
    match tag {
        ClassTag::Any => {
            if modified {
                return mgh_unrestricted(x, y, config);
            }
            gh_exact(x, y, config)
        }
        ClassTag::InversePair => {
            if n != m {
                return Err(Error::InfeasibleClass {
                    class: tag.name(),
                    x: n,
                    y: m,
                });
            }
            bottleneck_bijection(x, y, config)
        }
        ClassTag::Injective | ClassTag::Surjective | ClassTag::Bijective => {
            // On finite sets each of these forces |X| = |Y|, where an
            // injective or surjective self-to-other map is already bijective.
            if n != m {
                return Err(Error::InfeasibleClass {
                    class: tag.name(),
                    x: n,
                    y: m,
                });
            }
            if n > config.correspondence_cap {
                return Err(Error::CapExceeded {
                    x: n,
                    y: m,
                    cap: config.correspondence_cap,
                });
            }
            let needed = factorial(n).saturating_mul(factorial(n));
            if needed > config.pair_budget as u128 {
                return Err(Error::PairBudgetExceeded {
                    needed,
                    budget: config.pair_budget,
                });
            }
            let perms = permutations(n);
            let mut best: Option<(T, Mapping, Mapping)> = None;
            let mut nodes = 0u64;
            for f_img in &perms {
                let f = Mapping::new(n, m, f_img.clone())?;
                for g_img in &perms {
                    let g = Mapping::new(m, n, g_img.clone())?;
                    nodes += 1;
                    let score = gh_pair(&f, &g, x, y)?;
                    let v = if modified { score.mgh } else { score.gh };
                    if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                        best = Some((v, f.clone(), g));
                    }
                }
            }
            let (value, f, g) = best.expect("nonempty family");
            Ok(GhResult {
                value,
                witness: GhWitness::MappingPair { f, g },
                nodes_explored: nodes,
                method: SearchMethod::BruteForce,
            })
        }
    }
}

/// `md_GH` over unrestricted pairs: the co-distortion term is gone, so the
/// two infima decouple and each map is minimized independently.
fn mgh_unrestricted<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    config: &SearchConfig,
) -> Result<GhResult<T>> {
    let (n, m) = (x.size(), y.size());
    let needed = (m as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX)
        .saturating_add((n as u128).checked_pow(m as u32).unwrap_or(u128::MAX));
    if needed > config.pair_budget as u128 {
        return Err(Error::PairBudgetExceeded {
            needed,
            budget: config.pair_budget,
        });
    }
    let mut nodes = 0u64;
    let mut min_f: Option<(T, Mapping)> = None;
    for f_img in MappingEnum::new(n, m) {
        let f = Mapping::new(n, m, f_img)?;
        nodes += 1;
        let d = dis_map(&f, x, y)?;
        if min_f.as_ref().is_none_or(|(v, _)| d < *v) {
            min_f = Some((d, f));
        }
    }
    let mut min_g: Option<(T, Mapping)> = None;
    for g_img in MappingEnum::new(m, n) {
        let g = Mapping::new(m, n, g_img)?;
        nodes += 1;
        let d = dis_map(&g, y, x)?;
        if min_g.as_ref().is_none_or(|(v, _)| d < *v) {
            min_g = Some((d, g));
        }
    }
    let (df, f) = min_f.expect("nonempty");
    let (dg, g) = min_g.expect("nonempty");
    Ok(GhResult {
        value: T::from_f64(0.5).unwrap() * df.max(dg),
        witness: GhWitness::MappingPair { f, g },
        nodes_explored: nodes,
        method: SearchMethod::BruteForce,
    })
}

// ---------------------------------------------------------------------------
// Bottleneck permutation search (inverse-pair family)
// ---------------------------------------------------------------------------

struct PermSearch<'a, T> {
    x: &'a MetricSpace<T>,
    y: &'a MetricSpace<T>,
    order: Vec<usize>,
    lb: T,
}

impl<'a, T: Scalar> PermSearch<'a, T> {
    /// Bottleneck cost of assigning `xi -> yj` against existing assignments.
    fn increment(&self, assigned: &[(usize, usize)], xi: usize, yj: usize) -> T {
        let mut inc = T::zero();
        for &pair in assigned {
            inc = inc.max(pair_term(self.x, self.y, (xi, yj), pair));
        }
        inc
    }

    /// Completion bound: every unassigned row needs some free column it can
    /// take below the incumbent; the max of the per-row minima bounds any
    /// completion from below.
    fn completion_bound(&self, assigned: &[(usize, usize)], depth: usize, used: u32) -> T {
        let mut bound = T::zero();
        for &xr in &self.order[depth..] {
            let mut row_min = T::infinity();
            for yj in 0..self.y.size() {
                if used & (1 << yj) != 0 {
                    continue;
                }
                let inc = self.increment(assigned, xr, yj);
                row_min = row_min.min(inc);
            }
            bound = bound.max(row_min);
        }
        bound
    }

    fn descend(
        &self,
        depth: usize,
        assigned: &mut Vec<(usize, usize)>,
        used: u32,
        partial: T,
        best: &mut T,
        nodes: &mut u64,
    ) {
        let n = self.x.size();
        if depth == n {
            if partial < *best {
                *best = partial;
            }
            return;
        }
        if *best <= self.lb {
            return;
        }
        let xi = self.order[depth];
        let mut candidates: Vec<(T, usize)> = (0..n)
            .filter(|&yj| used & (1 << yj) == 0)
            .map(|yj| (self.increment(assigned, xi, yj), yj))
            .collect();
        candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        for (inc, yj) in candidates {
            *nodes += 1;
            let next = partial.max(inc);
            if next >= *best {
                continue; // sorted, but later candidates tie-break differently
            }
            assigned.push((xi, yj));
            if self
                .completion_bound(assigned, depth + 1, used | (1 << yj))
                .max(next)
                < *best
            {
                self.descend(depth + 1, assigned, used | (1 << yj), next, best, nodes);
            }
            assigned.pop();
        }
    }

    /// First permutation (index order, least target first) with bottleneck
    /// cost `<= value`: the lexicographically smallest optimal one.
    fn reconstruct(
        &self,
        value: T,
        depth: usize,
        image: &mut Vec<usize>,
        assigned: &mut Vec<(usize, usize)>,
        used: u32,
        nodes: &mut u64,
    ) -> bool {
        let n = self.x.size();
        if depth == n {
            return true;
        }
        for yj in 0..n {
            if used & (1 << yj) != 0 {
                continue;
            }
            *nodes += 1;
            let inc = self.increment(assigned, depth, yj);
            if inc > value {
                continue;
            }
            assigned.push((depth, yj));
            image.push(yj);
            let viable = {
                let mut ok = true;
                for xr in (depth + 1)..n {
                    let mut row_min = T::infinity();
                    for yk in 0..n {
                        if (used | (1 << yj)) & (1 << yk) == 0 {
                            row_min = row_min.min(self.increment(assigned, xr, yk));
                        }
                    }
                    if row_min > value {
                        ok = false;
                        break;
                    }
                }
                ok
            };
            if viable
                && self.reconstruct(value, depth + 1, image, assigned, used | (1 << yj), nodes)
            {
                return true;
            }
            assigned.pop();
            image.pop();
        }
        false
    }
}

/// Greedy bottleneck assignment in eccentricity order, used to seed the
/// incumbent.
#[allow(clippy::needless_range_loop)]
fn greedy_bottleneck<T: Scalar>(x: &MetricSpace<T>, y: &MetricSpace<T>, order: &[usize]) -> T {
    let n = x.size();
    let mut assigned: Vec<(usize, usize)> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut cost = T::zero();
    for &xi in order {
        let mut best: Option<(T, usize)> = None;
        for yj in 0..n {
            if used[yj] {
                continue;
            }
            let mut inc = T::zero();
            for &pair in &assigned {
                inc = inc.max(pair_term(x, y, (xi, yj), pair));
            }
            if best.is_none_or(|(b, _)| inc < b) {
                best = Some((inc, yj));
            }
        }
        let (inc, yj) = best.expect("one free column per row");
        used[yj] = true;
        assigned.push((xi, yj));
        cost = cost.max(inc);
    }
    cost
}

/// `d_GH^i`: half the minimum distortion over bijections, by bottleneck
/// branch and bound over partial permutations. The witness pair is the
/// lexicographically smallest optimal permutation with its inverse.
fn bottleneck_bijection<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    config: &SearchConfig,
) -> Result<GhResult<T>> {
    let n = x.size();
    // used columns are a u32 bitmask
    let cap = 31.min(config.permutation_cap);
    if n > cap {
        return Err(Error::CapExceeded { x: n, y: n, cap });
    }
    let search = PermSearch {
        x,
        y,
        order: eccentricity_order(x),
        lb: (x.diameter() - y.diameter()).abs(),
    };
    let seed = greedy_bottleneck(x, y, &search.order).min(dis_map(&Mapping::identity(n), x, y)?);

    let first = search.order[0];
    let branch = |yj: &usize| -> (T, u64) {
        let yj = *yj;
        let mut nodes = 1u64;
        let mut best = seed;
        let mut assigned = vec![(first, yj)];
        search.descend(1, &mut assigned, 1 << yj, T::zero(), &mut best, &mut nodes);
        (best, nodes)
    };
    let columns: Vec<usize> = (0..n).collect();
    let branch_results: Vec<(T, u64)> = if config.parallel {
        columns.par_iter().map(branch).collect()
    } else {
        columns.iter().map(branch).collect()
    };
    let mut value = seed;
    let mut nodes = 0u64;
    for (v, k) in branch_results {
        value = value.min(v);
        nodes += k;
    }

    let mut image = Vec::with_capacity(n);
    let mut assigned = Vec::with_capacity(n);
    let found = search.reconstruct(value, 0, &mut image, &mut assigned, 0, &mut nodes);
    assert!(
        found,
        "optimal bottleneck must be attainable by some permutation"
    );
    let f = Mapping::new(n, n, image)?;
    let g = f.inverse().expect("permutation");
    Ok(GhResult {
        value: T::from_f64(0.5).unwrap() * value,
        witness: GhWitness::MappingPair { f, g },
        nodes_explored: nodes,
        method: SearchMethod::BranchAndBound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point(d: f64) -> MetricSpace<f64> {
        MetricSpace::line(&[0.0, d])
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn identical_spaces_have_distance_zero_with_identity_witness() {
        let x = MetricSpace::line(&[0.0, 1.0, 3.0]);
        let r = gh_exact(&x, &x, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(
            r.witness,
            GhWitness::Correspondence(Correspondence::identity(3))
        );
    }

    #[test]
    fn one_point_versus_space_is_half_diameter() {
        let x = MetricSpace::line(&[0.0]);
        let y = MetricSpace::line(&[0.0, 1.0, 3.0]);
        let r = gh_exact(&x, &y, &cfg()).unwrap();
        assert_eq!(r.value, 1.5);
        let r = gh_exact(&y, &x, &cfg()).unwrap();
        assert_eq!(r.value, 1.5);
    }

    #[test]
    fn two_point_spaces_distance_one() {
        // all correspondences between 2-point spaces with distances 1 and 3:
        // the best is a matching with distortion 2.
        let r = gh_exact(&two_point(1.0), &two_point(3.0), &cfg()).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(
            r.witness,
            GhWitness::Correspondence(Correspondence::identity(2))
        );
    }

    #[test]
    fn pair_form_agrees_on_tiny_cases() {
        let r = gh_pair_inf(&two_point(1.0), &two_point(3.0), &cfg()).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.nodes_explored, 16);

        let x = MetricSpace::line(&[0.0]);
        let r = gh_pair_inf(&x, &x, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);

        let y = two_point(3.0);
        let r = gh_pair_inf(&x, &y, &cfg()).unwrap();
        assert_eq!(r.value, 1.5);
        assert_eq!(r.nodes_explored, 2);
    }

    #[test]
    fn pair_budget_is_enforced() {
        let x = MetricSpace::line(&[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let err = gh_pair_inf(
            &x,
            &x,
            &SearchConfig {
                pair_budget: 1000,
                ..cfg()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::PairBudgetExceeded { .. }));
    }

    #[test]
    fn correspondence_cap_is_enforced() {
        let x = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let err = gh_exact(
            &x,
            &x,
            &SearchConfig {
                correspondence_cap: 2,
                ..cfg()
            },
        )
        .unwrap_err();
        assert_eq!(err, Error::CapExceeded { x: 3, y: 3, cap: 2 });
    }

    #[test]
    fn inverse_pair_on_identical_spaces_is_identity() {
        let x = MetricSpace::line(&[0.0, 1.0, 3.0]);
        let r = gh_class(&x, &x, ClassTag::InversePair, false, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        match r.witness {
            GhWitness::MappingPair { f, g } => {
                assert_eq!(f, Mapping::identity(3));
                assert_eq!(g, Mapping::identity(3));
            }
            _ => panic!("expected mapping pair"),
        }
    }

    #[test]
    fn inverse_pair_on_stretched_two_point_spaces() {
        let r = gh_class(
            &two_point(1.0),
            &two_point(3.0),
            ClassTag::InversePair,
            false,
            &cfg(),
        )
        .unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn class_tags_reject_unequal_sizes() {
        let x = MetricSpace::line(&[0.0, 1.0]);
        let y = MetricSpace::line(&[0.0, 1.0, 2.0]);
        for tag in [
            ClassTag::Injective,
            ClassTag::Surjective,
            ClassTag::Bijective,
            ClassTag::InversePair,
        ] {
            let err = gh_class(&x, &y, tag, false, &cfg()).unwrap_err();
            assert!(matches!(err, Error::InfeasibleClass { .. }));
        }
    }

    #[test]
    fn lower_bound_is_attained_on_point_versus_space() {
        let x = MetricSpace::line(&[0.0]);
        let y = MetricSpace::line(&[0.0, 3.0]);
        assert_eq!(gh_lower_bound(&x, &y), 1.5);
        assert_eq!(gh_lower_bound(&y, &y), 0.0);
        assert_eq!(gh_lower_bound(&two_point(1.0), &two_point(3.0)), 1.0);
    }

    #[test]
    fn parallel_search_matches_sequential() {
        let x = MetricSpace::line(&[0.0, 1.0, 3.0, 7.0]);
        let y = MetricSpace::line(&[0.0, 2.0, 3.0, 8.0]);
        let seq = gh_exact(&x, &y, &cfg()).unwrap();
        let par = gh_exact(
            &x,
            &y,
            &SearchConfig {
                parallel: true,
                ..cfg()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
        let seq = gh_class(&x, &y, ClassTag::InversePair, false, &cfg()).unwrap();
        let par = gh_class(
            &x,
            &y,
            ClassTag::InversePair,
            false,
            &SearchConfig {
                parallel: true,
                ..cfg()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn tie_breaking_prefers_the_identity_on_uniform_spaces() {
        // every perfect matching between uniform spaces ties at the optimum;
        // the lexicographic rule must settle on the identity
        let x = MetricSpace::from_rows(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let y = MetricSpace::from_rows(vec![
            vec![0.0, 2.0, 2.0],
            vec![2.0, 0.0, 2.0],
            vec![2.0, 2.0, 0.0],
        ])
        .unwrap();
        let r = gh_exact(&x, &y, &cfg()).unwrap();
        assert_eq!(r.value, 0.5);
        assert_eq!(r.witness, GhWitness::Correspondence(Correspondence::identity(3)));
        let r = gh_class(&x, &y, ClassTag::InversePair, false, &cfg()).unwrap();
        assert_eq!(r.value, 0.5);
        match &r.witness {
            GhWitness::MappingPair { f, .. } => assert_eq!(f, &Mapping::identity(3)),
            _ => panic!("expected mapping pair"),
        }
    }

    #[test]
    fn exact_agrees_with_pair_form_on_a_3x3_case() {
        let x = MetricSpace::line(&[0.0, 1.0, 3.0]);
        let y = MetricSpace::line(&[0.0, 2.0, 5.0]);
        let a: GhResult<f64> = gh_exact(&x, &y, &cfg()).unwrap();
        let b = gh_pair_inf(&x, &y, &cfg()).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
    }
}
