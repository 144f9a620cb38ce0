//! Cover construction and the exact minimum set cover over a membership
//! matrix: the modeled normal covering number.
//!
//! The solve pipeline is: merge duplicate columns (identical class rows),
//! merge duplicate rows (types with identical candidate sets), drop
//! dominated rows (a type whose candidate set contains another's is
//! covered for free), take a greedy upper bound, then run depth-first
//! branch and bound on the uncovered type with the fewest remaining
//! candidates. A second pass extracts the lexicographically least optimal
//! cover, and an optional third pass enumerates every optimal cover.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::arith::{factorize, g_value};
use crate::universe::{GroupFlavor, MembershipMatrix, SubgroupClass};
use crate::{Error, Result};

/// The explicit cover of size g(n): the intransitive classes with `x`
/// coprime to `p_1 p_2`, plus the two wreath classes with block sizes `p_1`
/// and `p_2`. For flavor `A` the same classes are read as intersections
/// with `A_n`. Requires `r ≥ 2`.
pub fn build_paper_cover(n: u32, _flavor: GroupFlavor) -> Result<Vec<SubgroupClass>> {
    let f = factorize(n as u64)?;
    let g = g_value(&f)? as usize;
    let mut cover: Vec<SubgroupClass> = crate::universe::p_min_set(n)?
        .into_iter()
        .map(|x| SubgroupClass::Intransitive { x })
        .collect();
    for i in 1..=2 {
        let b = f.prime(i) as u32;
        cover.push(SubgroupClass::Imprimitive { b, m: n / b });
    }
    debug_assert_eq!(cover.len(), g);
    Ok(cover)
}

/// Checks a cover against the matrix; returns the indices of uncovered
/// types (empty iff the cover is a basic set over the modeled types).
/// Every cover class must belong to the matrix universe.
pub fn verify_cover(matrix: &MembershipMatrix, cover: &[SubgroupClass]) -> Result<Vec<usize>> {
    let indices = cover
        .iter()
        .map(|c| {
            matrix
                .class_index(c)
                .ok_or_else(|| Error::InvalidInput(format!("cover class {c} not in the universe")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(verify_cover_indices(matrix, &indices))
}

/// Same as [`verify_cover`] for classes given by universe index.
pub fn verify_cover_indices(matrix: &MembershipMatrix, cover: &[usize]) -> Vec<usize> {
    let words = matrix.num_types().div_ceil(64);
    let mut acc = vec![0u64; words];
    for &c in cover {
        matrix.row(c).or_into(&mut acc);
    }
    let mut uncovered = Vec::new();
    for i in 0..matrix.num_types() {
        if acc[i / 64] >> (i % 64) & 1 == 0 {
            uncovered.push(i);
        }
    }
    uncovered
}

#[derive(Debug, Clone)]
pub struct MinCoverOptions {
    /// Also enumerate every minimum cover (subject to `enumerate_cap`).
    pub enumerate_all: bool,
    /// Most covers stored before the enumeration is cut off.
    pub enumerate_cap: usize,
    /// Wall-clock budget; on expiry the best cover so far is returned with
    /// `timed_out` set.
    pub time_limit: Option<Duration>,
}

impl Default for MinCoverOptions {
    fn default() -> Self {
        MinCoverOptions { enumerate_all: false, enumerate_cap: 100_000, time_limit: None }
    }
}

#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct SolveStats {
    /// Branch-and-bound nodes over all phases.
    pub nodes: u64,
    /// Types merged away as duplicates of another type's candidate set.
    pub duplicate_types_merged: usize,
    /// Types dropped by dominance.
    pub dominated_types_dropped: usize,
    /// Classes merged as duplicate columns.
    pub duplicate_columns_merged: usize,
    pub wall_time: Duration,
}

/// Outcome of an exact minimum-cover computation.
#[derive(Debug, Clone)]
pub struct CoverResult {
    pub n: u32,
    pub flavor: GroupFlavor,
    /// Optimal cover size (best known upper bound if `timed_out`).
    pub minimum_size: usize,
    /// Lexicographically least minimum cover, as universe indices.
    pub canonical_indices: Vec<usize>,
    /// The same cover resolved to classes.
    pub canonical_cover: Vec<SubgroupClass>,
    /// Every minimum cover (indices, each ascending; list sorted), when
    /// enumeration was requested.
    pub all_minimum_covers: Option<Vec<Vec<usize>>>,
    /// Exact count of minimum covers (a lower bound if truncated).
    pub num_minimum_covers: Option<u64>,
    pub enumeration_truncated: bool,
    /// True iff the universe carried no primitive data, i.e. the modeled
    /// value is only known to satisfy γ(G) ≤ modeled ≤ g(n).
    pub conditional: bool,
    pub timed_out: bool,
    pub stats: SolveStats,
}

/// Exact minimum set cover over the matrix universe.
///
/// Errors with [`Error::Infeasible`] naming a witness type when some type
/// has no covering class at all.
pub fn min_cover(matrix: &MembershipMatrix, options: &MinCoverOptions) -> Result<CoverResult> {
    let start = Instant::now();
    let num_classes = matrix.num_classes();
    let num_types = matrix.num_types();
    if num_types == 0 || num_classes == 0 {
        return Err(Error::InvalidInput("empty cover instance".into()));
    }

    // per-type candidate masks
    let mut type_masks = vec![0u128; num_types];
    for ci in 0..num_classes {
        for (wi, &w) in matrix.row(ci).words().iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                type_masks[wi * 64 + b] |= 1 << ci;
                w &= w - 1;
            }
        }
    }
    if let Some(i) = type_masks.iter().position(|&m| m == 0) {
        return Err(Error::Infeasible { witness: matrix.types().to_cycle_type(i) });
    }

    let mut stats = SolveStats::default();

    // column dedup: classes with identical rows collapse onto the least
    // index; expansion groups are kept for enumeration
    let mut row_groups: HashMap<&[u64], usize> = HashMap::new();
    let mut rep_of = Vec::with_capacity(num_classes);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for ci in 0..num_classes {
        let rep = *row_groups.entry(matrix.row(ci).words()).or_insert(ci);
        rep_of.push(rep);
        groups[rep].push(ci);
    }
    let dup_mask: u128 = rep_of
        .iter()
        .enumerate()
        .filter(|&(ci, &rep)| rep != ci)
        .fold(0u128, |m, (ci, _)| m | 1 << ci);
    stats.duplicate_columns_merged = dup_mask.count_ones() as usize;
    let allowed0 = ((!0u128) >> (128 - num_classes)) & !dup_mask;

    // row dedup on candidate masks
    let mut uniq: HashMap<u128, u64> = HashMap::new();
    for &m in &type_masks {
        *uniq.entry(m & !dup_mask).or_insert(0) += 1;
    }
    let mut masks: Vec<u128> = uniq.keys().copied().collect();
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    stats.duplicate_types_merged = num_types - masks.len();

    // dominance: a mask containing a kept mask is covered for free. The
    // scan is exact while the instance is small and otherwise only checks
    // against low-popcount survivors, which is where dominators live.
    const EXACT_DOMINANCE_LIMIT: usize = 4000;
    const SMALL_POPCOUNT: u32 = 12;
    let mut kept: Vec<u128> = Vec::with_capacity(masks.len());
    let mut kept_small: Vec<u128> = Vec::new();
    let exact = masks.len() <= EXACT_DOMINANCE_LIMIT;
    for m in masks {
        let scan: &[u128] = if exact { &kept } else { &kept_small };
        if scan.iter().any(|&k| m & k == k) {
            stats.dominated_types_dropped += 1;
            continue;
        }
        if m.count_ones() <= SMALL_POPCOUNT {
            kept_small.push(m);
        }
        kept.push(m);
    }
    let masks = kept;

    let mut searcher = Searcher::new(masks, num_classes, allowed0, options.time_limit, start);

    // greedy upper bound, then exact branch and bound
    let (greedy_size, greedy_cover) = searcher.greedy();
    searcher.best = greedy_size;
    searcher.best_cover = greedy_cover;
    let full = searcher.full_uncovered();
    searcher.check_deadline();
    if !searcher.timed_out {
        searcher.optimize(&full, &mut Vec::new(), allowed0);
    }

    let minimum_size = searcher.best;
    let mut canonical_indices = searcher.best_cover.clone();
    canonical_indices.sort_unstable();

    if !searcher.timed_out {
        if let Some(lex) = searcher.lex_least_cover(minimum_size) {
            canonical_indices = lex;
        }
    }

    // optional exhaustive enumeration of optimal covers
    let mut all_covers = None;
    let mut num_covers = None;
    let mut truncated = false;
    if options.enumerate_all && !searcher.timed_out {
        let mut reps: Vec<Vec<usize>> = Vec::new();
        searcher.enumerate(&full, &mut Vec::new(), allowed0, options.enumerate_cap, &mut reps);
        truncated = searcher.enum_truncated;
        let mut expanded: Vec<Vec<usize>> = Vec::new();
        let mut count: u64 = 0;
        for rep_cover in &reps {
            let choices: Vec<&Vec<usize>> = rep_cover.iter().map(|&c| &groups[c]).collect();
            let mult: u64 = choices.iter().map(|g| g.len() as u64).product();
            count = count.saturating_add(mult);
            expand_product(&choices, &mut expanded, options.enumerate_cap, &mut truncated);
        }
        expanded.iter_mut().for_each(|c| c.sort_unstable());
        expanded.sort();
        expanded.dedup();
        all_covers = Some(expanded);
        num_covers = Some(count);
    }

    stats.nodes = searcher.nodes;
    stats.wall_time = start.elapsed();
    let timed_out = searcher.timed_out;

    Ok(CoverResult {
        n: matrix.n(),
        flavor: matrix.flavor(),
        minimum_size,
        canonical_cover: canonical_indices
            .iter()
            .map(|&c| matrix.classes()[c].clone())
            .collect(),
        canonical_indices,
        all_minimum_covers: all_covers,
        num_minimum_covers: num_covers,
        enumeration_truncated: truncated,
        conditional: !matrix.has_primitive_data(),
        timed_out,
        stats,
    })
}

fn expand_product(
    choices: &[&Vec<usize>],
    out: &mut Vec<Vec<usize>>,
    cap: usize,
    truncated: &mut bool,
) {
    let mut stack = vec![Vec::with_capacity(choices.len())];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == choices.len() {
            if out.len() >= cap {
                *truncated = true;
                return;
            }
            out.push(prefix);
            continue;
        }
        for &c in choices[prefix.len()].iter().rev() {
            let mut next = prefix.clone();
            next.push(c);
            stack.push(next);
        }
    }
}

struct Searcher {
    /// Reduced type rows: candidate class masks, one per surviving type.
    masks: Vec<u128>,
    /// Per class, bitset over the reduced rows it covers.
    cov: Vec<Vec<u64>>,
    num_classes: usize,
    allowed0: u128,
    best: usize,
    best_cover: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
    enum_truncated: bool,
    words: usize,
}

impl Searcher {
    fn new(
        masks: Vec<u128>,
        num_classes: usize,
        allowed0: u128,
        time_limit: Option<Duration>,
        start: Instant,
    ) -> Self {
        let words = masks.len().div_ceil(64).max(1);
        let mut cov = vec![vec![0u64; words]; num_classes];
        for (i, &m) in masks.iter().enumerate() {
            let mut m = m;
            while m != 0 {
                let c = m.trailing_zeros() as usize;
                cov[c][i / 64] |= 1 << (i % 64);
                m &= m - 1;
            }
        }
        Searcher {
            masks,
            cov,
            num_classes,
            allowed0,
            best: usize::MAX,
            best_cover: Vec::new(),
            nodes: 0,
            deadline: time_limit.map(|d| start + d),
            timed_out: false,
            enum_truncated: false,
            words,
        }
    }

    fn full_uncovered(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.words];
        for i in 0..self.masks.len() {
            v[i / 64] |= 1 << (i % 64);
        }
        v
    }

    fn check_deadline(&mut self) {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.timed_out = true;
            }
        }
    }

    fn check_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if self.nodes % 64 == 0 {
            self.check_deadline();
        }
        self.timed_out
    }

    fn iter_set(uncovered: &[u64]) -> impl Iterator<Item = usize> + '_ {
        uncovered.iter().enumerate().flat_map(|(wi, &w)| {
            std::iter::successors(
                if w == 0 { None } else { Some(w) },
                |&w| {
                    let w = w & (w - 1);
                    if w == 0 { None } else { Some(w) }
                },
            )
            .map(move |w| wi * 64 + w.trailing_zeros() as usize)
        })
    }

    /// Fail-first branch row and a packing lower bound, in one sweep.
    /// Returns `None` when some row has no remaining candidate.
    fn branch_and_bound_info(&self, uncovered: &[u64], allowed: u128) -> Option<(usize, u128, usize)> {
        let mut best_row = usize::MAX;
        let mut best_cands = 0u128;
        let mut best_count = u32::MAX;
        let mut lb = 0usize;
        let mut acc = 0u128;
        for i in Self::iter_set(uncovered) {
            let cands = self.masks[i] & allowed;
            let count = cands.count_ones();
            if count == 0 {
                return None;
            }
            if count < best_count {
                best_count = count;
                best_row = i;
                best_cands = cands;
            }
            if cands & acc == 0 {
                lb += 1;
                acc |= cands;
            }
        }
        Some((best_row, best_cands, lb))
    }

    fn remove_covered(&self, uncovered: &[u64], class: usize) -> Vec<u64> {
        uncovered
            .iter()
            .zip(&self.cov[class])
            .map(|(&u, &c)| u & !c)
            .collect()
    }

    fn is_empty(uncovered: &[u64]) -> bool {
        uncovered.iter().all(|&w| w == 0)
    }

    fn greedy(&mut self) -> (usize, Vec<usize>) {
        let mut uncovered = self.full_uncovered();
        let mut cover = Vec::new();
        while !Self::is_empty(&uncovered) {
            let mut best_c = usize::MAX;
            let mut best_gain = 0usize;
            for c in 0..self.num_classes {
                if self.allowed0 >> c & 1 == 0 {
                    continue;
                }
                let gain: usize = uncovered
                    .iter()
                    .zip(&self.cov[c])
                    .map(|(&u, &cv)| (u & cv).count_ones() as usize)
                    .sum();
                if gain > best_gain {
                    best_gain = gain;
                    best_c = c;
                }
            }
            if best_c == usize::MAX {
                // infeasibility was ruled out before reduction, so every
                // row retains a candidate
                unreachable!("greedy stalled on a feasible instance");
            }
            cover.push(best_c);
            uncovered = self.remove_covered(&uncovered, best_c);
        }
        (cover.len(), cover)
    }

    fn optimize(&mut self, uncovered: &[u64], chosen: &mut Vec<usize>, allowed: u128) {
        self.nodes += 1;
        if self.check_time() {
            return;
        }
        if Self::is_empty(uncovered) {
            if chosen.len() < self.best {
                self.best = chosen.len();
                self.best_cover = chosen.clone();
            }
            return;
        }
        let Some((_, cands, lb)) = self.branch_and_bound_info(uncovered, allowed) else {
            return;
        };
        if chosen.len() + lb >= self.best {
            return;
        }
        let mut remaining = cands;
        let mut local_allowed = allowed;
        while remaining != 0 {
            let c = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            let next = self.remove_covered(uncovered, c);
            chosen.push(c);
            self.optimize(&next, chosen, local_allowed);
            chosen.pop();
            if self.timed_out {
                return;
            }
            // siblings may not use c: partitions the space, no duplicates
            local_allowed &= !(1u128 << c);
            remaining &= local_allowed;
        }
    }

    /// Any cover of size ≤ budget within `allowed`?
    fn exists(&mut self, uncovered: &[u64], budget: usize, allowed: u128) -> bool {
        self.nodes += 1;
        if Self::is_empty(uncovered) {
            return true;
        }
        if budget == 0 || self.check_time() {
            return false;
        }
        let Some((_, cands, lb)) = self.branch_and_bound_info(uncovered, allowed) else {
            return false;
        };
        if lb > budget {
            return false;
        }
        let mut remaining = cands;
        let mut local_allowed = allowed;
        while remaining != 0 {
            let c = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            let next = self.remove_covered(uncovered, c);
            if self.exists(&next, budget - 1, local_allowed) {
                return true;
            }
            if self.timed_out {
                return false;
            }
            local_allowed &= !(1u128 << c);
            remaining &= local_allowed;
        }
        false
    }

    /// Lexicographically least cover of exactly the optimal size: extend a
    /// sorted prefix by the least class whose completion stays feasible.
    /// `None` only if the time budget expires mid-extraction.
    fn lex_least_cover(&mut self, size: usize) -> Option<Vec<usize>> {
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        let mut uncovered = self.full_uncovered();
        let mut from = 0usize;
        while chosen.len() < size {
            let mut found = None;
            for c in from..self.num_classes {
                if self.allowed0 >> c & 1 == 0 {
                    continue;
                }
                let next = self.remove_covered(&uncovered, c);
                let rest_allowed = self.allowed0 & mask_from(c + 1);
                if self.exists(&next, size - chosen.len() - 1, rest_allowed) {
                    found = Some((c, next));
                    break;
                }
                if self.timed_out {
                    return None;
                }
            }
            match found {
                Some((c, next)) => {
                    chosen.push(c);
                    uncovered = next;
                    from = c + 1;
                }
                None => {
                    assert!(self.timed_out, "no lex-least completion at optimal size {size}");
                    return None;
                }
            }
        }
        Some(chosen)
    }

    /// Collects every cover of size exactly `self.best` (over representative
    /// classes), up to `cap`.
    fn enumerate(
        &mut self,
        uncovered: &[u64],
        chosen: &mut Vec<usize>,
        allowed: u128,
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        self.nodes += 1;
        if self.enum_truncated || self.check_time() {
            return;
        }
        if Self::is_empty(uncovered) {
            debug_assert_eq!(chosen.len(), self.best);
            if out.len() >= cap {
                self.enum_truncated = true;
                return;
            }
            let mut cover = chosen.clone();
            cover.sort_unstable();
            out.push(cover);
            return;
        }
        let Some((_, cands, lb)) = self.branch_and_bound_info(uncovered, allowed) else {
            return;
        };
        if chosen.len() + lb > self.best {
            return;
        }
        let mut remaining = cands;
        let mut local_allowed = allowed;
        while remaining != 0 {
            let c = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            let next = self.remove_covered(uncovered, c);
            chosen.push(c);
            self.enumerate(&next, chosen, local_allowed, cap, out);
            chosen.pop();
            if self.enum_truncated || self.timed_out {
                return;
            }
            local_allowed &= !(1u128 << c);
            remaining &= local_allowed;
        }
    }
}

fn mask_from(c: usize) -> u128 {
    if c >= 128 {
        0
    } else {
        !0u128 << c
    }
}

/// Shape report for one minimum cover against the conjectured form
/// "exactly the coprime intransitive classes plus one wreath class for each
/// of the two smallest primes".
#[derive(Debug, Clone, serde::Serialize)]
pub struct CoverShape {
    pub cover: Vec<String>,
    pub intransitive_is_p_min: bool,
    pub wreath_pair_ok: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MinCoverAnalysis {
    pub n: u32,
    pub flavor: GroupFlavor,
    pub p_min: Vec<u32>,
    pub covers_analyzed: usize,
    /// Covers whose intransitive part equals the p_min set.
    pub intransitive_matches: usize,
    /// Covers matching the full conjectured shape.
    pub full_matches: usize,
    pub per_cover: Vec<CoverShape>,
}

/// Reports, for each enumerated minimum cover, whether its intransitive
/// part is exactly the conjectured set and whether the rest is one wreath
/// class per smallest prime. A report, not an assertion.
pub fn analyze_min_covers(result: &CoverResult, matrix: &MembershipMatrix) -> Result<MinCoverAnalysis> {
    let covers = result
        .all_minimum_covers
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("analyze_min_covers requires enumerate_all".into()))?;
    let n = result.n;
    let p_min = crate::universe::p_min_set(n)?;
    let f = factorize(n as u64)?;
    let wreath_slots: Vec<[u32; 2]> = (1..=2)
        .map(|i| {
            let p = f.prime(i) as u32;
            [p, n / p]
        })
        .collect();

    let mut per_cover = Vec::with_capacity(covers.len());
    let mut intransitive_matches = 0;
    let mut full_matches = 0;
    for cover in covers {
        let classes: Vec<&SubgroupClass> = cover.iter().map(|&c| &matrix.classes()[c]).collect();
        let mut xs: Vec<u32> = classes
            .iter()
            .filter_map(|c| match c {
                SubgroupClass::Intransitive { x } => Some(*x),
                _ => None,
            })
            .collect();
        xs.sort_unstable();
        let intransitive_is_p_min = xs == p_min;
        let rest: Vec<&SubgroupClass> = classes
            .iter()
            .filter(|c| !matches!(c, SubgroupClass::Intransitive { .. }))
            .copied()
            .collect();
        let wreath_pair_ok = match rest.as_slice() {
            [SubgroupClass::Imprimitive { b: b1, .. }, SubgroupClass::Imprimitive { b: b2, .. }] => {
                let fits = |b: u32, slot: &[u32; 2]| slot.contains(&b);
                (fits(*b1, &wreath_slots[0]) && fits(*b2, &wreath_slots[1]))
                    || (fits(*b2, &wreath_slots[0]) && fits(*b1, &wreath_slots[1]))
            }
            _ => false,
        };
        if intransitive_is_p_min {
            intransitive_matches += 1;
        }
        if intransitive_is_p_min && wreath_pair_ok {
            full_matches += 1;
        }
        per_cover.push(CoverShape {
            cover: classes.iter().map(|c| c.to_string()).collect(),
            intransitive_is_p_min,
            wreath_pair_ok,
        });
    }
    Ok(MinCoverAnalysis {
        n,
        flavor: result.flavor,
        p_min,
        covers_analyzed: covers.len(),
        intransitive_matches,
        full_matches,
        per_cover,
    })
}
