//! Does a permutation of a given cycle type lie in some conjugate of a
//! given maximal subgroup class? Everything is decided from the type alone.
//!
//! * Intransitive `S_x × S_{n−x}`: some sub-multiset of parts sums to `x`.
//! * Imprimitive `S_b ≀ S_m`: the cycles admit a *block grouping* — a
//!   partition of the cycles into groups, each group `g` spanning `m_g`
//!   blocks, with `m_g` dividing every cycle length in the group and the
//!   per-block intersections `d_i = x_i/m_g` summing to `b` over the group.
//! * Alternating: the permutation is even.

use std::fmt;

use crate::arith::gcd;
use crate::typesys::{is_even, CycleType};
use crate::{Error, Result};

/// Bitset of sub-multiset sums `0..=cap` of a part list.
#[derive(Debug, Clone)]
pub(crate) struct SumBits {
    words: Vec<u64>,
    cap: u32,
}

impl SumBits {
    pub(crate) fn compute(parts: &[u32], cap: u32) -> Self {
        let words = vec![0u64; cap as usize / 64 + 1];
        let mut s = SumBits { words, cap };
        s.words[0] = 1; // empty sum
        for &p in parts {
            if p <= cap {
                s.or_shifted(p as usize);
            }
        }
        s
    }

    /// `self |= self << by`, truncated above `cap`.
    fn or_shifted(&mut self, by: usize) {
        let ws = by / 64;
        let bs = by % 64;
        for i in (ws..self.words.len()).rev() {
            let mut v = self.words[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= self.words[i - ws - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
    }

    pub(crate) fn get(&self, s: u32) -> bool {
        s <= self.cap && self.words[s as usize / 64] >> (s % 64) & 1 == 1
    }
}

/// Whether the type belongs to the intransitive class `S_x × S_{n−x}`.
/// Requires `1 ≤ x < n/2`.
pub fn in_intransitive(t: &CycleType, x: u32) -> bool {
    assert!(x >= 1 && 2 * x < t.n(), "in_intransitive: need 1 <= x < n/2");
    SumBits::compute(t.parts(), x).get(x)
}

/// Whether the type belongs to `A_n`.
pub fn in_alternating(t: &CycleType) -> bool {
    is_even(t)
}

/// Fast path: a 2-part type `[x, n−x]` whose smaller part is coprime to `n`
/// belongs to no imprimitive class at all, for any block size.
pub fn two_part_coprime_excluded(t: &CycleType) -> bool {
    t.num_parts() == 2 && gcd(t.parts()[1] as u64, t.n() as u64) == 1
}

/// One group of a block grouping: the cycles sharing a common block set of
/// size `m_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGroup {
    pub m_g: u32,
    /// Indices into the canonical part list of the type.
    pub cycles: Vec<usize>,
}

/// A certificate that a type belongs to `S_b ≀ S_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGrouping {
    pub b: u32,
    pub m: u32,
    pub groups: Vec<BlockGroup>,
}

impl BlockGrouping {
    /// Re-checks the certificate against the type: the groups partition the
    /// cycles, `m_g` divides each member length, each group's `Σ x_i/m_g`
    /// equals `b`, and the `m_g` sum to `m`.
    pub fn verify(&self, t: &CycleType) -> bool {
        let parts = t.parts();
        let mut seen = vec![false; parts.len()];
        let mut m_total = 0u64;
        for g in &self.groups {
            if g.m_g == 0 || g.cycles.is_empty() {
                return false;
            }
            let mut d_sum = 0u64;
            for &i in &g.cycles {
                if i >= parts.len() || seen[i] || parts[i] % g.m_g != 0 {
                    return false;
                }
                seen[i] = true;
                d_sum += (parts[i] / g.m_g) as u64;
            }
            if d_sum != self.b as u64 {
                return false;
            }
            m_total += g.m_g as u64;
        }
        seen.iter().all(|&s| s) && m_total == self.m as u64 && self.b * self.m == t.n()
    }
}

impl fmt::Display for BlockGrouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{m_g={}: cycles {:?}}}", g.m_g, g.cycles)?;
        }
        Ok(())
    }
}

fn check_block_size(n: u32, b: u32) -> Result<u32> {
    if b < 2 || 2 * b > n || n % b != 0 {
        return Err(Error::InvalidInput(format!(
            "block size b = {b} invalid for n = {n}: need b | n and 2 <= b <= n/2"
        )));
    }
    Ok(n / b)
}

/// Whether the type belongs to the imprimitive class `S_b ≀ S_{n/b}`.
pub fn in_imprimitive(t: &CycleType, b: u32) -> Result<bool> {
    check_block_size(t.n(), b)?;
    let mut scratch = ImprimScratch::default();
    scratch.load(t.parts());
    Ok(scratch.search(b))
}

/// Like [`in_imprimitive`] but returns one witness grouping when membership
/// holds.
pub fn imprimitive_witness(t: &CycleType, b: u32) -> Result<Option<BlockGrouping>> {
    let m = check_block_size(t.n(), b)?;
    let mut scratch = ImprimScratch::default();
    scratch.load(t.parts());
    if !scratch.search(b) {
        return Ok(None);
    }
    // convert the recorded (m_g, member-value) groups into cycle indices:
    // parts are sorted, so hand out positions per value left to right
    let parts = t.parts();
    let mut next_pos: Vec<usize> = Vec::new();
    let mut groups = Vec::new();
    let ends = {
        let mut e: Vec<usize> = scratch.group_start.iter().skip(1).map(|&s| s as usize).collect();
        e.push(scratch.members.len());
        e
    };
    for (gi, (&m_g, &start)) in scratch.group_mg.iter().zip(&scratch.group_start).enumerate() {
        let mut cycles = Vec::new();
        for &v in &scratch.members[start as usize..ends[gi]] {
            let mut pos = parts.iter().position(|&p| p == v).unwrap();
            while next_pos.contains(&pos) {
                pos += 1;
                debug_assert!(parts[pos] == v);
            }
            next_pos.push(pos);
            cycles.push(pos);
        }
        groups.push(BlockGroup { m_g, cycles });
    }
    let witness = BlockGrouping { b, m, groups };
    debug_assert!(witness.verify(t));
    Ok(Some(witness))
}

/// Reusable state for the block-grouping search. The matrix builder keeps
/// one per worker and loads each type once before probing all block sizes.
#[derive(Debug, Default)]
pub(crate) struct ImprimScratch {
    /// Distinct part values, descending.
    values: Vec<u32>,
    counts: Vec<u32>,
    saved_counts: Vec<u32>,
    /// Divisors of each distinct value, descending.
    divisors: Vec<Vec<u32>>,
    // witness log of the successful search, one entry per opened group
    group_mg: Vec<u32>,
    group_start: Vec<u32>,
    members: Vec<u32>,
}

impl ImprimScratch {
    pub(crate) fn load(&mut self, parts: &[u32]) {
        self.values.clear();
        self.saved_counts.clear();
        self.divisors.clear();
        for &p in parts {
            // parts are sorted descending, so equal values are adjacent
            if self.values.last() == Some(&p) {
                *self.saved_counts.last_mut().unwrap() += 1;
            } else {
                self.values.push(p);
                self.saved_counts.push(1);
                let mut divs: Vec<u32> = (1..=p).filter(|d| p % d == 0).collect();
                divs.reverse();
                self.divisors.push(divs);
            }
        }
    }

    pub(crate) fn search(&mut self, b: u32) -> bool {
        self.counts.clear();
        self.counts.extend_from_slice(&self.saved_counts);
        self.group_mg.clear();
        self.group_start.clear();
        self.members.clear();
        self.next_group(b)
    }

    /// Opens a new group anchored at the largest remaining cycle. Every
    /// grouping can be normalized so that each group is anchored by the
    /// largest cycle unplaced when the group opens, so this is exhaustive.
    fn next_group(&mut self, b: u32) -> bool {
        let Some(ai) = self.counts.iter().position(|&c| c > 0) else {
            return true; // every cycle placed; group sums force Σ m_g = m
        };
        let x = self.values[ai];
        self.counts[ai] -= 1;
        for di in 0..self.divisors[ai].len() {
            let m_g = self.divisors[ai][di];
            let need = m_g as u64 * b as u64;
            if need < x as u64 {
                break; // divisors descend: no later m_g can fit the anchor
            }
            let target = need - x as u64;
            if target > u32::MAX as u64 || self.eligible_sum(ai, m_g, target) < target {
                continue;
            }
            self.group_mg.push(m_g);
            self.group_start.push(self.members.len() as u32);
            self.members.push(x);
            if self.fill(ai, m_g, target as u32, b) {
                return true;
            }
            self.members.pop();
            self.group_start.pop();
            self.group_mg.pop();
        }
        self.counts[ai] += 1;
        false
    }

    /// Completes the open group: add parts divisible by `m_g`, nonincreasing,
    /// until the remaining block capacity `target` is exactly consumed.
    fn fill(&mut self, start: usize, m_g: u32, target: u32, b: u32) -> bool {
        if target == 0 {
            return self.next_group(b);
        }
        for i in start..self.values.len() {
            if self.eligible_sum(i, m_g, target as u64) < target as u64 {
                break; // suffix sums only shrink from here
            }
            let v = self.values[i];
            if v > target || self.counts[i] == 0 || v % m_g != 0 {
                continue;
            }
            self.counts[i] -= 1;
            self.members.push(v);
            if self.fill(i, m_g, target - v, b) {
                return true;
            }
            self.members.pop();
            self.counts[i] += 1;
        }
        false
    }

    /// Total mass of still-available parts from `start` on that could join a
    /// group with multiplier `m_g` and value at most `cap`.
    fn eligible_sum(&self, start: usize, m_g: u32, cap: u64) -> u64 {
        let mut s = 0u64;
        for i in start..self.values.len() {
            let v = self.values[i];
            if v as u64 <= cap && v % m_g == 0 {
                s += v as u64 * self.counts[i] as u64;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(parts: &[u32]) -> CycleType {
        CycleType::new(parts.to_vec()).unwrap()
    }

    fn block_sizes(n: u32) -> Vec<u32> {
        (2..=n / 2).filter(|b| n % b == 0).collect()
    }

    #[test]
    fn intransitive_examples() {
        let z = ct(&[235, 17, 3]);
        assert!(in_intransitive(&z, 20));
        assert!(in_intransitive(&z, 3));
        assert!(in_intransitive(&z, 17));
        assert!(!in_intransitive(&z, 5));

        // [x, n-x] belongs to P_y iff y = x
        let t = ct(&[9, 4]);
        for y in 1..6 {
            assert_eq!(in_intransitive(&t, y), y == 4);
        }

        // the n-cycle has no proper nonempty sub-multiset
        let c = ct(&[12]);
        for y in 1..6 {
            assert!(!in_intransitive(&c, y));
        }
    }

    #[test]
    fn intransitive_complement_symmetry() {
        // reachable sums are closed under complement, so x and n-x agree
        for parts in [vec![5u32, 4, 2, 1], vec![6, 6], vec![7, 3, 1, 1]] {
            let t = ct(&parts);
            let n = t.n();
            let full = SumBits::compute(t.parts(), n);
            for x in 1..n {
                assert_eq!(full.get(x), full.get(n - x), "{parts:?} at {x}");
            }
        }
    }

    #[test]
    fn imprimitive_full_cycle_always_member() {
        for n in [6u32, 12, 30] {
            let t = ct(&[n]);
            for b in block_sizes(n) {
                assert!(in_imprimitive(&t, b).unwrap(), "n={n} b={b}");
            }
        }
    }

    #[test]
    fn imprimitive_paper_exclusions() {
        // q = 7, n = 105: Z = [3, q, 14q-3] and X = [10, 4q, 11q-10]
        for parts in [[95u32, 7, 3], [67, 28, 10]] {
            let t = ct(&parts);
            for b in block_sizes(105) {
                assert!(!in_imprimitive(&t, b).unwrap(), "{parts:?} b={b}");
            }
        }
        // q = 7, n = 105: U = [5, q-5, 10q+5, 4q-5]
        let u = ct(&[75, 23, 5, 2]);
        for b in block_sizes(105) {
            assert!(!in_imprimitive(&u, b).unwrap(), "U b={b}");
        }
        // q = 11, n = 165: V = [q-7, q+7, 6q-7, 7q+7]
        let v = ct(&[84, 59, 18, 4]);
        for b in block_sizes(165) {
            assert!(!in_imprimitive(&v, b).unwrap(), "V b={b}");
        }
    }

    #[test]
    fn imprimitive_small_members() {
        assert!(in_imprimitive(&ct(&[2, 2, 2]), 3).unwrap());
        assert!(in_imprimitive(&ct(&[2, 2, 2]), 2).unwrap());
        assert!(in_imprimitive(&ct(&[3, 3]), 2).unwrap());
        assert!(in_imprimitive(&ct(&[2, 10]), 2).unwrap());
        assert!(!in_imprimitive(&ct(&[1, 5]), 2).unwrap());
        assert!(!in_imprimitive(&ct(&[1, 5]), 3).unwrap());
        assert!(in_imprimitive(&ct(&[4, 2]), 3).unwrap());
    }

    #[test]
    fn imprimitive_bad_block_sizes() {
        let t = ct(&[6, 6]);
        assert!(in_imprimitive(&t, 5).is_err()); // 5 does not divide 12
        assert!(in_imprimitive(&t, 1).is_err());
        assert!(in_imprimitive(&t, 12).is_err()); // m would be 1
        assert!(in_imprimitive(&t, 7).is_err());
    }

    #[test]
    fn witness_is_valid_certificate() {
        let t = ct(&[2, 10]);
        let w = imprimitive_witness(&t, 2).unwrap().unwrap();
        assert!(w.verify(&t));
        // two groups: the 10-cycle over five blocks, the 2-cycle inside one
        let mut mgs: Vec<u32> = w.groups.iter().map(|g| g.m_g).collect();
        mgs.sort_unstable();
        assert_eq!(mgs, vec![1, 5]);

        let t = ct(&[12]);
        for b in block_sizes(12) {
            let w = imprimitive_witness(&t, b).unwrap().unwrap();
            assert!(w.verify(&t));
            assert_eq!(w.groups.len(), 1);
            assert_eq!(w.groups[0].m_g, 12 / b);
        }

        assert_eq!(imprimitive_witness(&ct(&[1, 5]), 2).unwrap(), None);
    }

    #[test]
    fn witness_with_repeated_parts_uses_distinct_cycles() {
        let t = ct(&[3, 3, 3, 3]);
        let w = imprimitive_witness(&t, 4).unwrap().unwrap();
        assert!(w.verify(&t));
        let mut all: Vec<usize> = w.groups.iter().flat_map(|g| g.cycles.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3]);
    }

    #[test]
    fn coprime_two_part_fast_path() {
        assert!(two_part_coprime_excluded(&ct(&[1, 11])));
        assert!(two_part_coprime_excluded(&ct(&[5, 7])));
        assert!(!two_part_coprime_excluded(&ct(&[2, 10])));
        assert!(!two_part_coprime_excluded(&ct(&[4, 4, 4])));
        // the fast path agrees with the search
        for x in 1..6u32 {
            let t = ct(&[x, 12 - x]);
            if two_part_coprime_excluded(&t) {
                for b in block_sizes(12) {
                    assert!(!in_imprimitive(&t, b).unwrap(), "[{x},{}] b={b}", 12 - x);
                }
            }
        }
    }

    #[test]
    fn alternating_delegates_to_parity() {
        assert!(!in_alternating(&ct(&[6])));
        assert!(in_alternating(&ct(&[1, 11])));
        assert!(in_alternating(&ct(&[2, 10])));
    }

    // --- cross-check of the general search against the closed-form
    // --- conditions for k <= 4 globally coprime types

    fn types_k2_to_k4(n: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for x1 in 1..n {
            let r1 = n - x1;
            if r1 >= 1 && r1 <= x1 {
                out.push(vec![x1, r1]);
            }
            for x2 in 1..=x1.min(r1) {
                let r2 = r1 - x2;
                if r2 >= 1 && r2 <= x2 {
                    out.push(vec![x1, x2, r2]);
                }
                for x3 in 1..=x2.min(r2) {
                    let r3 = r2 - x3;
                    if r3 >= 1 && r3 <= x3 {
                        out.push(vec![x1, x2, x3, r3]);
                    }
                }
            }
        }
        out
    }

    fn gcd_all(parts: &[u32]) -> u64 {
        parts.iter().fold(0u64, |g, &p| gcd(g, p as u64))
    }

    /// Closed-form membership for k <= 4 with globally coprime parts: the
    /// possible group shapes reduce to one pattern for k = 3 and three for
    /// k = 4.
    fn pattern_member(parts: &[u32], n: u32, b: u32) -> bool {
        let k = parts.len();
        let divides = |d: u32, v: u32| d != 0 && v % d == 0;
        match k {
            2 => false,
            3 => (0..3).any(|s| {
                let xs = parts[s];
                let (a, c) = match s {
                    0 => (parts[1], parts[2]),
                    1 => (parts[0], parts[2]),
                    _ => (parts[0], parts[1]),
                };
                divides(b, xs) && divides((n - xs) / b, gcd(a as u64, c as u64) as u32)
            }),
            4 => {
                // (a) one cycle is a union of blocks, the rest share blocks
                let shape_a = (0..4).any(|s| {
                    let xs = parts[s];
                    let others: Vec<u32> =
                        (0..4).filter(|&i| i != s).map(|i| parts[i]).collect();
                    let g = gcd_all(&others) as u32;
                    divides(b, xs) && divides((n - xs) / b, g)
                });
                // (b) two cycles are unions of blocks
                let shape_b = (0..4).flat_map(|s| (s + 1..4).map(move |t| (s, t))).any(
                    |(s, t)| {
                        let (xs, xt) = (parts[s], parts[t]);
                        let others: Vec<u32> = (0..4)
                            .filter(|&i| i != s && i != t)
                            .map(|i| parts[i])
                            .collect();
                        let g = gcd(others[0] as u64, others[1] as u64) as u32;
                        divides(b, xs) && divides(b, xt) && divides((n - xs - xt) / b, g)
                    },
                );
                // (c) two pairs, each sharing its own block set
                let shape_c = [(0usize, 1usize), (0, 2), (0, 3)].iter().any(|&(s, t)| {
                    let (xs, xt) = (parts[s], parts[t]);
                    let others: Vec<u32> = (0..4)
                        .filter(|&i| i != s && i != t)
                        .map(|i| parts[i])
                        .collect();
                    let pair_sum = xs + xt;
                    if pair_sum % b != 0 {
                        return false;
                    }
                    divides(pair_sum / b, gcd(xs as u64, xt as u64) as u32)
                        && divides(
                            (n - pair_sum) / b,
                            gcd(others[0] as u64, others[1] as u64) as u32,
                        )
                });
                shape_a || shape_b || shape_c
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn search_agrees_with_k4_patterns() {
        for n in [60u32, 105] {
            let bs = block_sizes(n);
            for parts in types_k2_to_k4(n) {
                if gcd_all(&parts) != 1 {
                    continue;
                }
                let t = ct(&parts);
                for &b in &bs {
                    assert_eq!(
                        in_imprimitive(&t, b).unwrap(),
                        pattern_member(&parts, n, b),
                        "n={n} type={parts:?} b={b}"
                    );
                }
            }
        }
    }

    proptest::proptest! {
        // membership is a function of the canonical type (input order is
        // irrelevant), and a witness exists exactly when membership holds
        // and always re-verifies
        #[test]
        fn witness_contract(mut parts in proptest::collection::vec(1u32..12, 1..8), seed in 0usize..64) {
            let t = ct(&parts);
            let k = seed % parts.len();
            parts.rotate_left(k);
            let shuffled = CycleType::new(parts).unwrap();
            let n = t.n();
            for b in block_sizes(n) {
                let member = in_imprimitive(&t, b).unwrap();
                proptest::prop_assert_eq!(member, in_imprimitive(&shuffled, b).unwrap());
                let witness = imprimitive_witness(&t, b).unwrap();
                proptest::prop_assert_eq!(member, witness.is_some());
                if let Some(w) = witness {
                    proptest::prop_assert!(w.verify(&t));
                }
            }
        }
    }
}
