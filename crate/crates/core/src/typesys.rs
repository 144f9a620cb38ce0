//! Cycle types: partitions of `n` in canonical (nonincreasing) form,
//! identified with the conjugacy classes of `S_n`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Full enumeration is refused above this degree unless the caller
/// overrides the cap: p(70) is already around 4·10^6 partitions and the
/// membership matrices grow proportionally.
pub const DEFAULT_ENUM_CAP: u32 = 70;

/// A cycle type: the partition of `n` recording the orbit lengths of a
/// permutation. Parts are kept sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    n: u32,
    parts: Vec<u32>,
}

impl CycleType {
    /// Builds a type from arbitrary positive parts; sorts them into
    /// canonical order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("cycle type must have at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput("cycle type parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Ok(CycleType { n, parts })
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let n = parts.iter().sum();
        CycleType { n, parts }
    }

    /// Parses `"a,b,c"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad cycle type part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CycleType::new(parts)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Parts, nonincreasing.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts, `k`.
    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycleType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        CycleType::new(parts).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Whether a permutation of this type is even: the sum of `x_i − 1` over
/// the parts, i.e. `n − k`, must be even.
pub fn is_even(t: &CycleType) -> bool {
    parts_even(t.n(), t.num_parts())
}

#[inline]
pub(crate) fn parts_even(n: u32, k: usize) -> bool {
    (n as usize - k) % 2 == 0
}

/// The 2-part types `[x, n−x]` for `1 ≤ x < n/2`; for even `n` the split
/// `[n/2, n/2]` is excluded. Exactly `⌊(n−1)/2⌋` types.
pub fn two_part_types(n: u32) -> Vec<CycleType> {
    assert!(n >= 3, "two_part_types requires n >= 3");
    (1..n)
        .take_while(|&x| 2 * x < n)
        .map(|x| CycleType::from_sorted(vec![n - x, x]))
        .collect()
}

/// Restriction applied while enumerating the type index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeFilter {
    All,
    /// Only types of even permutations (the classes meeting `A_n`).
    EvenOnly,
}

/// An immutable indexed list of all cycle types of degree `n`, stored in
/// one flat arena. Order is lexicographic (ascending) on the canonical
/// nonincreasing part vectors, so indices are stable across runs.
#[derive(Debug, Clone)]
pub struct TypeIndex {
    n: u32,
    filter: TypeFilter,
    offsets: Vec<u32>,
    parts: Vec<u32>,
}

impl TypeIndex {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn filter(&self) -> TypeFilter {
        self.filter
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.parts[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn to_cycle_type(&self, i: usize) -> CycleType {
        CycleType::from_sorted(self.get(i).to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// Index of a canonical part list, by binary search on the enumeration
    /// order.
    pub fn find(&self, parts: &[u32]) -> Option<usize> {
        let mut lo = 0;
        let mut hi = self.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(parts) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Enumerates all cycle types of degree `n` under the default cap.
pub fn enumerate_types(n: u32) -> Result<TypeIndex> {
    enumerate_types_filtered(n, TypeFilter::All, None)
}

/// Enumerates with a parity filter and an optional cap override
/// (`None` keeps [`DEFAULT_ENUM_CAP`]).
pub fn enumerate_types_filtered(n: u32, filter: TypeFilter, cap: Option<u32>) -> Result<TypeIndex> {
    if n == 0 {
        return Err(Error::InvalidInput("enumerate_types: n must be positive".into()));
    }
    let cap = cap.unwrap_or(DEFAULT_ENUM_CAP);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut offsets = vec![0u32];
    let mut parts: Vec<u32> = Vec::new();
    let mut buf: Vec<u32> = Vec::with_capacity(n as usize);
    gen_rec(n, n, filter, &mut buf, &mut offsets, &mut parts);
    Ok(TypeIndex { n, filter, offsets, parts })
}

fn gen_rec(
    remaining: u32,
    max_part: u32,
    filter: TypeFilter,
    buf: &mut Vec<u32>,
    offsets: &mut Vec<u32>,
    parts: &mut Vec<u32>,
) {
    if remaining == 0 {
        let keep = match filter {
            TypeFilter::All => true,
            TypeFilter::EvenOnly => {
                let total: u32 = buf.iter().sum();
                parts_even(total, buf.len())
            }
        };
        if keep {
            parts.extend_from_slice(buf);
            offsets.push(parts.len() as u32);
        }
        return;
    }
    // each part is capped by its predecessor, so the buffer is nonincreasing;
    // choosing the next part in increasing order makes the emission order
    // lexicographic ascending on the canonical vectors
    for next in 1..=remaining.min(max_part) {
        buf.push(next);
        gen_rec(remaining - next, next, filter, buf, offsets, parts);
        buf.pop();
    }
}
