//! The catalog of candidate basic components for `(n, G)` and the
//! type-vs-class membership matrix.
//!
//! Intransitive, imprimitive and alternating classes are generated from
//! `n`; primitive classes arrive as data files listing the cycle types
//! their conjugate union covers, because primitivity facts come from the
//! classification literature rather than from anything recomputable here.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd};
use crate::membership::{ImprimScratch, SumBits};
use crate::typesys::{enumerate_types_filtered, parts_even, CycleType, TypeFilter, TypeIndex};
use crate::{par, Error, Result};

/// Which ambient group the cover lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupFlavor {
    S,
    A,
}

impl GroupFlavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(GroupFlavor::S),
            "A" | "a" => Ok(GroupFlavor::A),
            _ => Err(Error::InvalidInput(format!("unknown group flavor {s:?}, expected S or A"))),
        }
    }
}

impl fmt::Display for GroupFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFlavor::S => write!(f, "S"),
            GroupFlavor::A => write!(f, "A"),
        }
    }
}

/// One conjugacy class of candidate basic components. For flavor `A` the
/// intransitive/imprimitive/alternating variants denote the intersections
/// with `A_n`; type-level membership is unchanged because those subgroups
/// contain odd permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupClass {
    /// `S_x × S_{n−x}` with `1 ≤ x < n/2`.
    Intransitive { x: u32 },
    /// `S_b ≀ S_m` with `b·m = n`, `2 ≤ b ≤ n/2`.
    Imprimitive { b: u32, m: u32 },
    Alternating,
    /// A primitive class supplied as data: the set of cycle types realized
    /// by the union of its conjugates.
    PrimitiveExternal { name: String, types: Vec<CycleType> },
}

impl fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupClass::Intransitive { x } => write!(f, "P:{x}"),
            SubgroupClass::Imprimitive { b, m } => write!(f, "W:{b}x{m}"),
            SubgroupClass::Alternating => write!(f, "A"),
            SubgroupClass::PrimitiveExternal { name, .. } => write!(f, "{name}"),
        }
    }
}

/// Primitive-class data file: the types covered by each named class of one
/// `(n, group)` pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimitiveData {
    pub n: u32,
    pub group: GroupFlavor,
    pub classes: Vec<PrimitiveClass>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrimitiveClass {
    pub name: String,
    pub types: Vec<CycleType>,
}

/// Loads and validates one primitive data file.
pub fn load_primitive_file(path: &Path) -> Result<PrimitiveData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::PrimitiveData(format!("{}: {e}", path.display())))?;
    let data: PrimitiveData = serde_json::from_str(&text)
        .map_err(|e| Error::PrimitiveData(format!("{}: {e}", path.display())))?;
    validate_primitive(&data).map_err(|e| match e {
        Error::PrimitiveData(msg) => Error::PrimitiveData(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    Ok(data)
}

fn validate_primitive(data: &PrimitiveData) -> Result<()> {
    for class in &data.classes {
        for t in &class.types {
            if t.n() != data.n {
                return Err(Error::PrimitiveData(format!(
                    "class {}: type [{t}] sums to {} but n = {}",
                    class.name,
                    t.n(),
                    data.n
                )));
            }
            if data.group == GroupFlavor::A && !crate::typesys::is_even(t) {
                return Err(Error::PrimitiveData(format!(
                    "class {}: type [{t}] is odd but group is A",
                    class.name
                )));
            }
        }
    }
    Ok(())
}

/// Loads every `.json` file in a directory; the caller filters by `(n, group)`.
pub fn load_primitive_dir(dir: &Path) -> Result<Vec<PrimitiveData>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_primitive_file(p)).collect()
}

/// Assembles the class catalog for `(n, flavor)` in deterministic order:
/// intransitive by `x`, then imprimitive by `b`, then (for `S_n`) the
/// alternating group, then primitive classes by name.
///
/// Every supplied primitive data set must match `(n, flavor)` exactly.
pub fn build_universe(
    n: u32,
    flavor: GroupFlavor,
    primitive: &[PrimitiveData],
) -> Result<Vec<SubgroupClass>> {
    let min_n = match flavor {
        GroupFlavor::S => 3,
        GroupFlavor::A => 4,
    };
    if n < min_n {
        return Err(Error::InvalidInput(format!(
            "universe for {flavor}_{n}: need n >= {min_n}"
        )));
    }
    let mut classes: Vec<SubgroupClass> = (1..n)
        .take_while(|&x| 2 * x < n)
        .map(|x| SubgroupClass::Intransitive { x })
        .collect();
    for b in 2..=n / 2 {
        if n % b == 0 {
            classes.push(SubgroupClass::Imprimitive { b, m: n / b });
        }
    }
    if flavor == GroupFlavor::S {
        classes.push(SubgroupClass::Alternating);
    }
    let mut prims = Vec::new();
    for data in primitive {
        if data.n != n || data.group != flavor {
            return Err(Error::PrimitiveData(format!(
                "data for {}_{} does not match requested {flavor}_{n}",
                data.group, data.n
            )));
        }
        validate_primitive(data)?;
        for class in &data.classes {
            prims.push((class.name.clone(), class.types.clone()));
        }
    }
    prims.sort_by(|a, b| a.0.cmp(&b.0));
    classes.extend(
        prims
            .into_iter()
            .map(|(name, types)| SubgroupClass::PrimitiveExternal { name, types }),
    );
    Ok(classes)
}

/// The predicate behind the conjectured intransitive part of a minimal
/// basic set: `x` coprime to `p_1 p_2`. Defined only for `r ≥ 2`.
pub fn p_min_predicate(n: u32) -> Result<impl Fn(u32) -> bool> {
    let f = factorize(n as u64)?;
    if f.num_primes() < 2 {
        return Err(Error::Domain(format!(
            "p_min undefined for n = {n}: fewer than two prime divisors"
        )));
    }
    let p1p2 = f.prime(1) * f.prime(2);
    Ok(move |x: u32| gcd(x as u64, p1p2) == 1)
}

/// The set `{x : 1 ≤ x < n/2, gcd(x, p_1 p_2) = 1}` in increasing order.
pub fn p_min_set(n: u32) -> Result<Vec<u32>> {
    let pred = p_min_predicate(n)?;
    Ok((1..n).take_while(|&x| 2 * x < n).filter(|&x| pred(x)).collect())
}

/// A bit-packed row over the type index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn or_into(&self, acc: &mut [u64]) {
        for (a, w) in acc.iter_mut().zip(&self.words) {
            *a |= w;
        }
    }
}

/// The type-vs-class coverage matrix for one `(n, flavor)` universe. For
/// flavor `A` the type index holds only even types and a class covers a
/// type iff the `S_n`-level membership holds (the type being even already).
#[derive(Debug, Clone)]
pub struct MembershipMatrix {
    n: u32,
    flavor: GroupFlavor,
    types: TypeIndex,
    classes: Vec<SubgroupClass>,
    rows: Vec<BitRow>,
}

/// Most classes a matrix can hold; per-type coverage is carried in a
/// 128-bit mask during construction.
pub const MAX_CLASSES: usize = 128;

impl MembershipMatrix {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn flavor(&self) -> GroupFlavor {
        self.flavor
    }

    pub fn types(&self) -> &TypeIndex {
        &self.types
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn num_types(&self) -> usize {
        self.types.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn row(&self, class: usize) -> &BitRow {
        &self.rows[class]
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    /// Index of a class in the universe ordering.
    pub fn class_index(&self, class: &SubgroupClass) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    /// True if the universe carries at least one primitive class.
    pub fn has_primitive_data(&self) -> bool {
        self.classes
            .iter()
            .any(|c| matches!(c, SubgroupClass::PrimitiveExternal { .. }))
    }
}

/// Enumerates the type index appropriate for a flavor.
pub fn type_index_for(n: u32, flavor: GroupFlavor, cap: Option<u32>) -> Result<TypeIndex> {
    let filter = match flavor {
        GroupFlavor::S => TypeFilter::All,
        GroupFlavor::A => TypeFilter::EvenOnly,
    };
    enumerate_types_filtered(n, filter, cap)
}

/// Materializes the coverage matrix. Parallelizes over type indices; the
/// result is bit-for-bit identical for any thread count.
pub fn build_matrix(
    flavor: GroupFlavor,
    classes: Vec<SubgroupClass>,
    types: TypeIndex,
) -> Result<MembershipMatrix> {
    let n = types.n();
    if classes.len() > MAX_CLASSES {
        return Err(Error::InvalidInput(format!(
            "universe has {} classes; the matrix supports at most {MAX_CLASSES}",
            classes.len()
        )));
    }
    if flavor == GroupFlavor::A && types.filter() != TypeFilter::EvenOnly {
        return Err(Error::InvalidInput(
            "flavor A requires an even-only type index".into(),
        ));
    }

    // split the catalog by kind once; primitive rows are filled from data
    let mut intransitive: Vec<(usize, u32)> = Vec::new();
    let mut imprimitive: Vec<(usize, u32)> = Vec::new();
    let mut alternating: Option<usize> = None;
    let mut primitive: Vec<(usize, &[CycleType])> = Vec::new();
    for (ci, class) in classes.iter().enumerate() {
        match class {
            SubgroupClass::Intransitive { x } => {
                if *x < 1 || 2 * x >= n {
                    return Err(Error::InvalidInput(format!("bad intransitive class P:{x} for n = {n}")));
                }
                intransitive.push((ci, *x));
            }
            SubgroupClass::Imprimitive { b, m } => {
                if b * m != n || *b < 2 || *m < 2 {
                    return Err(Error::InvalidInput(format!(
                        "bad imprimitive class W:{b}x{m} for n = {n}"
                    )));
                }
                imprimitive.push((ci, *b));
            }
            SubgroupClass::Alternating => alternating = Some(ci),
            SubgroupClass::PrimitiveExternal { types: ts, .. } => primitive.push((ci, ts)),
        }
    }

    let half = (n - 1) / 2; // largest x of an intransitive class
    let columns: Vec<u128> = par::map_indexed(types.len(), |i| {
        let parts = types.get(i);
        let mut mask = 0u128;
        let reach = SumBits::compute(parts, half);
        for &(ci, x) in &intransitive {
            if reach.get(x) {
                mask |= 1 << ci;
            }
        }
        if !imprimitive.is_empty() {
            // 2-part types with the smaller part coprime to n lie in no
            // imprimitive class at all; skip the search outright
            let coprime_two_part = parts.len() == 2 && gcd(parts[1] as u64, n as u64) == 1;
            if !coprime_two_part {
                let mut scratch = ImprimScratch::default();
                scratch.load(parts);
                for &(ci, b) in &imprimitive {
                    if scratch.search(b) {
                        mask |= 1 << ci;
                    }
                }
            }
        }
        if let Some(ci) = alternating {
            if parts_even(n, parts.len()) {
                mask |= 1 << ci;
            }
        }
        mask
    });

    let mut rows = vec![BitRow::new(types.len()); classes.len()];
    for (i, &mask) in columns.iter().enumerate() {
        let mut m = mask;
        while m != 0 {
            let ci = m.trailing_zeros() as usize;
            rows[ci].set(i);
            m &= m - 1;
        }
    }
    for (ci, covered) in primitive {
        for t in covered {
            match types.find(t.parts()) {
                Some(i) => rows[ci].set(i),
                None => {
                    return Err(Error::PrimitiveData(format!(
                        "primitive class covers type [{t}] absent from the {flavor}_{n} type index"
                    )))
                }
            }
        }
    }

    Ok(MembershipMatrix { n, flavor, types, classes, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(n: u32, flavor: GroupFlavor) -> MembershipMatrix {
        let classes = build_universe(n, flavor, &[]).unwrap();
        let types = type_index_for(n, flavor, None).unwrap();
        build_matrix(flavor, classes, types).unwrap()
    }

    #[test]
    fn universe_shapes() {
        let u = build_universe(12, GroupFlavor::S, &[]).unwrap();
        assert_eq!(u.len(), 10); // P1..P5, W 2/3/4/6, A
        assert_eq!(
            u.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["P:1", "P:2", "P:3", "P:4", "P:5", "W:2x6", "W:3x4", "W:4x3", "W:6x2", "A"]
        );
        let u = build_universe(6, GroupFlavor::A, &[]).unwrap();
        assert_eq!(
            u.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["P:1", "P:2", "W:2x3", "W:3x2"]
        );
        assert!(build_universe(3, GroupFlavor::A, &[]).is_err());
    }

    #[test]
    fn universe_with_primitive_class() {
        let data = PrimitiveData {
            n: 12,
            group: GroupFlavor::A,
            classes: vec![PrimitiveClass {
                name: "M12".into(),
                types: vec![CycleType::parse("8,2,1,1").unwrap()],
            }],
        };
        let u = build_universe(12, GroupFlavor::A, std::slice::from_ref(&data)).unwrap();
        assert_eq!(u.len(), 10); // 5 + 4 + 1, no alternating for flavor A
        assert_eq!(u.last().unwrap().to_string(), "M12");
        // mismatched degree or flavor is a load error
        assert!(build_universe(10, GroupFlavor::A, std::slice::from_ref(&data)).is_err());
        assert!(build_universe(12, GroupFlavor::S, &[data]).is_err());
    }

    #[test]
    fn primitive_validation_rejects_bad_types() {
        let bad_sum = PrimitiveData {
            n: 12,
            group: GroupFlavor::A,
            classes: vec![PrimitiveClass {
                name: "X".into(),
                types: vec![CycleType::parse("8,2,1").unwrap()],
            }],
        };
        assert!(matches!(
            build_universe(12, GroupFlavor::A, &[bad_sum]),
            Err(Error::PrimitiveData(_))
        ));
        let odd_type = PrimitiveData {
            n: 12,
            group: GroupFlavor::A,
            classes: vec![PrimitiveClass {
                name: "X".into(),
                types: vec![CycleType::parse("12").unwrap()],
            }],
        };
        assert!(matches!(
            build_universe(12, GroupFlavor::A, &[odd_type]),
            Err(Error::PrimitiveData(_))
        ));
    }

    #[test]
    fn p_min_examples() {
        assert_eq!(p_min_set(30).unwrap(), vec![1, 5, 7, 11, 13]);
        assert_eq!(p_min_set(12).unwrap(), vec![1, 5]);
        let s66 = p_min_set(66).unwrap();
        assert_eq!(s66.len(), 11); // g(66) - 2
        assert!(s66.contains(&11)); // 11 is coprime to p1 p2 = 6
        assert!(p_min_set(8).is_err());
    }

    #[test]
    fn alternating_row_is_exactly_even_types() {
        let m = matrix(12, GroupFlavor::S);
        let a = m.class_index(&SubgroupClass::Alternating).unwrap();
        // 40 of the 77 partitions of 12 have an even number of parts;
        // cross-check: even minus odd equals the number of partitions into
        // distinct odd parts ({11,1},{9,3},{7,5}), and 40 - 37 = 3
        assert_eq!(m.row(a).count_ones(), 40);
        for i in 0..m.num_types() {
            let k = m.types().get(i).len();
            assert_eq!(m.row(a).get(i), parts_even(12, k));
        }
    }

    #[test]
    fn intransitive_row_p1_is_types_containing_a_fixed_point() {
        let m = matrix(12, GroupFlavor::S);
        let p1 = m.class_index(&SubgroupClass::Intransitive { x: 1 }).unwrap();
        // a sub-multiset sums to 1 iff some part equals 1; removing it is a
        // bijection with partitions of 11, so the row has p(11) = 56 bits
        assert_eq!(m.row(p1).count_ones(), 56);
        for i in 0..m.num_types() {
            assert_eq!(m.row(p1).get(i), m.types().get(i).contains(&1));
        }
    }

    #[test]
    fn imprimitive_rows_contain_the_n_cycle() {
        let m = matrix(12, GroupFlavor::S);
        let full = m.types().find(&[12]).unwrap();
        for (ci, class) in m.classes().iter().enumerate() {
            match class {
                SubgroupClass::Imprimitive { .. } => assert!(m.row(ci).get(full)),
                SubgroupClass::Intransitive { .. } => assert!(!m.row(ci).get(full)),
                _ => {}
            }
        }
        let m6 = matrix(6, GroupFlavor::S);
        let w3 = m6.class_index(&SubgroupClass::Imprimitive { b: 3, m: 2 }).unwrap();
        assert!(m6.row(w3).get(m6.types().find(&[3, 2, 1]).unwrap()));
    }

    #[test]
    fn coprime_two_part_types_have_unique_cover_for_odd_n() {
        for n in [15u32, 21, 25] {
            let m = matrix(n, GroupFlavor::S);
            for x in 1.. {
                if 2 * x >= n {
                    break;
                }
                if gcd(x as u64, n as u64) != 1 {
                    continue;
                }
                let ti = m.types().find(&[n - x, x]).unwrap();
                let covering: Vec<usize> =
                    (0..m.num_classes()).filter(|&c| m.row(c).get(ti)).collect();
                assert_eq!(covering.len(), 1, "n={n} x={x}");
                assert_eq!(m.classes()[covering[0]], SubgroupClass::Intransitive { x });
            }
        }
    }

    #[test]
    fn flavor_a_index_is_even_and_rows_match_s_membership() {
        let ma = matrix(12, GroupFlavor::A);
        for i in 0..ma.num_types() {
            assert!(parts_even(12, ma.types().get(i).len()));
        }
        let ms = matrix(12, GroupFlavor::S);
        for (ci, class) in ma.classes().iter().enumerate() {
            let cs = ms.class_index(class).unwrap();
            for i in 0..ma.num_types() {
                let si = ms.types().find(ma.types().get(i)).unwrap();
                assert_eq!(ma.row(ci).get(i), ms.row(cs).get(si));
            }
        }
    }

    #[test]
    fn matrix_is_identical_across_thread_counts() {
        let make = || matrix(20, GroupFlavor::S);
        let base = make();
        for threads in [1usize, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let m = pool.install(make);
            assert_eq!(m.rows, base.rows, "threads={threads}");
        }
    }
}
