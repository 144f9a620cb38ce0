//! Exact multiplicative arithmetic: factorizations, the quantity g(n), and
//! counts of divisor-pattern sets on `[1, n]` and `[1, n/2)`.
//!
//! For `n = p_1^{a_1} ··· p_r^{a_r}` and disjoint index sets `I`, `J`, the
//! set `P_I^J` consists of the `x` in `[1, n]` divisible by `p_i` for every
//! `i ∈ I` and by no `p_j` with `j ∈ J`. Everything here is closed-form
//! integer arithmetic; no floating point is used anywhere.

use crate::{Error, Result};

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Primality by trial division; enough for desk-scale degrees.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Ordered prime-power decomposition `n = p_1^{a_1} ··· p_r^{a_r}`, `p_1 < ··· < p_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    primes: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The list of `(p_i, a_i)` pairs, strictly increasing in `p_i`.
    pub fn primes(&self) -> &[(u64, u32)] {
        &self.primes
    }

    /// Number of distinct prime divisors, `r`.
    pub fn num_primes(&self) -> usize {
        self.primes.len()
    }

    /// The `i`-th smallest prime divisor, 1-based.
    pub fn prime(&self, i: usize) -> u64 {
        self.primes[i - 1].0
    }

    pub fn is_prime_power(&self) -> bool {
        self.primes.len() == 1
    }

    /// Euler totient of `n`.
    pub fn totient(&self) -> u64 {
        let mut t = self.n;
        for &(p, _) in &self.primes {
            t = t / p * (p - 1);
        }
        t
    }
}

/// Canonical factorization by trial division.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("factorize: n = {n} must be at least 2")));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut a = 0;
            while rest % p == 0 {
                rest /= p;
                a += 1;
            }
            primes.push((p, a));
        }
        p += 1;
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    Ok(Factorization { n, primes })
}

/// Disjoint index sets `I, J ⊆ {1..r}` selecting prime divisors of an `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSpec {
    i_set: Vec<usize>,
    j_set: Vec<usize>,
}

impl IndexSpec {
    /// Validates that the (1-based) indices lie in `1..=r` and are disjoint.
    pub fn new(i_set: &[usize], j_set: &[usize], r: usize) -> Result<Self> {
        let mut i_set = i_set.to_vec();
        let mut j_set = j_set.to_vec();
        i_set.sort_unstable();
        i_set.dedup();
        j_set.sort_unstable();
        j_set.dedup();
        for &k in i_set.iter().chain(&j_set) {
            if k == 0 || k > r {
                return Err(Error::InvalidInput(format!(
                    "index {k} out of range 1..={r}"
                )));
            }
        }
        if i_set.iter().any(|k| j_set.contains(k)) {
            return Err(Error::InvalidInput("I and J must be disjoint".into()));
        }
        Ok(IndexSpec { i_set, j_set })
    }

    pub fn i_indices(&self) -> &[usize] {
        &self.i_set
    }

    pub fn j_indices(&self) -> &[usize] {
        &self.j_set
    }

    fn check(&self, f: &Factorization) {
        let r = f.num_primes();
        let max = self.i_set.iter().chain(&self.j_set).max().copied().unwrap_or(0);
        assert!(max <= r, "index spec built for larger r than {r}");
    }
}

/// g(n) = (n/2)(1 − 1/p_1)(1 − 1/p_2) + 2, defined for r ≥ 2. Always an
/// exact integer: g(n) − 2 counts the x < n/2 divisible by neither p_1 nor p_2.
pub fn g_value(f: &Factorization) -> Result<u64> {
    if f.num_primes() < 2 {
        return Err(Error::Domain(format!(
            "g({}) undefined: n must have at least two distinct prime divisors",
            f.n()
        )));
    }
    let (p1, p2) = (f.prime(1), f.prime(2));
    let num = f.n() * (p1 - 1) * (p2 - 1);
    let den = 2 * p1 * p2;
    debug_assert_eq!(num % den, 0);
    Ok(num / den + 2)
}

/// |P_I^J| = n · p_I · p^J, computed in an order that keeps every
/// intermediate value an integer.
pub fn count_full(f: &Factorization, spec: &IndexSpec) -> u64 {
    spec.check(f);
    let mut v = f.n();
    for &i in spec.i_indices() {
        v /= f.prime(i);
    }
    for &j in spec.j_indices() {
        let p = f.prime(j);
        debug_assert_eq!(v % p, 0);
        v = v / p * (p - 1);
    }
    v
}

/// |P_I^J ∩ [1, n/2)|, by the exact case analysis on the parity of `n` and
/// the exponent of 2: the answer is `count_full/2`, its floor, or one less,
/// depending on whether `n` and `n/2` themselves lie in `P_I^J`.
pub fn count_half_open(f: &Factorization, spec: &IndexSpec) -> u64 {
    spec.check(f);
    assert!(f.n() >= 3, "count_half_open requires n >= 3");
    let full = count_full(f, spec);
    let n = f.n();
    let j_empty = spec.j_indices().is_empty();
    if n % 2 == 1 {
        // n odd: floor(n p_I p^J / 2)
        full / 2
    } else if n % 4 == 2 {
        // a_1 = 1: n/2 is odd
        if j_empty && !spec.i_indices().contains(&1) {
            full / 2 - 1
        } else {
            full / 2
        }
    } else {
        // 4 | n: n/2 has the same prime support as n
        if j_empty {
            full / 2 - 1
        } else {
            debug_assert_eq!(full % 2, 0);
            full / 2
        }
    }
}

/// Whether `n/2` lies in `P_I^J` (defined for even `n`): with `a_1 = 1` this
/// holds iff `1 ∉ I` and `J ⊆ {1}`; with `a_1 ≥ 2` iff `J = ∅`.
pub fn half_in_pattern(f: &Factorization, spec: &IndexSpec) -> bool {
    spec.check(f);
    assert_eq!(f.n() % 2, 0, "half_in_pattern requires even n");
    let a1 = f.primes()[0].1;
    if a1 == 1 {
        !spec.i_indices().contains(&1) && spec.j_indices().iter().all(|&j| j == 1)
    } else {
        spec.j_indices().is_empty()
    }
}

/// The set `{x : 1 ≤ x < n/2, gcd(x, n) = d}` for a divisor `d` of `n`,
/// in increasing order.
pub fn gcd_class_indices(f: &Factorization, d: u64) -> Result<Vec<u64>> {
    let n = f.n();
    if d == 0 || n % d != 0 {
        return Err(Error::InvalidInput(format!("d = {d} does not divide n = {n}")));
    }
    Ok((1..n)
        .take_while(|&x| 2 * x < n)
        .filter(|&x| gcd(x, n) == d)
        .collect())
}
