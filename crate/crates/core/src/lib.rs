//! Normal covering numbers of finite symmetric and alternating groups.
//!
//! A *normal covering* of a group `G` is a family of conjugates of proper
//! subgroups whose union is all of `G`; the normal covering number γ(G) is
//! the least number of subgroup conjugacy classes needed. For `G = S_n` or
//! `A_n` the element classes are cycle types (partitions of `n`), so the
//! covering question becomes exact combinatorics: which cycle types belong
//! to which maximal subgroup classes, and what is the minimum set cover.
//!
//! The crate models the intransitive, imprimitive and alternating maximal
//! classes directly, accepts primitive classes as external data files, and
//! solves the resulting exact set-cover problem. The optimum over that
//! universe is an upper bound for γ(G) by construction and equals γ(G)
//! whenever no omitted primitive class participates in a smaller cover;
//! results are flagged `conditional` when primitive data is absent.
//!
//! * [`arith`] — factorizations and exact interval/divisor-pattern counts.
//! * [`typesys`] — cycle-type (partition) enumeration and parity.
//! * [`membership`] — does a cycle type belong to a given subgroup class?
//! * [`universe`] — the class catalog and the type-vs-class bit matrix.
//! * [`solver`] — explicit g(n)-sized covers, cover verification, exact
//!   minimum covers with certificate enumeration.
//! * [`harness`] — known-value table, batch conjecture checks, and the
//!   machine-checkable fixture suites for the two theorem families.

pub mod arith;
pub mod harness;
pub mod membership;
mod par;
pub mod solver;
pub mod typesys;
pub mod universe;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed caller input (bad `n`, non-divisor `d`, invalid index sets, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Operation undefined on this domain (e.g. g(n) for prime powers).
    #[error("domain error: {0}")]
    Domain(String),
    /// Full type enumeration refused because p(n) would be too large.
    #[error("partition cap exceeded: n = {n} is above the enumeration cap {cap}; pass an explicit cap override to proceed")]
    CapExceeded { n: u32, cap: u32 },
    /// A primitive-class data file failed validation.
    #[error("primitive data: {0}")]
    PrimitiveData(String),
    /// The cover instance has a type no class covers.
    #[error("infeasible: type [{witness}] is covered by no class in the universe")]
    Infeasible { witness: typesys::CycleType },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
