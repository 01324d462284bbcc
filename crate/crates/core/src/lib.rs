//! Exact combinatorics of non-crossing structures on discs and annuli.
//!
//! The crate has three layers:
//!
//! * permutations, set partitions and annulus shapes ([`perm`], [`setpart`],
//!   [`shape`]) with the length function `|p| = n - #(p)`;
//! * enumeration of non-crossing classes on one, two and three circles
//!   ([`annular`]), partitioned permutations ([`partitioned`]) and quotient
//!   graphs of the annulus graph with their limit classification ([`graphs`]);
//! * an exact moment/cumulant calculus over sparse rational polynomials
//!   ([`poly`], [`moments`]) that computes third-order trace moments of a
//!   complex Wigner matrix by three independent routes.
//!
//! All element naming in text I/O is 1-based; internal indices are 0-based.

pub mod annular;
pub mod graphs;
pub mod moments;
pub mod partitioned;
pub mod perm;
pub mod poly;
pub mod rgs;
pub mod setpart;
pub mod shape;

pub use perm::Permutation;
pub use setpart::SetPartition;
pub use shape::AnnulusShape;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("enumeration bound exceeded: m = {m} > {bound} (raise with --max-m or ANNULAR_MAX_M)")]
    BoundExceeded { m: usize, bound: usize },
    #[error("permutation is not a pairing")]
    NotAPairing,
    #[error("cycles are not contained in the overlay partition")]
    CyclesNotWithinBlocks,
    #[error("invalid shape: parts must be positive")]
    InvalidShape,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid permutation: images must be a bijection of [n]")]
    NotABijection,
    #[error("invalid partition: blocks must be disjoint and cover [n]")]
    NotAPartition,
    #[error("missing moment entry {0}")]
    MissingMoment(String),
    #[error("weight is undefined for a non-limit class")]
    NotLimitWeight,
    #[error("class {0} is not defined for this shape")]
    InvalidClass(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default ceiling on the ground-set size for exhaustive enumeration.
pub const DEFAULT_MAX_M: usize = 14;

/// Hard ceiling for annular permutation enumeration, which filters all of
/// `S_m`. `12! = 479M` candidates is the most a desk run should attempt.
pub const SNC_MAX_M: usize = 12;

/// Resolve the enumeration bound: explicit value, else `ANNULAR_MAX_M`,
/// else [`DEFAULT_MAX_M`].
pub fn enumeration_bound(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var("ANNULAR_MAX_M").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_MAX_M)
}

pub(crate) fn check_bound(m: usize, bound: usize) -> Result<()> {
    if m > bound {
        Err(Error::BoundExceeded { m, bound })
    } else {
        Ok(())
    }
}
