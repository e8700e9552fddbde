//! The differencing method for posets.
//!
//! Maximal elements become adjacency-vector columns over `{0, 1, −1, i}`;
//! differencing two columns commits their labels to opposite blocks and
//! associating commits them to the same block. A terminal column `v` with
//! counter `α` has discordancy `α + |Re S(v)| + Im S(v)`, and the packing
//! radius is `n/2 + Λ*/2 − 1`.

mod entry;
mod matrix;
mod pldm;

use alloc::vec::Vec;
use core::fmt;

pub use entry::{EVector, Entry};
pub use matrix::{NumberMatrix, Op};
pub use pldm::{
    discordancy_lower_bound, min_discordancy, packing_radius_matrix, ColumnChooser,
    DiscordancySearch, PldmChooser, SearchOptions, TraceEvent,
};

use crate::poset::{ElementSet, Poset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    LengthMismatch { left: usize, right: usize },
    /// The operands already share a committed label.
    OverlappingCommitments,
    ColumnIndex { j: usize, k: usize, width: usize },
    TooFewColumns,
    EmptyMatrix,
    /// Every row is null, so the packing radius is undefined.
    NullMatrix,
    TooManyMaximal { count: usize, max: usize },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::LengthMismatch { left, right } => {
                write!(f, "vector lengths differ: {left} vs {right}")
            }
            AlgebraError::OverlappingCommitments => {
                write!(f, "operands share a committed label")
            }
            AlgebraError::ColumnIndex { j, k, width } => {
                write!(f, "invalid column pair ({j}, {k}) for width {width}")
            }
            AlgebraError::TooFewColumns => write!(f, "need at least two columns"),
            AlgebraError::EmptyMatrix => write!(f, "matrix has no columns"),
            AlgebraError::NullMatrix => write!(f, "matrix has no non-null rows"),
            AlgebraError::TooManyMaximal { count, max } => {
                write!(f, "{count} maximal elements exceed the exhaustive limit {max}")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// An optimum (or best-found) two-block partition and what it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionOutcome {
    /// Labels committed to the primary block: maximal elements for a
    /// poset, column indices for a bare matrix.
    pub primary: ElementSet,
    pub secondary: ElementSet,
    pub discordancy: usize,
    pub radius: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub pruned: u64,
}

/// `R = n/2 + Λ/2 − 1` for `n` non-null rows.
pub fn radius_from_discordancy(n: usize, discordancy: usize) -> usize {
    debug_assert_eq!((n + discordancy) % 2, 0, "Λ has the parity of n");
    ((n + discordancy) / 2).saturating_sub(1)
}

/// `Λ(A, B) = |ω(A) − ω(B)| + |⟨A⟩ ∩ ⟨B⟩|`.
pub fn discordancy_of(p: &Poset, a: &ElementSet, b: &ElementSet) -> usize {
    let ia = p.ideal(a);
    let ib = p.ideal(b);
    ia.count().abs_diff(ib.count()) + ia.intersection_count(&ib)
}

pub const BRUTE_MAX_MAXIMAL: usize = 24;

/// Calls `f` once for every two-block partition of the maximal elements,
/// the lowest maximal element pinned to the first block.
pub fn for_each_maximal_partition<F>(p: &Poset, mut f: F) -> Result<(), AlgebraError>
where
    F: FnMut(&ElementSet, &ElementSet),
{
    let max: Vec<usize> = p.maximal().indices();
    let m = max.len();
    if m > BRUTE_MAX_MAXIMAL {
        return Err(AlgebraError::TooManyMaximal {
            count: m,
            max: BRUTE_MAX_MAXIMAL,
        });
    }
    let n = p.size();
    for mask in 0u64..1 << (m - 1) {
        let mut a = ElementSet::from_indices(n, [max[0]]);
        let mut b = ElementSet::empty(n);
        for (bit, &x) in max[1..].iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a.insert(x);
            } else {
                b.insert(x);
            }
        }
        f(&a, &b);
    }
    Ok(())
}

/// `Λ*(P)` by direct enumeration of all partitions of `M_P`.
pub fn brute_min_discordancy(p: &Poset) -> Result<PartitionOutcome, AlgebraError> {
    let n = p.size();
    let mut best: Option<(usize, ElementSet, ElementSet)> = None;
    let mut count = 0u64;
    for_each_maximal_partition(p, |a, b| {
        count += 1;
        let l = discordancy_of(p, a, b);
        if best.as_ref().is_none_or(|(bl, _, _)| l < *bl) {
            best = Some((l, a.clone(), b.clone()));
        }
    })?;
    let (discordancy, primary, secondary) = best.expect("at least one partition");
    Ok(PartitionOutcome {
        primary,
        secondary,
        discordancy,
        radius: radius_from_discordancy(n, discordancy),
        optimal: true,
        nodes: count,
        pruned: 0,
    })
}
