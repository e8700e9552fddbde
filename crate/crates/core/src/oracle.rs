//! Brute-force references. Each works straight from a definition and
//! refuses instances beyond its cap instead of sampling.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::codes::FieldVector;
use crate::poset::{ElementSet, Poset};
use crate::poset_partition::{
    discordancy_of, for_each_maximal_partition, radius_from_discordancy, AlgebraError,
    PartitionOutcome,
};

/// Largest `q^n` the vector-space oracles enumerate.
pub const SPACE_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge { count: u128, cap: u64 },
    ZeroVector,
    LengthMismatch { expected: usize, found: usize },
    TooManyMaximal { count: usize, max: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge { count, cap } => {
                write!(f, "space of {count} vectors exceeds the oracle cap {cap}")
            }
            OracleError::ZeroVector => write!(f, "packing radius undefined for 0"),
            OracleError::LengthMismatch { expected, found } => {
                write!(f, "vector length {found} does not match poset size {expected}")
            }
            OracleError::TooManyMaximal { count, max } => {
                write!(f, "{count} maximal elements exceed the exhaustive limit {max}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

impl From<AlgebraError> for OracleError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::TooManyMaximal { count, max } => OracleError::TooManyMaximal { count, max },
            other => unreachable!("partition enumeration only fails on size: {other}"),
        }
    }
}

/// `P`-weights of every vector of `F_q^n`, indexed by the base-`q` number
/// whose first digit is the first coordinate.
struct Space {
    q: u64,
    n: usize,
    weight: Vec<u32>,
}

impl Space {
    fn new(p: &Poset, q: u32) -> Result<Self, OracleError> {
        let n = p.size();
        let count = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > SPACE_CAP as u128 {
            return Err(OracleError::TooLarge {
                count,
                cap: SPACE_CAP,
            });
        }
        let q = q as u64;
        let weight = (0..count as u64)
            .map(|idx| {
                let mut supp = ElementSet::empty(n);
                let mut rest = idx;
                for i in 0..n {
                    if rest % q != 0 {
                        supp.insert(i);
                    }
                    rest /= q;
                }
                p.weight(&supp) as u32
            })
            .collect();
        Ok(Space { q, n, weight })
    }

    fn index(&self, v: &FieldVector) -> u64 {
        v.coords().iter().rev().fold(0, |acc, &c| acc * self.q + c as u64)
    }

    /// Index of `v − x`.
    fn minus(&self, v: u64, x: u64) -> u64 {
        let (mut v, mut x) = (v, x);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.n {
            let d = (v % self.q + self.q - x % self.q) % self.q;
            out += d * scale;
            scale *= self.q;
            v /= self.q;
            x /= self.q;
        }
        out
    }

    fn vector(&self, idx: u64) -> FieldVector {
        let mut rest = idx;
        let coords = (0..self.n).map(|_| {
            let d = rest % self.q;
            rest /= self.q;
            d
        });
        FieldVector::new(self.q as u32, coords.collect::<Vec<_>>()).expect("prime modulus")
    }
}

fn prepare(p: &Poset, v: &FieldVector) -> Result<(Space, u64), OracleError> {
    if v.len() != p.size() {
        return Err(OracleError::LengthMismatch {
            expected: p.size(),
            found: v.len(),
        });
    }
    if v.is_zero() {
        return Err(OracleError::ZeroVector);
    }
    let space = Space::new(p, v.modulus())?;
    let idx = space.index(v);
    Ok((space, idx))
}

/// The largest `r` with `B(0, r) ∩ B(v, r) = ∅`, found by listing the
/// balls for `r = 0, 1, 2, …`.
pub fn ball_radius_oracle(p: &Poset, v: &FieldVector) -> Result<usize, OracleError> {
    let (space, vi) = prepare(p, v)?;
    let mut r = 0usize;
    loop {
        let next = r as u32 + 1;
        let ball0: Vec<u64> = (0..space.weight.len() as u64)
            .filter(|&x| space.weight[x as usize] <= next)
            .collect();
        let meets = ball0
            .iter()
            .any(|&x| space.weight[space.minus(x, vi) as usize] <= next);
        if meets {
            return Ok(r);
        }
        r += 1;
    }
}

/// `min_x max{ω(x), ω(v − x)} − 1` over all of `F_q^n`, with a minimising
/// `x` (a radius vector of `v`).
pub fn maxweight_oracle(p: &Poset, v: &FieldVector) -> Result<(usize, FieldVector), OracleError> {
    let (space, vi) = prepare(p, v)?;
    let (best, x) = (0..space.weight.len() as u64)
        .map(|x| {
            let w = space.weight[x as usize].max(space.weight[space.minus(vi, x) as usize]);
            (w, x)
        })
        .min()
        .expect("space is nonempty");
    Ok((best as usize - 1, space.vector(x)))
}

/// The same minimum restricted to vectors with `x_i ∈ {0, v_i}`.
pub fn restricted_maxweight_oracle(p: &Poset, v: &FieldVector) -> Result<usize, OracleError> {
    if v.len() != p.size() {
        return Err(OracleError::LengthMismatch {
            expected: p.size(),
            found: v.len(),
        });
    }
    if v.is_zero() {
        return Err(OracleError::ZeroVector);
    }
    let supp = v.support().indices();
    if supp.len() > 24 {
        return Err(OracleError::TooLarge {
            count: 1u128 << supp.len(),
            cap: SPACE_CAP,
        });
    }
    let n = p.size();
    let mut best = usize::MAX;
    for mask in 0u32..1 << supp.len() {
        let a = ElementSet::from_indices(n, supp.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i));
        let b = ElementSet::from_indices(n, supp.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 0).map(|(_, &i)| i));
        best = best.min(p.weight(&a).max(p.weight(&b)));
    }
    Ok(best - 1)
}

/// `R(P)` as the minimum of `max{ω(A), ω(B)} − 1` over all partitions of
/// `M_P`. Asserts `Λ(A, B) ≡ n (mod 2)` on every partition.
pub fn partition_oracle(p: &Poset) -> Result<PartitionOutcome, OracleError> {
    let n = p.size();
    let mut best: Option<(usize, ElementSet, ElementSet)> = None;
    let mut count = 0u64;
    for_each_maximal_partition(p, |a, b| {
        count += 1;
        let l = discordancy_of(p, a, b);
        assert_eq!(l % 2, n % 2, "discordancy parity differs from n");
        let top = p.weight(a).max(p.weight(b));
        debug_assert_eq!(2 * top, n + l);
        if best.as_ref().is_none_or(|(t, _, _)| top < *t) {
            best = Some((top, a.clone(), b.clone()));
        }
    })?;
    let (top, primary, secondary) = best.expect("at least one partition");
    let discordancy = 2 * top - n;
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

/// One engine-versus-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub quantity: String,
    pub instance: String,
    pub oracle: usize,
    pub engine: usize,
    pub agree: bool,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, instance: impl Into<String>, oracle: usize, engine: usize) -> Self {
        OracleReport {
            quantity: quantity.into(),
            instance: instance.into(),
            oracle,
            engine,
            agree: oracle == engine,
        }
    }
}
