//! Prime-field vectors and linear codes, with P-weights and P-distances.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poset::{ElementSet, Poset};

/// Default bound on `q^k` for codeword enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    NotPrime(u32),
    LengthMismatch { expected: usize, found: usize },
    ModulusMismatch { left: u32, right: u32 },
    RaggedGenerator { row: usize, len: usize, expected: usize },
    RankDeficient { rank: usize, rows: usize },
    ZeroDimensional,
    /// `q^k` codewords exceed the enumeration cap.
    CapExceeded { count: u128, cap: u64 },
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::NotPrime(q) => write!(f, "modulus {q} is not prime"),
            CodeError::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            CodeError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            CodeError::RaggedGenerator { row, len, expected } => write!(
                f,
                "generator row {row} has {len} entries, expected {expected}"
            ),
            CodeError::RankDeficient { rank, rows } => write!(
                f,
                "generator rows are linearly dependent (rank {rank} < {rows})"
            ),
            CodeError::ZeroDimensional => write!(f, "code has dimension 0"),
            CodeError::CapExceeded { count, cap } => {
                write!(f, "{count} codewords exceed the enumeration cap {cap}")
            }
        }
    }
}

impl core::error::Error for CodeError {}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u32, q: u32) -> u32 {
    pow_mod(a as u64, q as u64 - 2, q as u64) as u32
}

/// A vector of `F_q^n` for prime `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldVector {
    q: u32,
    coords: Vec<u32>,
}

impl FieldVector {
    /// Reduces every coordinate mod `q`.
    pub fn new(q: u32, coords: impl IntoIterator<Item = u64>) -> Result<Self, CodeError> {
        if !is_prime(q) {
            return Err(CodeError::NotPrime(q));
        }
        Ok(FieldVector {
            q,
            coords: coords.into_iter().map(|c| (c % q as u64) as u32).collect(),
        })
    }

    pub fn zero(q: u32, n: usize) -> Self {
        FieldVector { q, coords: vec![0; n] }
    }

    /// Parses a digit string such as `"001"`.
    pub fn from_digits(q: u32, digits: &str) -> Result<Self, CodeError> {
        Self::new(q, digits.chars().filter_map(|c| c.to_digit(10)).map(u64::from))
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// `supp(x) = { i : x_i ≠ 0 }`.
    pub fn support(&self) -> ElementSet {
        ElementSet::from_indices(
            self.len(),
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| i),
        )
    }

    fn check(&self, other: &FieldVector) -> Result<(), CodeError> {
        if self.q != other.q {
            return Err(CodeError::ModulusMismatch {
                left: self.q,
                right: other.q,
            });
        }
        if self.len() != other.len() {
            return Err(CodeError::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldVector) -> Result<FieldVector, CodeError> {
        self.check(other)?;
        let q = self.q;
        Ok(FieldVector {
            q,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| (a + b) % q)
                .collect(),
        })
    }

    pub fn sub(&self, other: &FieldVector) -> Result<FieldVector, CodeError> {
        self.check(other)?;
        let q = self.q;
        Ok(FieldVector {
            q,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| (a + q - b) % q)
                .collect(),
        })
    }

    pub fn scale(&self, c: u32) -> FieldVector {
        let q = self.q as u64;
        FieldVector {
            q: self.q,
            coords: self
                .coords
                .iter()
                .map(|&a| (a as u64 * (c as u64 % q) % q) as u32)
                .collect(),
        }
    }

    /// The complement of `self` with respect to `v`: `v − self`.
    pub fn complement(&self, v: &FieldVector) -> Result<FieldVector, CodeError> {
        v.sub(self)
    }
}

impl fmt::Display for FieldVector {
    /// Digit string for `q ≤ 10`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for c in &self.coords {
                write!(f, "{c}")?;
            }
        } else {
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/F{}", self.q)
    }
}

fn check_len(p: &Poset, v: &FieldVector) -> Result<(), CodeError> {
    if p.size() != v.len() {
        return Err(CodeError::LengthMismatch {
            expected: p.size(),
            found: v.len(),
        });
    }
    Ok(())
}

/// `ω_P(v) = |⟨supp(v)⟩|`.
pub fn p_weight(p: &Poset, v: &FieldVector) -> Result<usize, CodeError> {
    check_len(p, v)?;
    Ok(p.weight(&v.support()))
}

/// `d_P(v, w) = ω_P(v − w)`.
pub fn p_distance(p: &Poset, v: &FieldVector, w: &FieldVector) -> Result<usize, CodeError> {
    let diff = v.sub(w)?;
    p_weight(p, &diff)
}

/// A linear code over a prime field given by a full-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    q: u32,
    n: usize,
    generator: Vec<Vec<u32>>,
}

impl LinearCode {
    pub fn new(q: u32, n: usize, rows: Vec<Vec<u64>>) -> Result<Self, CodeError> {
        if !is_prime(q) {
            return Err(CodeError::NotPrime(q));
        }
        let mut generator = Vec::with_capacity(rows.len());
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(CodeError::RaggedGenerator {
                    row: r + 1,
                    len: row.len(),
                    expected: n,
                });
            }
            generator.push(row.into_iter().map(|c| (c % q as u64) as u32).collect());
        }
        let code = LinearCode { q, n, generator };
        let rank = code.rank();
        if rank < code.dimension() {
            return Err(CodeError::RankDeficient {
                rank,
                rows: code.dimension(),
            });
        }
        Ok(code)
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    fn rank(&self) -> usize {
        let q = self.q;
        let mut m = self.generator.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = inv_mod(m[rank][col], q);
            for c in 0..self.n {
                m[rank][c] = (m[rank][c] as u64 * inv as u64 % q as u64) as u32;
            }
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col] as u64;
                    for c in 0..self.n {
                        let sub = factor * m[rank][c] as u64 % q as u64;
                        m[r][c] = ((m[r][c] as u64 + q as u64 - sub) % q as u64) as u32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// `q^k`, saturating.
    pub fn size(&self) -> u128 {
        let mut s: u128 = 1;
        for _ in 0..self.dimension() {
            s = s.saturating_mul(self.q as u128);
        }
        s
    }

    /// The codeword for message `m` (length `k`).
    pub fn encode(&self, m: &[u32]) -> FieldVector {
        let q = self.q as u64;
        let mut coords = vec![0u64; self.n];
        for (coef, row) in m.iter().zip(&self.generator) {
            for (acc, &g) in coords.iter_mut().zip(row) {
                *acc = (*acc + *coef as u64 * g as u64) % q;
            }
        }
        FieldVector {
            q: self.q,
            coords: coords.into_iter().map(|c| c as u32).collect(),
        }
    }

    /// All `q^k` codewords, the zero vector first, in mixed-radix message
    /// order with the first message coordinate varying fastest.
    pub fn codewords(&self, cap: u64) -> Result<Codewords<'_>, CodeError> {
        let count = self.size();
        if count > cap as u128 {
            return Err(CodeError::CapExceeded { count, cap });
        }
        Ok(Codewords {
            code: self,
            message: vec![0; self.dimension()],
            done: false,
        })
    }
}

/// Iterator returned by [`LinearCode::codewords`].
pub struct Codewords<'a> {
    code: &'a LinearCode,
    message: Vec<u32>,
    done: bool,
}

impl Iterator for Codewords<'_> {
    type Item = FieldVector;

    fn next(&mut self) -> Option<FieldVector> {
        if self.done {
            return None;
        }
        let word = self.code.encode(&self.message);
        self.done = true;
        for digit in self.message.iter_mut() {
            *digit += 1;
            if *digit < self.code.q {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(word)
    }
}

/// `d_P(C) = min { ω_P(v) : v ∈ C − {0} }`.
pub fn minimum_distance(p: &Poset, code: &LinearCode, cap: u64) -> Result<usize, CodeError> {
    if code.dimension() == 0 {
        return Err(CodeError::ZeroDimensional);
    }
    if p.size() != code.length() {
        return Err(CodeError::LengthMismatch {
            expected: p.size(),
            found: code.length(),
        });
    }
    let mut best = usize::MAX;
    for w in code.codewords(cap)?.skip(1) {
        best = best.min(p.weight(&w.support()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supports() {
        assert_eq!(FieldVector::from_digits(2, "001").unwrap().support().labels(), vec![3]);
        assert!(FieldVector::zero(2, 3).support().is_empty());
        assert_eq!(
            FieldVector::new(3, [2, 0, 1]).unwrap().support().labels(),
            vec![1, 3]
        );
    }

    #[test]
    fn weights_and_distances() {
        let chain = Poset::chain(3);
        let v = FieldVector::from_digits(2, "001").unwrap();
        assert_eq!(p_weight(&chain, &v).unwrap(), 3);
        assert_eq!(p_weight(&chain, &FieldVector::zero(2, 3)).unwrap(), 0);
        assert_eq!(
            p_weight(&Poset::antichain(3), &FieldVector::from_digits(2, "101").unwrap()).unwrap(),
            2
        );
        assert_eq!(p_distance(&chain, &v, &v).unwrap(), 0);
        assert_eq!(p_distance(&chain, &v, &FieldVector::zero(2, 3)).unwrap(), 3);
        assert!(matches!(
            p_weight(&Poset::chain(2), &v),
            Err(CodeError::LengthMismatch { .. })
        ));
        let w = FieldVector::from_digits(3, "001").unwrap();
        assert!(matches!(
            p_distance(&chain, &v, &w),
            Err(CodeError::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn complement_is_involution() {
        let v = FieldVector::new(5, [1, 4, 0, 3]).unwrap();
        let x = FieldVector::new(5, [2, 4, 1, 0]).unwrap();
        let xv = x.complement(&v).unwrap();
        assert_eq!(xv.complement(&v).unwrap(), x);
    }

    #[test]
    fn enumeration() {
        let c = LinearCode::new(2, 3, vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let words: Vec<_> = c.codewords(DEFAULT_ENUMERATION_CAP).unwrap().collect();
        assert_eq!(words.len(), 4);
        assert!(words[0].is_zero());
        let c = LinearCode::new(3, 2, vec![vec![1, 2]]).unwrap();
        let words: Vec<alloc::string::String> = c
            .codewords(100)
            .unwrap()
            .map(|w| alloc::format!("{w}"))
            .collect();
        assert_eq!(words, vec!["00", "12", "21"]);
        let rows: Vec<Vec<u64>> = (0..30)
            .map(|i| (0..30).map(|j| u64::from(i == j)).collect())
            .collect();
        let big = LinearCode::new(2, 30, rows).unwrap();
        assert!(matches!(
            big.codewords(1 << 20),
            Err(CodeError::CapExceeded { count, cap }) if count == 1 << 30 && cap == 1 << 20
        ));
    }

    #[test]
    fn generator_validation() {
        assert_eq!(LinearCode::new(4, 2, vec![vec![1, 0]]), Err(CodeError::NotPrime(4)));
        assert!(matches!(
            LinearCode::new(2, 2, vec![vec![1, 1], vec![1, 1]]),
            Err(CodeError::RankDeficient { rank: 1, rows: 2 })
        ));
        assert!(matches!(
            LinearCode::new(3, 3, vec![vec![1, 2, 0], vec![2, 1, 0]]),
            Err(CodeError::RankDeficient { .. })
        ));
        assert!(matches!(
            LinearCode::new(2, 3, vec![vec![1, 1]]),
            Err(CodeError::RaggedGenerator { .. })
        ));
    }

    #[test]
    fn minimum_distances() {
        let full = LinearCode::new(
            2,
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert_eq!(minimum_distance(&Poset::antichain(3), &full, 64).unwrap(), 1);
        // On a chain the weight is the position of the top nonzero coordinate.
        let c = LinearCode::new(2, 4, vec![vec![1, 1, 0, 1], vec![0, 1, 1, 0]]).unwrap();
        assert_eq!(minimum_distance(&Poset::chain(4), &c, 64).unwrap(), 3);
        let empty = LinearCode::new(2, 4, vec![]).unwrap();
        assert_eq!(
            minimum_distance(&Poset::chain(4), &empty, 64),
            Err(CodeError::ZeroDimensional)
        );
    }
}
