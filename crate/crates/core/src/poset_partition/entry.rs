//! The four-valued algebra `{0, 1, −1, i}` and entry vectors over it.
//!
//! An [`EVector`] stores two bit planes: `plus` holds the rows whose entry
//! is `1` or `i`, `minus` the rows whose entry is `−1` or `i`. With that
//! encoding `⊕` is a plane-wise OR and `⊖` is an OR with the second
//! operand's planes swapped.

use alloc::vec::Vec;
use core::fmt;

use super::AlgebraError;
use crate::bits::Bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    Plus,
    Minus,
    Imag,
}

impl Entry {
    pub const ALL: [Entry; 4] = [Entry::Zero, Entry::Plus, Entry::Minus, Entry::Imag];

    /// The associating operator `⊕`.
    pub fn assoc(self, other: Entry) -> Entry {
        use Entry::*;
        match (self, other) {
            (Zero, x) | (x, Zero) => x,
            (Imag, _) | (_, Imag) => Imag,
            (Plus, Plus) => Plus,
            (Minus, Minus) => Minus,
            (Plus, Minus) | (Minus, Plus) => Imag,
        }
    }

    /// The differencing operator `⊖`; `self` is the row operand.
    pub fn diff(self, other: Entry) -> Entry {
        self.assoc(other.negate())
    }

    /// `⊖x`, i.e. `0 ⊖ x`.
    pub fn negate(self) -> Entry {
        match self {
            Entry::Plus => Entry::Minus,
            Entry::Minus => Entry::Plus,
            x => x,
        }
    }

    fn from_planes(plus: bool, minus: bool) -> Entry {
        match (plus, minus) {
            (false, false) => Entry::Zero,
            (true, false) => Entry::Plus,
            (false, true) => Entry::Minus,
            (true, true) => Entry::Imag,
        }
    }

    fn planes(self) -> (bool, bool) {
        match self {
            Entry::Zero => (false, false),
            Entry::Plus => (true, false),
            Entry::Minus => (false, true),
            Entry::Imag => (true, true),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Entry::Zero => "0",
            Entry::Plus => "1",
            Entry::Minus => "-1",
            Entry::Imag => "i",
        })
    }
}

/// A column of entries together with the primary and secondary sets of
/// the labels (maximal elements or matrix columns) it has absorbed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EVector {
    plus: Bits,
    minus: Bits,
    pri: Bits,
    sec: Bits,
}

impl EVector {
    /// A vector with no commitments. `labels` is the size of the label
    /// universe for the primary/secondary sets.
    pub fn from_entries(entries: &[Entry], labels: usize) -> Self {
        let n = entries.len();
        let mut v = EVector {
            plus: Bits::new(n),
            minus: Bits::new(n),
            pri: Bits::new(labels),
            sec: Bits::new(labels),
        };
        for (k, e) in entries.iter().enumerate() {
            let (p, m) = e.planes();
            v.plus.set(k, p);
            v.minus.set(k, m);
        }
        v
    }

    /// The indicator vector of `support`, committed to the primary set as
    /// `label`. This is the adjacency vector of a maximal element.
    pub fn indicator(support: &Bits, label: usize, labels: usize) -> Self {
        EVector {
            plus: support.clone(),
            minus: Bits::new(support.len()),
            pri: Bits::from_indices(labels, [label]),
            sec: Bits::new(labels),
        }
    }

    pub(crate) fn with_primary(mut self, label: usize) -> Self {
        self.pri.insert(label);
        self
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, k: usize) -> Entry {
        Entry::from_planes(self.plus.contains(k), self.minus.contains(k))
    }

    pub fn entries(&self) -> Vec<Entry> {
        (0..self.len()).map(|k| self.get(k)).collect()
    }

    pub fn primary(&self) -> &Bits {
        &self.pri
    }

    pub fn secondary(&self) -> &Bits {
        &self.sec
    }

    pub fn plus_plane(&self) -> &Bits {
        &self.plus
    }

    pub fn minus_plane(&self) -> &Bits {
        &self.minus
    }

    /// Rows holding a nonzero entry.
    pub fn support(&self) -> Bits {
        self.plus.union(&self.minus)
    }

    /// Rows holding `i`.
    pub fn imag_rows(&self) -> Bits {
        self.plus.intersection(&self.minus)
    }

    fn check(&self, other: &EVector) -> Result<(), AlgebraError> {
        if self.len() != other.len() || self.pri.len() != other.pri.len() {
            return Err(AlgebraError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let mine = self.pri.union(&self.sec);
        let theirs = other.pri.union(&other.sec);
        if !mine.is_disjoint(&theirs) {
            return Err(AlgebraError::OverlappingCommitments);
        }
        Ok(())
    }

    /// `self ⊕ other`: both operands go to the same block.
    pub fn assoc(&self, other: &EVector) -> Result<EVector, AlgebraError> {
        self.check(other)?;
        Ok(EVector {
            plus: self.plus.union(&other.plus),
            minus: self.minus.union(&other.minus),
            pri: self.pri.union(&other.pri),
            sec: self.sec.union(&other.sec),
        })
    }

    /// `self ⊖ other`: the operands go to opposite blocks.
    pub fn diff(&self, other: &EVector) -> Result<EVector, AlgebraError> {
        self.check(other)?;
        Ok(EVector {
            plus: self.plus.union(&other.minus),
            minus: self.minus.union(&other.plus),
            pri: self.pri.union(&other.sec),
            sec: self.sec.union(&other.pri),
        })
    }

    /// `S(v)` as `(re, im)`: `#1 − #(−1)` and `#i`.
    pub fn entry_sum(&self) -> (i64, usize) {
        let plus_only = self.plus.difference_count(&self.minus) as i64;
        let minus_only = self.minus.difference_count(&self.plus) as i64;
        (plus_only - minus_only, self.plus.intersection_count(&self.minus))
    }

    /// `Λ(v) = |Re S(v)| + Im S(v)`.
    pub fn discordancy(&self) -> usize {
        let (re, im) = self.entry_sum();
        re.unsigned_abs() as usize + im
    }

    /// Zeroes the given rows.
    pub(crate) fn clear_rows(&mut self, rows: &Bits) {
        self.plus.difference_with(rows);
        self.minus.difference_with(rows);
    }
}

impl fmt::Display for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self}) pri={:?} sec={:?}", self.pri, self.sec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use Entry::*;

    const ORDER: [Entry; 4] = [Zero, Plus, Minus, Imag];

    // Row operand x, column operand y, in the order 0, 1, −1, i.
    const DIFF_TABLE: [[Entry; 4]; 4] = [
        [Zero, Minus, Plus, Imag],
        [Plus, Imag, Plus, Imag],
        [Minus, Minus, Imag, Imag],
        [Imag, Imag, Imag, Imag],
    ];
    const ASSOC_TABLE: [[Entry; 4]; 4] = [
        [Zero, Plus, Minus, Imag],
        [Plus, Plus, Imag, Imag],
        [Minus, Imag, Minus, Imag],
        [Imag, Imag, Imag, Imag],
    ];

    #[test]
    fn scalar_tables() {
        for (r, &x) in ORDER.iter().enumerate() {
            for (c, &y) in ORDER.iter().enumerate() {
                assert_eq!(x.diff(y), DIFF_TABLE[r][c], "{x} ⊖ {y}");
                assert_eq!(x.assoc(y), ASSOC_TABLE[r][c], "{x} ⊕ {y}");
            }
        }
        assert_eq!(Plus.assoc(Minus), Imag);
        assert_eq!(Imag.assoc(Plus), Imag);
        assert_eq!(Plus.diff(Minus), Plus);
        assert_eq!(Zero.diff(Plus), Minus);
        assert_eq!(Minus.diff(Minus), Imag);
    }

    #[test]
    fn bitplane_forms_match_tables() {
        for &x in &ORDER {
            for &y in &ORDER {
                let vx = EVector::from_entries(&[x], 2);
                let mut vy = EVector::from_entries(&[y], 2);
                vy.pri.insert(1);
                assert_eq!(vx.assoc(&vy).unwrap().get(0), x.assoc(y));
                assert_eq!(vx.diff(&vy).unwrap().get(0), x.diff(y));
            }
        }
    }

    #[test]
    fn sums_and_discordancy() {
        let v = EVector::from_entries(&[Plus, Plus, Minus, Imag, Plus, Imag], 0);
        assert_eq!(v.entry_sum(), (2, 2));
        assert_eq!(v.discordancy(), 4);
        let z = EVector::from_entries(&[Zero; 5], 0);
        assert_eq!(z.entry_sum(), (0, 0));
        assert_eq!(z.discordancy(), 0);
        assert_eq!(EVector::from_entries(&[Plus; 3], 0).entry_sum(), (3, 0));
    }

    #[test]
    fn commitment_bookkeeping() {
        // (x1 ⊖ x2) ⊖ (x3 ⊖ x4) has primary {x1, x4} and secondary {x2, x3}.
        let x: Vec<EVector> = (0..4)
            .map(|i| EVector::indicator(&Bits::from_indices(4, [i]), i, 4))
            .collect();
        let left = x[0].diff(&x[1]).unwrap();
        let right = x[2].diff(&x[3]).unwrap();
        let v = left.diff(&right).unwrap();
        assert_eq!(v.primary().iter().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(v.secondary().iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(v.entries(), vec![Plus, Minus, Minus, Plus]);
    }

    #[test]
    fn identity_and_errors() {
        let v = EVector::indicator(&Bits::from_indices(3, [0, 2]), 0, 2);
        let zero = EVector::from_entries(&[Zero; 3], 2);
        assert_eq!(v.assoc(&zero).unwrap(), v);
        assert_eq!(v.assoc(&v), Err(AlgebraError::OverlappingCommitments));
        let short = EVector::from_entries(&[Zero; 2], 2);
        assert!(matches!(v.diff(&short), Err(AlgebraError::LengthMismatch { .. })));
    }
}
