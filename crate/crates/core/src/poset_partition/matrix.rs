//! Number-matrices `(α, M)`: the nodes of the differencing tree.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use super::entry::{EVector, Entry};
use super::AlgebraError;
use crate::bits::Bits;
use crate::poset::Poset;

/// Which child of a node: difference (left) or associate (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Diff,
    Assoc,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Diff => "⊖",
            Op::Assoc => "⊕",
        })
    }
}

/// A counter of absorbed `i`-rows plus a matrix of entry columns.
///
/// Rows keep their original positions; compaction retires a row from
/// `active` instead of shifting the bit planes. Retired rows are zero in
/// every column.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberMatrix {
    alpha: usize,
    active: Bits,
    columns: Vec<EVector>,
}

impl fmt::Debug for NumberMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump_line(None))
    }
}

impl NumberMatrix {
    /// A number-matrix with `alpha = 0` and all rows active.
    pub fn new(columns: Vec<EVector>) -> Result<Self, AlgebraError> {
        let first = columns.first().ok_or(AlgebraError::EmptyMatrix)?;
        let rows = first.len();
        let labels = first.primary().len();
        for c in &columns {
            if c.len() != rows || c.primary().len() != labels {
                return Err(AlgebraError::LengthMismatch {
                    left: rows,
                    right: c.len(),
                });
            }
        }
        Ok(NumberMatrix {
            alpha: 0,
            active: Bits::full(rows),
            columns,
        })
    }

    /// Builds a matrix from rows of entries; column `j` gets label `j`.
    pub fn from_rows<R: AsRef<[Entry]>>(rows: &[R]) -> Result<Self, AlgebraError> {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        if width == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        for r in rows {
            if r.as_ref().len() != width {
                return Err(AlgebraError::LengthMismatch {
                    left: width,
                    right: r.as_ref().len(),
                });
            }
        }
        let columns = (0..width)
            .map(|j| {
                let col: Vec<Entry> = rows.iter().map(|r| r.as_ref()[j]).collect();
                EVector::from_entries(&col, width).with_primary(j)
            })
            .collect();
        Self::new(columns)
    }

    /// Same as [`NumberMatrix::from_rows`] for a 0/1 matrix.
    pub fn from_bool_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self, AlgebraError> {
        let rows: Vec<Vec<Entry>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|&b| if b { Entry::Plus } else { Entry::Zero })
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }

    /// The radius matrix of `p`: one adjacency-vector column per maximal
    /// element, ascending, each labelled by its element index.
    pub fn radius_matrix(p: &Poset) -> NumberMatrix {
        let n = p.size();
        let columns = p
            .maximal()
            .iter()
            .map(|x| EVector::indicator(p.down_set(x), x, n))
            .collect();
        Self::new(columns).expect("a nonempty poset has a maximal element")
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn columns(&self) -> &[EVector] {
        &self.columns
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    /// Original row count, including retired rows.
    pub fn height(&self) -> usize {
        self.active.len()
    }

    pub fn active_rows(&self) -> &Bits {
        &self.active
    }

    /// Number of labels the commitment sets range over.
    pub fn label_count(&self) -> usize {
        self.columns[0].primary().len()
    }

    /// Active rows holding at least one nonzero entry.
    pub fn nonnull_rows(&self) -> Bits {
        let mut rows = Bits::new(self.height());
        for c in &self.columns {
            rows.union_with(&c.support());
        }
        rows.intersect_with(&self.active);
        rows
    }

    /// Active rows holding an `i` in some column.
    pub fn imag_rows(&self) -> Bits {
        let mut rows = Bits::new(self.height());
        for c in &self.columns {
            rows.union_with(&c.imag_rows());
        }
        rows.intersect_with(&self.active);
        rows
    }

    /// Moves every row holding an `i` into the counter.
    pub fn compact(&mut self) {
        let imag = self.imag_rows();
        if imag.is_empty() {
            return;
        }
        self.alpha += imag.count();
        self.active.difference_with(&imag);
        for c in &mut self.columns {
            c.clear_rows(&imag);
        }
    }

    pub fn compacted(mut self) -> Self {
        self.compact();
        self
    }

    /// The active rows as entry rows, in original order.
    pub fn entry_rows(&self) -> Vec<Vec<Entry>> {
        self.active
            .iter()
            .map(|k| self.columns.iter().map(|c| c.get(k)).collect())
            .collect()
    }

    /// Replaces column `j` by `col_j op col_k` and removes column `k`.
    pub fn combine(&self, j: usize, k: usize, op: Op) -> Result<NumberMatrix, AlgebraError> {
        let w = self.width();
        if j >= w || k >= w || j == k {
            return Err(AlgebraError::ColumnIndex { j, k, width: w });
        }
        let merged = match op {
            Op::Diff => self.columns[j].diff(&self.columns[k])?,
            Op::Assoc => self.columns[j].assoc(&self.columns[k])?,
        };
        let mut columns = self.columns.clone();
        columns[j] = merged;
        columns.remove(k);
        Ok(NumberMatrix {
            alpha: self.alpha,
            active: self.active.clone(),
            columns,
        })
    }

    /// Poset LDM choice: the column of largest discordancy, then the
    /// partner minimising the discordancy of their difference. Ties go to
    /// the lower column index.
    pub fn pldm_select(&self) -> Result<(usize, usize), AlgebraError> {
        if self.width() < 2 {
            return Err(AlgebraError::TooFewColumns);
        }
        let mut j = 0;
        let mut best = self.columns[0].discordancy();
        for (idx, c) in self.columns.iter().enumerate().skip(1) {
            let d = c.discordancy();
            if d > best {
                best = d;
                j = idx;
            }
        }
        let mut k = usize::MAX;
        let mut low = usize::MAX;
        for (idx, c) in self.columns.iter().enumerate() {
            if idx == j {
                continue;
            }
            let d = self.columns[j]
                .diff(c)
                .map(|v| v.discordancy())
                .unwrap_or(usize::MAX);
            if d < low {
                low = d;
                k = idx;
            }
        }
        Ok((j, k))
    }

    /// One line of the tree dump: `α [col₁ col₂ …] op=⊖|⊕`, entries of the
    /// active rows separated by commas.
    pub fn dump_line(&self, op: Option<Op>) -> String {
        let mut s = String::new();
        let _ = write!(s, "{} [", self.alpha);
        for (idx, c) in self.columns.iter().enumerate() {
            if idx > 0 {
                s.push(' ');
            }
            let mut first = true;
            for k in self.active.iter() {
                if !first {
                    s.push(',');
                }
                first = false;
                let _ = write!(s, "{}", c.get(k));
            }
        }
        s.push(']');
        if let Some(op) = op {
            let _ = write!(s, " op={op}");
        }
        s
    }
}
