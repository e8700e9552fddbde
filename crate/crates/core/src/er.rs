//! Matrices that share a poset's packing radius, the operations that keep
//! the radius fixed, and support-containment comparison.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poset::Poset;
use crate::poset_partition::{packing_radius_matrix, AlgebraError, Entry, NumberMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErError {
    /// The column is not dominated by any other column.
    NotDominated { column: usize },
    NotNullRow { row: usize },
    IndexOutOfRange { index: usize, len: usize },
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    /// Removing the column would leave the matrix empty.
    LastColumn,
}

impl fmt::Display for ErError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErError::NotDominated { column } => {
                write!(f, "column {} is not dominated by another column", column + 1)
            }
            ErError::NotNullRow { row } => write!(f, "row {} is not null", row + 1),
            ErError::IndexOutOfRange { index, len } => {
                write!(f, "index {} out of range 1..={len}", index + 1)
            }
            ErError::DimensionMismatch { left, right } => write!(
                f,
                "matrix dimensions differ: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            ErError::LastColumn => write!(f, "cannot remove the only column"),
        }
    }
}

impl core::error::Error for ErError {}

/// A radius-preserving edit. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// Inserts a null row so that it ends up at the given index.
    AddNullRow(usize),
    RemoveNullRow(usize),
    AddDominatedColumn { at: usize, column: Vec<Entry> },
    RemoveDominatedColumn(usize),
}

/// A row-major entry matrix with at least one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ErMatrix {
    rows: Vec<Vec<Entry>>,
    width: usize,
}

impl fmt::Debug for ErMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ErMatrix {}x{}", self.height(), self.width)?;
        for r in &self.rows {
            for (j, e) in r.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn dominates(v: &[Entry], w: &[Entry]) -> bool {
    // w_k ∈ {0, σ·v_k} for one sign σ; for 0/1 columns this is support
    // containment.
    [false, true].iter().any(|&neg| {
        v.iter().zip(w).all(|(&a, &b)| {
            b == Entry::Zero || b == if neg { a.negate() } else { a }
        })
    })
}

impl ErMatrix {
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self, AlgebraError> {
        let width = rows.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(AlgebraError::EmptyMatrix);
        }
        if let Some(r) = rows.iter().find(|r| r.len() != width) {
            return Err(AlgebraError::LengthMismatch {
                left: width,
                right: r.len(),
            });
        }
        Ok(ErMatrix { rows, width })
    }

    pub fn from_bool_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.as_ref()
                        .iter()
                        .map(|&b| if b { Entry::Plus } else { Entry::Zero })
                        .collect()
                })
                .collect(),
        )
    }

    /// The radius matrix of `p`.
    pub fn radius_matrix(p: &Poset) -> Self {
        let max = p.maximal().indices();
        let rows = (0..p.size())
            .map(|i| {
                max.iter()
                    .map(|&x| if p.leq(i, x) { Entry::Plus } else { Entry::Zero })
                    .collect()
            })
            .collect();
        ErMatrix {
            rows,
            width: max.len(),
        }
    }

    /// The full adjacency matrix of `p`, itself an ER-matrix of `p`.
    pub fn adjacency(p: &Poset) -> Self {
        Self::from_bool_rows(&p.adjacency_matrix()).expect("posets are nonempty")
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn column(&self, j: usize) -> Vec<Entry> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn to_number_matrix(&self) -> NumberMatrix {
        if self.rows.is_empty() {
            let cols = (0..self.width)
                .map(|j| crate::poset_partition::EVector::from_entries(&[], self.width).with_primary(j))
                .collect();
            return NumberMatrix::new(cols).expect("width is positive");
        }
        NumberMatrix::from_rows(&self.rows).expect("validated on construction")
    }

    /// `R(M)` of this matrix.
    pub fn radius(&self) -> Result<usize, AlgebraError> {
        packing_radius_matrix(&self.to_number_matrix()).map(|o| o.radius)
    }

    fn check(index: usize, len: usize) -> Result<(), ErError> {
        if index >= len {
            return Err(ErError::IndexOutOfRange { index, len });
        }
        Ok(())
    }

    /// Applies one radius-preserving operation.
    pub fn transform(&self, op: &ErOp) -> Result<ErMatrix, ErError> {
        let mut m = self.clone();
        let (h, w) = (self.height(), self.width);
        match op {
            ErOp::SwapRows(a, b) => {
                Self::check(*a, h)?;
                Self::check(*b, h)?;
                m.rows.swap(*a, *b);
            }
            ErOp::SwapCols(a, b) => {
                Self::check(*a, w)?;
                Self::check(*b, w)?;
                for r in &mut m.rows {
                    r.swap(*a, *b);
                }
            }
            ErOp::AddNullRow(at) => {
                Self::check(*at, h + 1)?;
                m.rows.insert(*at, vec![Entry::Zero; w]);
            }
            ErOp::RemoveNullRow(at) => {
                Self::check(*at, h)?;
                if m.rows[*at].iter().any(|&e| e != Entry::Zero) {
                    return Err(ErError::NotNullRow { row: *at });
                }
                m.rows.remove(*at);
            }
            ErOp::AddDominatedColumn { at, column } => {
                Self::check(*at, w + 1)?;
                if column.len() != h {
                    return Err(ErError::DimensionMismatch {
                        left: (h, w),
                        right: (column.len(), 1),
                    });
                }
                if !(0..w).any(|j| dominates(&self.column(j), column)) {
                    return Err(ErError::NotDominated { column: *at });
                }
                for (r, &e) in m.rows.iter_mut().zip(column) {
                    r.insert(*at, e);
                }
                m.width += 1;
            }
            ErOp::RemoveDominatedColumn(at) => {
                Self::check(*at, w)?;
                if w == 1 {
                    return Err(ErError::LastColumn);
                }
                let col = self.column(*at);
                if !(0..w).any(|j| j != *at && dominates(&self.column(j), &col)) {
                    return Err(ErError::NotDominated { column: *at });
                }
                for r in &mut m.rows {
                    r.remove(*at);
                }
                m.width -= 1;
            }
        }
        Ok(m)
    }

    /// Indices of columns dominated by some other column. Of two equal
    /// columns only the later one is listed.
    pub fn dominated_columns(&self) -> Vec<usize> {
        let cols: Vec<Vec<Entry>> = (0..self.width).map(|j| self.column(j)).collect();
        (0..self.width)
            .filter(|&k| {
                (0..self.width).any(|j| {
                    j != k && dominates(&cols[j], &cols[k]) && (cols[j] != cols[k] || j < k)
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SupportOrder {
    /// `R(left) ≤ R(right)`. Also reported for identical supports.
    Le,
    Ge,
    Unknown,
}

fn contained(a: &ErMatrix, b: &ErMatrix) -> bool {
    a.rows
        .iter()
        .zip(&b.rows)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(&x, &y)| x == Entry::Zero || y != Entry::Zero))
}

/// Entrywise support containment of two equally sized ER-matrices.
pub fn compare_by_support(a: &ErMatrix, b: &ErMatrix) -> Result<SupportOrder, ErError> {
    if a.height() != b.height() || a.width() != b.width() {
        return Err(ErError::DimensionMismatch {
            left: (a.height(), a.width()),
            right: (b.height(), b.width()),
        });
    }
    Ok(if contained(a, b) {
        SupportOrder::Le
    } else if contained(b, a) {
        SupportOrder::Ge
    } else {
        SupportOrder::Unknown
    })
}

fn pad(m: &ErMatrix, height: usize, width: usize) -> ErMatrix {
    let mut m = m.clone();
    for r in &mut m.rows {
        r.resize(width, Entry::Zero);
    }
    m.rows.resize(height, vec![Entry::Zero; width]);
    m.width = width;
    m
}

fn support_of(m: &ErMatrix, j: usize) -> Vec<bool> {
    m.rows.iter().map(|r| r[j] != Entry::Zero).collect()
}

/// Reorders the columns of `a` so that each lands on a column of `b` that
/// contains its support, if the greedy matching finds one.
fn match_columns(a: &ErMatrix, b: &ErMatrix) -> Option<ErMatrix> {
    let sa: Vec<Vec<bool>> = (0..a.width).map(|j| support_of(a, j)).collect();
    let sb: Vec<Vec<bool>> = (0..b.width).map(|j| support_of(b, j)).collect();
    let size = |s: &Vec<bool>| s.iter().filter(|&&x| x).count();
    let mut order: Vec<usize> = (0..a.width).collect();
    order.sort_by_key(|&j| (core::cmp::Reverse(size(&sa[j])), j));
    let mut target = vec![usize::MAX; a.width];
    let mut used = vec![false; b.width];
    for j in order {
        let pick = (0..b.width)
            .filter(|&k| !used[k] && sa[j].iter().zip(&sb[k]).all(|(&x, &y)| !x || y))
            .min_by_key(|&k| (size(&sb[k]), k))?;
        used[pick] = true;
        target[j] = pick;
    }
    let mut rows = vec![vec![Entry::Zero; b.width]; a.height()];
    for (j, &k) in target.iter().enumerate() {
        for (i, r) in rows.iter_mut().enumerate() {
            r[k] = a.rows[i][j];
        }
    }
    Some(ErMatrix {
        rows,
        width: b.width,
    })
}

/// Pads both matrices with null rows at the bottom and zero columns at the
/// right, then looks for a column permutation giving support containment.
/// `Unknown` means the heuristic found nothing, not that no order holds.
pub fn compare_padded(a: &ErMatrix, b: &ErMatrix) -> SupportOrder {
    let h = a.height().max(b.height());
    let w = a.width().max(b.width());
    let (pa, pb) = (pad(a, h, w), pad(b, h, w));
    if match_columns(&pa, &pb).is_some() {
        SupportOrder::Le
    } else if match_columns(&pb, &pa).is_some() {
        SupportOrder::Ge
    } else {
        SupportOrder::Unknown
    }
}
