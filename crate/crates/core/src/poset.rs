//! Finite posets on `{0, …, n−1}`: ideals, weights, maximal elements,
//! classification and the standard form.
//!
//! Elements are 0-based inside the library. The conventional 1-based labels
//! only appear at the edges: [`Poset::from_covers`] and
//! [`ElementSet::from_labels`] / [`ElementSet::labels`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, DerefMut};

use crate::bits::Bits;

/// A subset of the ground set of a poset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet(Bits);

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet(Bits::new(n))
    }

    pub fn all(n: usize) -> Self {
        ElementSet(Bits::full(n))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        ElementSet(Bits::from_indices(n, indices))
    }

    /// Builds a set from 1-based labels. Panics on a label outside `1..=n`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(n: usize, labels: I) -> Self {
        ElementSet(Bits::from_indices(
            n,
            labels.into_iter().map(|l| {
                assert!((1..=n).contains(&l), "label {l} outside 1..={n}");
                l - 1
            }),
        ))
    }

    /// The members as ascending 1-based labels.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().collect()
    }

    pub fn bits(&self) -> &Bits {
        &self.0
    }
}

impl From<Bits> for ElementSet {
    fn from(b: Bits) -> Self {
        ElementSet(b)
    }
}

impl Deref for ElementSet {
    type Target = Bits;
    fn deref(&self) -> &Bits {
        &self.0
    }
}

impl DerefMut for ElementSet {
    fn deref_mut(&mut self) -> &mut Bits {
        &mut self.0
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

/// Which order axiom an adjacency matrix breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetError {
    /// The ground set must be nonempty.
    EmptyGroundSet,
    /// A label outside `1..=n`.
    Range { label: usize, n: usize },
    /// The relation closes into a directed cycle through these two labels.
    Cycle { a: usize, b: usize },
    /// Adjacency matrix is not square.
    NotSquare { rows: usize, row: usize, len: usize },
    /// The matrix violates an order axiom at 1-based position `(i, j)`.
    NotAPartialOrder { axiom: Axiom, i: usize, j: usize },
    /// The ideal of the empty set has no elements.
    EmptyIdeal,
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::EmptyGroundSet => write!(f, "poset must have at least one element"),
            PosetError::Range { label, n } => {
                write!(f, "element {label} is out of range 1..={n}")
            }
            PosetError::Cycle { a, b } => write!(
                f,
                "relation contains a cycle: {a} and {b} are below each other"
            ),
            PosetError::NotSquare { rows, row, len } => write!(
                f,
                "adjacency matrix is not square: row {row} has {len} entries, expected {rows}"
            ),
            PosetError::NotAPartialOrder { axiom, i, j } => {
                write!(f, "not a partial order: {axiom:?} fails at ({i}, {j})")
            }
            PosetError::EmptyIdeal => write!(f, "ideal of the empty set is empty"),
        }
    }
}

impl core::error::Error for PosetError {}

/// Structural facts about a poset that select closed-form radius formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_chain: bool,
    pub is_antichain: bool,
    pub is_hierarchical: bool,
    pub has_disjoint_maximal_ideals: bool,
}

/// A finite partial order stored as its full (reflexive, transitive)
/// relation, one bitset per element in each direction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    /// `down[j]` = `{ i : i ⪯ j }`, the adjacency vector of `j`.
    down: Vec<Bits>,
    /// `up[i]` = `{ j : i ⪯ j }`.
    up: Vec<Bits>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rels = Vec::new();
        for j in 0..self.size() {
            for i in self.down[j].iter() {
                if i != j {
                    rels.push((i + 1, j + 1));
                }
            }
        }
        f.debug_struct("Poset")
            .field("n", &self.size())
            .field("strict", &rels)
            .finish()
    }
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relations`, given as
    /// 1-based pairs `(a, b)` meaning `a ⪯ b`. Pairs with `a == b` are
    /// accepted and carry no information.
    pub fn from_covers(n: usize, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        if n == 0 {
            return Err(PosetError::EmptyGroundSet);
        }
        let mut up: Vec<Bits> = (0..n).map(|i| Bits::from_indices(n, [i])).collect();
        for &(a, b) in relations {
            for label in [a, b] {
                if !(1..=n).contains(&label) {
                    return Err(PosetError::Range { label, n });
                }
            }
            up[a - 1].insert(b - 1);
        }
        // Warshall over row bitsets.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::Cycle { a: i + 1, b: j + 1 });
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    /// Builds a poset from its adjacency matrix, `m[i][j]` meaning `i ⪯ j`.
    pub fn from_adjacency<R: AsRef<[bool]>>(m: &[R]) -> Result<Self, PosetError> {
        let n = m.len();
        if n == 0 {
            return Err(PosetError::EmptyGroundSet);
        }
        for (r, row) in m.iter().enumerate() {
            if row.as_ref().len() != n {
                return Err(PosetError::NotSquare {
                    rows: n,
                    row: r + 1,
                    len: row.as_ref().len(),
                });
            }
        }
        let at = |i: usize, j: usize| m[i].as_ref()[j];
        let bad = |axiom, i: usize, j: usize| PosetError::NotAPartialOrder {
            axiom,
            i: i + 1,
            j: j + 1,
        };
        for i in 0..n {
            if !at(i, i) {
                return Err(bad(Axiom::Reflexivity, i, i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if at(i, j) && at(j, i) {
                    return Err(bad(Axiom::Antisymmetry, i, j));
                }
            }
        }
        let up: Vec<Bits> = (0..n)
            .map(|i| Bits::from_indices(n, (0..n).filter(|&j| at(i, j))))
            .collect();
        for i in 0..n {
            for j in up[i].iter() {
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].difference(&up[i]).first().unwrap_or(j);
                    return Err(bad(Axiom::Transitivity, i, k));
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    fn from_up_sets(up: Vec<Bits>) -> Self {
        let n = up.len();
        let mut down = vec![Bits::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Poset { down, up }
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_covers(n, &pairs).expect("chain is a valid poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_covers(n, &[]).expect("antichain is a valid poset")
    }

    /// Disjoint union of chains with the given lengths, numbered consecutively.
    pub fn disjoint_chains(lengths: &[usize]) -> Self {
        let n: usize = lengths.iter().sum();
        let mut pairs = Vec::new();
        let mut start = 1;
        for &len in lengths {
            for i in start..start + len.saturating_sub(1) {
                pairs.push((i, i + 1));
            }
            start += len;
        }
        Self::from_covers(n, &pairs).expect("disjoint chains form a valid poset")
    }

    /// A hierarchy with the given level sizes, bottom level first: every
    /// element of a level is below every element of all higher levels.
    pub fn hierarchy(level_sizes: &[usize]) -> Self {
        let n: usize = level_sizes.iter().sum();
        let mut pairs = Vec::new();
        let mut start = 1;
        for w in level_sizes.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            for a in start..start + lo {
                for b in start + lo..start + lo + hi {
                    pairs.push((a, b));
                }
            }
            start += lo;
        }
        Self::from_covers(n, &pairs).expect("hierarchy is a valid poset")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.down.len()
    }

    /// `i ⪯ j`.
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    /// `i ≺ j`.
    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// The adjacency vector of `x`: the principal ideal `⟨x⟩`.
    pub fn down_set(&self, x: usize) -> &Bits {
        &self.down[x]
    }

    pub fn up_set(&self, x: usize) -> &Bits {
        &self.up[x]
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    /// `⟨X⟩`, the smallest ideal containing `x`.
    pub fn ideal(&self, x: &ElementSet) -> ElementSet {
        let mut out = Bits::new(self.size());
        for e in x.iter() {
            out.union_with(&self.down[e]);
        }
        ElementSet(out)
    }

    /// `ω_P(X) = |⟨X⟩|`.
    pub fn weight(&self, x: &ElementSet) -> usize {
        self.ideal(x).count()
    }

    /// Elements of `a` with nothing strictly above them inside `a`.
    pub fn maximal_elements(&self, a: &ElementSet) -> ElementSet {
        let mut out = Bits::new(self.size());
        for x in a.iter() {
            // up[x] ∩ a == {x}
            if self.up[x].intersection_count(a) == 1 {
                out.insert(x);
            }
        }
        ElementSet(out)
    }

    /// `M_P`, the maximal elements of the whole poset.
    pub fn maximal(&self) -> ElementSet {
        ElementSet::from_indices(
            self.size(),
            (0..self.size()).filter(|&x| self.up[x].count() == 1),
        )
    }

    pub fn minimal(&self) -> ElementSet {
        ElementSet::from_indices(
            self.size(),
            (0..self.size()).filter(|&x| self.down[x].count() == 1),
        )
    }

    /// The length of each element: the size of the largest chain in `⟨x⟩`.
    pub fn levels(&self) -> Vec<usize> {
        let n = self.size();
        let mut order: Vec<usize> = (0..n).collect();
        // strictly-below elements have strictly smaller principal ideals
        order.sort_by_key(|&x| self.down[x].count());
        let mut level = vec![0usize; n];
        for &x in &order {
            level[x] = 1 + self.down[x]
                .iter()
                .filter(|&y| y != x)
                .map(|y| level[y])
                .max()
                .unwrap_or(0);
        }
        level
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size()).all(|i| self.down[i].count() + self.up[i].count() == self.size() + 1)
    }

    pub fn is_antichain(&self) -> bool {
        self.down.iter().all(|d| d.count() == 1)
    }

    /// Comparability is decided by level alone: `i ≺ j ⇔ level(i) < level(j)`.
    pub fn is_hierarchical(&self) -> bool {
        let level = self.levels();
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.lt(i, j) == (level[i] < level[j])))
    }

    /// The ideals of distinct maximal elements are pairwise disjoint.
    pub fn has_disjoint_maximal_ideals(&self) -> bool {
        let mut seen = Bits::new(self.size());
        for x in self.maximal().iter() {
            if !seen.is_disjoint(&self.down[x]) {
                return false;
            }
            seen.union_with(&self.down[x]);
        }
        true
    }

    pub fn classify(&self) -> Classification {
        Classification {
            is_chain: self.is_chain(),
            is_antichain: self.is_antichain(),
            is_hierarchical: self.is_hierarchical(),
            has_disjoint_maximal_ideals: self.has_disjoint_maximal_ideals(),
        }
    }

    /// Keeps only the relations ending in a maximal element. The result has
    /// the same radius matrix and every element is maximal or minimal.
    pub fn standard_form(&self) -> Poset {
        let n = self.size();
        let max = self.maximal();
        let down: Vec<Bits> = (0..n)
            .map(|j| {
                if max.contains(j) {
                    self.down[j].clone()
                } else {
                    Bits::from_indices(n, [j])
                }
            })
            .collect();
        let mut up = vec![Bits::new(n); n];
        for (j, d) in down.iter().enumerate() {
            for i in d.iter() {
                up[i].insert(j);
            }
        }
        Poset { down, up }
    }

    /// The poset induced on `⟨X⟩`, relabelled `0..|⟨X⟩|` in ascending
    /// original order. Also returns the map from new to original index.
    pub fn induced_ideal_subposet(&self, x: &ElementSet) -> Result<(Poset, Vec<usize>), PosetError> {
        if x.is_empty() {
            return Err(PosetError::EmptyIdeal);
        }
        let keep = self.ideal(x).indices();
        let m = keep.len();
        let up = keep
            .iter()
            .map(|&a| Bits::from_indices(m, (0..m).filter(|&jb| self.leq(a, keep[jb]))))
            .collect();
        Ok((Self::from_up_sets(up), keep))
    }
}
