//! Branch-and-bound over number-matrices with the PLDM column choice.

use alloc::vec::Vec;
use core::cmp::Reverse;

use super::matrix::{NumberMatrix, Op};
use super::{radius_from_discordancy, AlgebraError, PartitionOutcome};
use crate::partition::min_discrepancy_capped;
use crate::poset::ElementSet;
use crate::search::Limits;

/// Node cap for the exact `Δ*` inside the lower bound.
const BOUND_CKK_NODES: u64 = 4096;

/// Picks the pair of columns to combine next.
pub trait ColumnChooser {
    /// `m` has at least two columns; the result must be two distinct
    /// valid indices.
    fn choose(&mut self, m: &NumberMatrix) -> (usize, usize);
}

/// The poset largest differencing choice, see [`NumberMatrix::pldm_select`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PldmChooser;

impl ColumnChooser for PldmChooser {
    fn choose(&mut self, m: &NumberMatrix) -> (usize, usize) {
        m.pldm_select().expect("at least two columns")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Absorb `i`-rows into the counter after every operation.
    pub compact: bool,
    /// Discard nodes whose lower bound cannot beat the incumbent.
    pub prune_bound: bool,
    /// Stop once the incumbent reaches the parity floor `n mod 2`.
    pub floor_exit: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            compact: true,
            prune_bound: true,
            floor_exit: true,
        }
    }
}

impl SearchOptions {
    /// Plain exhaustive tree walk.
    pub const fn exhaustive() -> Self {
        SearchOptions {
            compact: true,
            prune_bound: false,
            floor_exit: false,
        }
    }
}

/// One visited node, reported before it is expanded.
#[derive(Debug)]
pub struct TraceEvent<'m> {
    pub depth: usize,
    /// The operation that produced this node; `None` at the root.
    pub op: Option<Op>,
    pub node: &'m NumberMatrix,
    pub pruned: bool,
    /// Discordancy of a terminal node.
    pub terminal: Option<usize>,
}

/// A lower bound on the discordancy of every terminal below `m`.
///
/// Every active row is assigned to one column that is nonzero there,
/// columns claiming rows in order of decreasing `|Re S|`. Rows holding an
/// `i` stay `i`, and dropping the other entries of a row can only lower
/// the final discordancy, so the result is `α + #i-rows + Δ*` of the
/// claimed signed sums.
pub fn discordancy_lower_bound(m: &NumberMatrix) -> usize {
    let cols = m.columns();
    let imag = m.imag_rows();
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&j| (Reverse(cols[j].entry_sum().0.unsigned_abs()), j));
    let mut claimed = imag.clone();
    let mut sums = Vec::with_capacity(cols.len());
    for j in order {
        let c = &cols[j];
        let mut plus = c.plus_plane().difference(c.minus_plane());
        let mut minus = c.minus_plane().difference(c.plus_plane());
        plus.difference_with(&claimed);
        minus.difference_with(&claimed);
        let s = plus.count() as i64 - minus.count() as i64;
        sums.push(s.unsigned_abs());
        claimed.union_with(&c.support());
    }
    m.alpha() + imag.count() + delta_lower_bound(&sums)
}

fn delta_lower_bound(values: &[u64]) -> usize {
    min_discrepancy_capped(values, BOUND_CKK_NODES).unwrap_or_else(|| {
        let total: u64 = values.iter().sum();
        let largest = values.iter().copied().max().unwrap_or(0);
        let dominant = (2 * largest).saturating_sub(total);
        dominant.max(total & 1)
    }) as usize
}

/// Configurable search for `Λ*` of a number-matrix.
pub struct DiscordancySearch<'a> {
    options: SearchOptions,
    limits: Limits<'a>,
    chooser: Option<&'a mut dyn ColumnChooser>,
    on_improve: Option<&'a mut dyn FnMut(&PartitionOutcome)>,
    trace: Option<&'a mut dyn FnMut(&TraceEvent<'_>)>,
}

impl Default for DiscordancySearch<'_> {
    fn default() -> Self {
        Self::new()
    }
}

impl<'a> DiscordancySearch<'a> {
    pub fn new() -> Self {
        DiscordancySearch {
            options: SearchOptions::default(),
            limits: Limits::unlimited(),
            chooser: None,
            on_improve: None,
            trace: None,
        }
    }

    pub fn options(mut self, options: SearchOptions) -> Self {
        self.options = options;
        self
    }

    pub fn limits(mut self, limits: Limits<'a>) -> Self {
        self.limits = limits;
        self
    }

    pub fn chooser(mut self, chooser: &'a mut dyn ColumnChooser) -> Self {
        self.chooser = Some(chooser);
        self
    }

    pub fn on_improve(mut self, f: &'a mut dyn FnMut(&PartitionOutcome)) -> Self {
        self.on_improve = Some(f);
        self
    }

    pub fn trace(mut self, f: &'a mut dyn FnMut(&TraceEvent<'_>)) -> Self {
        self.trace = Some(f);
        self
    }

    /// Runs the search. The first dive always completes, so an incumbent
    /// exists even under a tiny budget; `optimal` is false only if the
    /// limits cut the search short.
    pub fn run(self, m: &NumberMatrix) -> PartitionOutcome {
        let rows = m.alpha() + m.nonnull_rows().count();
        let mut pldm = PldmChooser;
        let mut state = State {
            options: self.options,
            limits: self.limits,
            chooser: self.chooser.unwrap_or(&mut pldm),
            on_improve: self.on_improve,
            trace: self.trace,
            rows,
            floor: rows % 2,
            nodes: 0,
            pruned: 0,
            best: None,
            stopped: false,
        };
        let root = if self.options.compact {
            m.clone().compacted()
        } else {
            m.clone()
        };
        state.dfs(root, 0, None);
        let optimal = !state.stopped || state.best.as_ref().is_some_and(|b| b.0 <= state.floor);
        let (discordancy, primary, secondary) = state.best.take().expect("first dive completes");
        PartitionOutcome {
            primary,
            secondary,
            discordancy,
            radius: radius_from_discordancy(rows, discordancy),
            optimal,
            nodes: state.nodes,
            pruned: state.pruned,
        }
    }
}

struct State<'a, 'c> {
    options: SearchOptions,
    limits: Limits<'a>,
    chooser: &'c mut dyn ColumnChooser,
    on_improve: Option<&'a mut dyn FnMut(&PartitionOutcome)>,
    trace: Option<&'a mut dyn FnMut(&TraceEvent<'_>)>,
    rows: usize,
    floor: usize,
    nodes: u64,
    pruned: u64,
    best: Option<(usize, ElementSet, ElementSet)>,
    stopped: bool,
}

impl State<'_, '_> {
    fn emit(&mut self, depth: usize, op: Option<Op>, node: &NumberMatrix, pruned: bool, terminal: Option<usize>) {
        if let Some(t) = self.trace.as_deref_mut() {
            t(&TraceEvent {
                depth,
                op,
                node,
                pruned,
                terminal,
            });
        }
    }

    /// Every terminal discordancy has the parity of the row count.
    fn round_to_parity(&self, lb: usize) -> usize {
        lb + (lb + self.rows) % 2
    }

    fn done(&self) -> bool {
        self.stopped
            || (self.options.floor_exit
                && self.best.as_ref().is_some_and(|b| b.0 <= self.floor))
    }

    fn offer(&mut self, node: &NumberMatrix) -> usize {
        let col = &node.columns()[0];
        let value = node.alpha() + col.discordancy();
        if self.best.as_ref().is_none_or(|b| value < b.0) {
            let labels = node.label_count();
            let primary = ElementSet::from_indices(labels, col.primary().iter());
            let secondary = ElementSet::from_indices(labels, col.secondary().iter());
            self.best = Some((value, primary, secondary));
            if let Some(cb) = self.on_improve.as_deref_mut() {
                let (d, p, s) = self.best.clone().unwrap();
                cb(&PartitionOutcome {
                    primary: p,
                    secondary: s,
                    discordancy: d,
                    radius: radius_from_discordancy(self.rows, d),
                    optimal: false,
                    nodes: self.nodes,
                    pruned: self.pruned,
                });
            }
        }
        value
    }

    fn dfs(&mut self, node: NumberMatrix, depth: usize, op: Option<Op>) {
        self.nodes += 1;
        if node.width() == 1 {
            let value = self.offer(&node);
            self.emit(depth, op, &node, false, Some(value));
            return;
        }
        if let Some((best, _, _)) = &self.best {
            let best = *best;
            if self.limits.exhausted(self.nodes) {
                self.stopped = true;
                return;
            }
            if self.options.prune_bound && self.round_to_parity(discordancy_lower_bound(&node)) >= best {
                self.pruned += 1;
                self.emit(depth, op, &node, true, None);
                return;
            }
        }
        self.emit(depth, op, &node, false, None);
        let (j, k) = self.chooser.choose(&node);
        for op in [Op::Diff, Op::Assoc] {
            let mut child = node.combine(j, k, op).expect("chooser returned valid columns");
            if self.options.compact {
                child.compact();
            }
            self.dfs(child, depth + 1, Some(op));
            if self.done() {
                return;
            }
        }
    }
}

/// `Λ*` of `m` with the default search.
pub fn min_discordancy(m: &NumberMatrix) -> PartitionOutcome {
    DiscordancySearch::new().run(m)
}

/// `R(M) = n/2 + Λ*(M)/2 − 1`, `n` counting the non-null rows and `α`.
pub fn packing_radius_matrix(m: &NumberMatrix) -> Result<PartitionOutcome, AlgebraError> {
    if m.alpha() + m.nonnull_rows().count() == 0 {
        return Err(AlgebraError::NullMatrix);
    }
    Ok(min_discordancy(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::poset_partition::{brute_min_discordancy, discordancy_of, Entry};
    use alloc::vec;

    fn overlapping_seven() -> Poset {
        let rows: [[u8; 7]; 7] = [
            [1, 0, 0, 1, 1, 0, 0],
            [0, 1, 0, 0, 1, 1, 1],
            [0, 0, 1, 1, 1, 0, 0],
            [0, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 0, 1],
        ];
        let rows: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|&b| b == 1).collect()).collect();
        Poset::from_adjacency(&rows).unwrap()
    }

    #[test]
    fn overlapping_seven_optimum() {
        let p = overlapping_seven();
        let m = NumberMatrix::radius_matrix(&p);
        assert_eq!(m.pldm_select().unwrap().0, 1);
        let out = packing_radius_matrix(&m).unwrap();
        assert_eq!((out.discordancy, out.radius), (3, 4));
        assert!(out.optimal);
        assert_eq!(discordancy_of(&p, &out.primary, &out.secondary), 3);
        assert_eq!(brute_min_discordancy(&p).unwrap().discordancy, 3);
    }

    #[test]
    fn single_column_is_its_weight() {
        let m = NumberMatrix::from_rows(&[[Entry::Plus]; 5]).unwrap();
        let out = packing_radius_matrix(&m).unwrap();
        assert_eq!((out.discordancy, out.radius, out.nodes), (5, 4, 1));
        assert!(out.secondary.is_empty());
    }

    #[test]
    fn null_matrix_is_rejected() {
        let m = NumberMatrix::from_rows(&[[Entry::Zero, Entry::Zero]]).unwrap();
        assert_eq!(packing_radius_matrix(&m), Err(AlgebraError::NullMatrix));
    }

    #[test]
    fn bound_never_exceeds_optimum_at_root() {
        let p = Poset::from_covers(6, &[(1, 4), (1, 5), (2, 5), (3, 6)]).unwrap();
        let m = NumberMatrix::radius_matrix(&p);
        assert!(discordancy_lower_bound(&m) <= min_discordancy(&m).discordancy);
    }

    #[test]
    fn bound_handles_overlapping_columns() {
        // x and y share element a; z is a disjoint chain of three. The
        // partition {x, y} | {z} is balanced with no overlap across blocks.
        let p = Poset::from_covers(6, &[(1, 2), (1, 3), (4, 5), (5, 6)]).unwrap();
        let m = NumberMatrix::radius_matrix(&p);
        assert_eq!(min_discordancy(&m).discordancy, 0);
        assert_eq!(discordancy_lower_bound(&m), 0);
    }

    #[test]
    fn tiny_budget_still_returns_an_incumbent() {
        // The first dive is the KK partition with discrepancy 2; the optimum is 0.
        let p = Poset::disjoint_chains(&[8, 7, 6, 5, 4]);
        let m = NumberMatrix::radius_matrix(&p);
        let out = DiscordancySearch::new().limits(Limits::nodes(3)).run(&m);
        assert!(!out.optimal);
        assert_eq!(out.discordancy, 2);
        assert_eq!(min_discordancy(&m).discordancy, 0);
    }

    #[test]
    fn trace_reports_every_node() {
        let m = NumberMatrix::radius_matrix(&overlapping_seven());
        let mut lines = vec![];
        let mut t = |e: &TraceEvent<'_>| lines.push((e.depth, e.node.dump_line(e.op)));
        let out = DiscordancySearch::new().trace(&mut t).run(&m);
        assert_eq!(lines.len() as u64, out.nodes);
        assert_eq!(lines[0].0, 0);
    }
}
