//! Two-way number partitioning: discrepancy, the Karmarkar–Karp largest
//! differencing heuristic, the complete anytime CKK search and an
//! exhaustive oracle.

use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use crate::search::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    EmptyList,
    /// Values must be positive; `index` is 0-based.
    ZeroValue { index: usize },
    IndexOutOfRange { index: usize, len: usize },
    TooLarge { len: usize, max: usize },
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::EmptyList => write!(f, "list to partition is empty"),
            PartitionError::ZeroValue { index } => {
                write!(f, "value at position {} is not positive", index + 1)
            }
            PartitionError::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for list of length {len}")
            }
            PartitionError::TooLarge { len, max } => {
                write!(f, "list of length {len} exceeds the exhaustive limit {max}")
            }
        }
    }
}

impl core::error::Error for PartitionError {}

/// A two-way partition of list positions (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionResult {
    pub block1: Vec<usize>,
    pub block2: Vec<usize>,
    pub discrepancy: u64,
    pub optimal: bool,
    pub nodes: u64,
}

/// Result of the KK heuristic along with the sequence of instances it
/// visited (each sorted in decreasing order, the input first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KkOutcome {
    pub result: PartitionResult,
    pub trace: Vec<Vec<u64>>,
}

pub const BRUTE_MAX_LEN: usize = 24;

fn validate(values: &[u64]) -> Result<(), PartitionError> {
    if values.is_empty() {
        return Err(PartitionError::EmptyList);
    }
    if let Some(index) = values.iter().position(|&v| v == 0) {
        return Err(PartitionError::ZeroValue { index });
    }
    Ok(())
}

/// `|Σ block1 − Σ rest|`.
pub fn discrepancy(values: &[u64], block1: &[usize]) -> Result<u64, PartitionError> {
    let mut in_one = alloc::vec![false; values.len()];
    for &i in block1 {
        if i >= values.len() {
            return Err(PartitionError::IndexOutOfRange {
                index: i,
                len: values.len(),
            });
        }
        in_one[i] = true;
    }
    let (mut a, mut b) = (0u64, 0u64);
    for (v, one) in values.iter().zip(in_one) {
        if one {
            a += v;
        } else {
            b += v;
        }
    }
    Ok(a.abs_diff(b))
}

/// A value in a differencing instance together with the commitments it
/// stands for: `value = Σ side_a − Σ side_b`.
#[derive(Debug, Clone)]
struct Item {
    value: u64,
    /// Smallest original index absorbed; ties between equal values go to
    /// the lower key first.
    key: usize,
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Item {
    fn leaf(index: usize, value: u64) -> Self {
        Item {
            value,
            key: index,
            side_a: alloc::vec![index],
            side_b: Vec::new(),
        }
    }

    /// Commit `x` and `y` to different blocks.
    fn difference(x: &Item, y: &Item) -> Item {
        let (hi, lo) = if x.value >= y.value { (x, y) } else { (y, x) };
        let mut side_a = hi.side_a.clone();
        side_a.extend_from_slice(&lo.side_b);
        let mut side_b = hi.side_b.clone();
        side_b.extend_from_slice(&lo.side_a);
        Item {
            value: hi.value - lo.value,
            key: x.key.min(y.key),
            side_a,
            side_b,
        }
    }

    /// Commit `x` and `y` to the same block.
    fn sum(x: &Item, y: &Item) -> Item {
        let mut side_a = x.side_a.clone();
        side_a.extend_from_slice(&y.side_a);
        let mut side_b = x.side_b.clone();
        side_b.extend_from_slice(&y.side_b);
        Item {
            value: x.value + y.value,
            key: x.key.min(y.key),
            side_a,
            side_b,
        }
    }

    fn into_result(self, nodes: u64, optimal: bool) -> PartitionResult {
        let mut block1 = self.side_a;
        let mut block2 = self.side_b;
        block1.sort_unstable();
        block2.sort_unstable();
        // block1 holds the first position
        if block2.first() == Some(&0) {
            core::mem::swap(&mut block1, &mut block2);
        }
        PartitionResult {
            block1,
            block2,
            discrepancy: self.value,
            optimal,
            nodes,
        }
    }
}

fn sort_key(it: &Item) -> (Reverse<u64>, usize) {
    (Reverse(it.value), it.key)
}

fn insert_sorted(list: &mut Vec<Item>, item: Item) {
    let k = sort_key(&item);
    let at = list.partition_point(|x| sort_key(x) < k);
    list.insert(at, item);
}

fn leaves(values: &[u64]) -> Vec<Item> {
    let mut items: Vec<Item> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| Item::leaf(i, v))
        .collect();
    items.sort_by_key(sort_key);
    items
}

/// Runs LDM to completion on a sorted instance.
fn ldm(mut items: Vec<Item>, mut trace: Option<&mut Vec<Vec<u64>>>) -> Item {
    if let Some(t) = trace.as_deref_mut() {
        t.push(items.iter().map(|i| i.value).collect());
    }
    while items.len() > 1 {
        let x = items.remove(0);
        let y = items.remove(0);
        insert_sorted(&mut items, Item::difference(&x, &y));
        if let Some(t) = trace.as_deref_mut() {
            t.push(items.iter().map(|i| i.value).collect());
        }
    }
    items.pop().expect("nonempty instance")
}

/// The largest element against everything else.
fn largest_vs_rest(items: &[Item]) -> Item {
    let rest = items[1..]
        .iter()
        .skip(1)
        .fold(items[1].clone(), |acc, it| Item::sum(&acc, it));
    Item::difference(&items[0], &rest)
}

fn parity_floor(values: &[u64]) -> u64 {
    values.iter().fold(0u64, |acc, v| acc ^ (v & 1))
}

/// Karmarkar–Karp with the largest differencing criterion.
pub fn kk_ldm(values: &[u64]) -> Result<KkOutcome, PartitionError> {
    validate(values)?;
    let mut trace = Vec::new();
    let item = ldm(leaves(values), Some(&mut trace));
    // KK is exact up to four elements, and a perfect partition is optimal.
    let optimal = values.len() <= 4 || item.value == parity_floor(values);
    Ok(KkOutcome {
        result: item.into_result(0, optimal),
        trace,
    })
}

/// Switches for the complete search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CkkOptions {
    /// Apply the dominant-element and 3/4/5-element rules.
    pub prune_rules: bool,
    /// Stop as soon as a perfect partition is found.
    pub perfect_exit: bool,
}

impl Default for CkkOptions {
    fn default() -> Self {
        CkkOptions {
            prune_rules: true,
            perfect_exit: true,
        }
    }
}

struct Ckk<'a, 'b> {
    opts: CkkOptions,
    limits: Limits<'a>,
    on_improve: Option<&'b mut dyn FnMut(&PartitionResult)>,
    floor: u64,
    nodes: u64,
    best: Item,
    stopped: bool,
}

impl Ckk<'_, '_> {
    fn offer(&mut self, item: Item) {
        if item.value < self.best.value {
            self.best = item;
            if let Some(cb) = self.on_improve.as_deref_mut() {
                let snapshot = self.best.clone().into_result(self.nodes, false);
                cb(&snapshot);
            }
        }
    }

    fn done(&self) -> bool {
        self.stopped || (self.opts.perfect_exit && self.best.value <= self.floor)
    }

    fn dfs(&mut self, items: Vec<Item>) {
        self.nodes += 1;
        if self.limits.exhausted(self.nodes) {
            self.stopped = true;
            return;
        }
        if items.len() == 1 {
            self.offer(items.into_iter().next().unwrap());
            return;
        }
        if self.opts.prune_rules {
            let total: u64 = items.iter().map(|i| i.value).sum();
            let largest = items[0].value;
            if largest >= total - largest || items.len() == 3 {
                self.offer(largest_vs_rest(&items));
                return;
            }
            match items.len() {
                4 => {
                    self.offer(ldm(items, None));
                    return;
                }
                5 => {
                    let together = Item::sum(&items[0], &items[1]);
                    let mut pair = alloc::vec![together];
                    pair.extend(items[2..].iter().cloned());
                    let alt = largest_vs_rest(&pair);
                    let kk = ldm(items, None);
                    self.offer(if alt.value < kk.value { alt } else { kk });
                    return;
                }
                _ => {}
            }
        }
        let mut left = items[2..].to_vec();
        insert_sorted(&mut left, Item::difference(&items[0], &items[1]));
        self.dfs(left);
        if self.done() {
            return;
        }
        let mut right = items[2..].to_vec();
        insert_sorted(&mut right, Item::sum(&items[0], &items[1]));
        self.dfs(right);
    }
}

/// Complete Karmarkar–Karp: depth-first over difference (left) and sum
/// (right) branches in LDM order. Returns the optimum unless the limits
/// stop the search first, in which case the best partition found so far
/// is returned with `optimal = false`.
pub fn ckk(
    values: &[u64],
    opts: CkkOptions,
    limits: &Limits<'_>,
    on_improve: Option<&mut dyn FnMut(&PartitionResult)>,
) -> Result<PartitionResult, PartitionError> {
    validate(values)?;
    let items = leaves(values);
    let mut search = Ckk {
        opts,
        limits: *limits,
        on_improve,
        floor: parity_floor(values),
        nodes: 0,
        // KK is the first dive of the tree; seed the incumbent with it.
        best: ldm(items.clone(), None),
        stopped: false,
    };
    if let Some(cb) = search.on_improve.as_deref_mut() {
        cb(&search.best.clone().into_result(0, false));
    }
    if !(opts.perfect_exit && search.best.value <= search.floor) {
        search.dfs(items);
    }
    let optimal = !search.stopped || search.best.value <= search.floor;
    let nodes = search.nodes;
    Ok(search.best.into_result(nodes, optimal))
}

/// Exact optimum of a possibly zero-containing list, or `None` if the
/// node cap is hit first. Used for lower bounds.
pub(crate) fn min_discrepancy_capped(values: &[u64], max_nodes: u64) -> Option<u64> {
    let nonzero: Vec<u64> = values.iter().copied().filter(|&v| v > 0).collect();
    if nonzero.is_empty() {
        return Some(0);
    }
    let r = ckk(&nonzero, CkkOptions::default(), &Limits::nodes(max_nodes), None).ok()?;
    r.optimal.then_some(r.discrepancy)
}

/// Enumerates all `2^(len−1)` partitions (the first element pinned to
/// block 1) in Gray-code order.
pub fn brute_partition(values: &[u64]) -> Result<PartitionResult, PartitionError> {
    validate(values)?;
    let n = values.len();
    if n > BRUTE_MAX_LEN {
        return Err(PartitionError::TooLarge {
            len: n,
            max: BRUTE_MAX_LEN,
        });
    }
    let total: u64 = values.iter().sum();
    // block1 = {0} ∪ { i+1 : bit i of mask }
    let mut sum1 = values[0];
    let mut mask: u32 = 0;
    let mut best = (total.abs_diff(2 * sum1), 0u32);
    let count: u64 = 1 << (n - 1);
    for step in 1..count {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if mask >> bit & 1 == 1 {
            sum1 += values[bit + 1];
        } else {
            sum1 -= values[bit + 1];
        }
        let d = (2 * sum1).abs_diff(total);
        if d < best.0 {
            best = (d, mask);
        }
    }
    let (d, mask) = best;
    let (block1, block2): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&i| i == 0 || mask >> (i - 1) & 1 == 1);
    Ok(PartitionResult {
        block1,
        block2,
        discrepancy: d,
        optimal: true,
        nodes: count,
    })
}
