//! Packing radius of posets, vectors and linear codes.

use alloc::vec::Vec;
use core::fmt;

use crate::codes::{CodeError, FieldVector, LinearCode, DEFAULT_ENUMERATION_CAP};
use crate::partition::{ckk, CkkOptions};
use crate::poset::{ElementSet, Poset};
use crate::poset_partition::{
    brute_min_discordancy, radius_from_discordancy, AlgebraError, DiscordancySearch,
    NumberMatrix, PartitionOutcome,
};
use crate::search::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Closed forms where the poset allows them, differencing otherwise.
    #[default]
    Auto,
    Brute,
    Differencing,
}

/// How a poset radius was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Chain,
    Antichain,
    Hierarchical,
    DisjointIdeals,
    Differencing,
    Brute,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Chain => "chain",
            Method::Antichain => "antichain",
            Method::Hierarchical => "hierarchical",
            Method::DisjointIdeals => "disjoint-ideals",
            Method::Differencing => "differencing",
            Method::Brute => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetRadius {
    pub outcome: PartitionOutcome,
    pub method: Method,
}

impl PosetRadius {
    pub fn radius(&self) -> usize {
        self.outcome.radius
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadiusError {
    /// The packing radius of the zero vector is undefined.
    ZeroVector,
    Code(CodeError),
    Algebra(AlgebraError),
}

impl fmt::Display for RadiusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadiusError::ZeroVector => write!(f, "packing radius undefined for 0"),
            RadiusError::Code(e) => e.fmt(f),
            RadiusError::Algebra(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for RadiusError {}

impl From<CodeError> for RadiusError {
    fn from(e: CodeError) -> Self {
        RadiusError::Code(e)
    }
}

impl From<AlgebraError> for RadiusError {
    fn from(e: AlgebraError) -> Self {
        RadiusError::Algebra(e)
    }
}

fn closed_form(
    p: &Poset,
    method: Method,
    primary: ElementSet,
    secondary: ElementSet,
    nodes: u64,
) -> PosetRadius {
    let ia = p.ideal(&primary);
    let ib = p.ideal(&secondary);
    let discordancy = ia.count().abs_diff(ib.count()) + ia.intersection_count(&ib);
    PosetRadius {
        outcome: PartitionOutcome {
            primary,
            secondary,
            discordancy,
            radius: radius_from_discordancy(p.size(), discordancy),
            optimal: true,
            nodes,
            pruned: 0,
        },
        method,
    }
}

/// Splits the maximal elements into their first `⌈m/2⌉` and the rest.
fn halves(p: &Poset) -> (ElementSet, ElementSet) {
    let n = p.size();
    let max = p.maximal().indices();
    let cut = max.len().div_ceil(2);
    (
        ElementSet::from_indices(n, max[..cut].iter().copied()),
        ElementSet::from_indices(n, max[cut..].iter().copied()),
    )
}

/// `R = n − 1` for a chain of `n`.
pub fn chain_radius(n: usize) -> usize {
    n.saturating_sub(1)
}

/// `R = n/2 + [n odd]/2 − 1` for an anti-chain of `n`.
pub fn antichain_radius(n: usize) -> usize {
    (n + n % 2) / 2 - 1
}

/// `R = n + [m odd]/2 − m/2 − 1` for a hierarchical poset of `n` elements
/// with `m` maximal elements.
pub fn hierarchical_radius(n: usize, m: usize) -> usize {
    (2 * n + m % 2 - m) / 2 - 1
}

fn disjoint_ideals(p: &Poset, limits: &Limits<'_>) -> PosetRadius {
    let n = p.size();
    let max = p.maximal().indices();
    let sizes: Vec<u64> = max.iter().map(|&x| p.down_set(x).count() as u64).collect();
    let r = ckk(&sizes, CkkOptions::default(), limits, None).expect("ideal sizes are positive");
    let pick = |block: &[usize]| ElementSet::from_indices(n, block.iter().map(|&i| max[i]));
    let mut out = closed_form(
        p,
        Method::DisjointIdeals,
        pick(&r.block1),
        pick(&r.block2),
        r.nodes,
    );
    debug_assert_eq!(out.outcome.discordancy as u64, r.discrepancy);
    out.outcome.optimal = r.optimal;
    out
}

/// `R(P)` and an optimum partition of its maximal elements.
pub fn radius_of_poset(p: &Poset, strategy: Strategy) -> Result<PosetRadius, AlgebraError> {
    radius_of_poset_with(p, strategy, DiscordancySearch::new(), &Limits::unlimited())
}

/// [`radius_of_poset`] with a configured differencing search; `limits`
/// also bounds the classic search of the disjoint-ideals case.
pub fn radius_of_poset_with(
    p: &Poset,
    strategy: Strategy,
    search: DiscordancySearch<'_>,
    limits: &Limits<'_>,
) -> Result<PosetRadius, AlgebraError> {
    let n = p.size();
    match strategy {
        Strategy::Brute => {
            return Ok(PosetRadius {
                outcome: brute_min_discordancy(p)?,
                method: Method::Brute,
            })
        }
        Strategy::Differencing => {}
        Strategy::Auto => {
            if p.is_chain() {
                let top = p.maximal();
                return Ok(closed_form(p, Method::Chain, top, ElementSet::empty(n), 0));
            }
            if p.is_antichain() {
                let (a, b) = halves(p);
                return Ok(closed_form(p, Method::Antichain, a, b, 0));
            }
            if p.is_hierarchical() {
                let (a, b) = halves(p);
                return Ok(closed_form(p, Method::Hierarchical, a, b, 0));
            }
            if p.has_disjoint_maximal_ideals() {
                return Ok(disjoint_ideals(p, limits));
            }
        }
    }
    let m = NumberMatrix::radius_matrix(p);
    Ok(PosetRadius {
        outcome: search.run(&m),
        method: Method::Differencing,
    })
}

fn check_length(p: &Poset, v: &FieldVector) -> Result<(), RadiusError> {
    if v.len() != p.size() {
        return Err(CodeError::LengthMismatch {
            expected: p.size(),
            found: v.len(),
        }
        .into());
    }
    Ok(())
}

/// `R_{d_P}(v)`: the radius of the poset induced on `⟨supp v⟩`, with the
/// partition reported in the elements of `p`.
pub fn radius_of_vector(
    p: &Poset,
    v: &FieldVector,
    strategy: Strategy,
) -> Result<PosetRadius, RadiusError> {
    radius_of_vector_with(p, v, strategy, DiscordancySearch::new(), &Limits::unlimited())
}

pub fn radius_of_vector_with(
    p: &Poset,
    v: &FieldVector,
    strategy: Strategy,
    search: DiscordancySearch<'_>,
    limits: &Limits<'_>,
) -> Result<PosetRadius, RadiusError> {
    check_length(p, v)?;
    if v.is_zero() {
        return Err(RadiusError::ZeroVector);
    }
    let (sub, map) = p
        .induced_ideal_subposet(&v.support())
        .expect("nonzero vector has a nonempty support");
    let mut r = radius_of_poset_with(&sub, strategy, search, limits)?;
    let lift = |s: &ElementSet| ElementSet::from_indices(p.size(), s.iter().map(|i| map[i]));
    r.outcome.primary = lift(&r.outcome.primary);
    r.outcome.secondary = lift(&r.outcome.secondary);
    Ok(r)
}

/// Pruning switches for [`radius_of_code`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeRadiusOptions {
    /// Evaluate one codeword per support.
    pub support_dedup: bool,
    /// Evaluate one codeword per support ideal.
    pub ideal_dedup: bool,
    /// Skip a codeword whose ideal contains an evaluated ideal.
    pub ideal_containment: bool,
    /// Skip a codeword whose ideal is too large to beat the incumbent.
    pub size_bound: bool,
    /// Use the closed form for hierarchical posets.
    pub hierarchical_shortcut: bool,
    pub strategy: Strategy,
    pub cap: u64,
}

impl Default for CodeRadiusOptions {
    fn default() -> Self {
        CodeRadiusOptions {
            support_dedup: true,
            ideal_dedup: true,
            ideal_containment: true,
            size_bound: true,
            hierarchical_shortcut: true,
            strategy: Strategy::Auto,
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl CodeRadiusOptions {
    /// Every nonzero codeword evaluated.
    pub fn no_pruning() -> Self {
        CodeRadiusOptions {
            support_dedup: false,
            ideal_dedup: false,
            ideal_containment: false,
            size_bound: false,
            hierarchical_shortcut: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkipReason {
    SameSupport,
    SameIdeal,
    ContainsEvaluatedIdeal,
    SizeBound,
    Hierarchical,
}

impl SkipReason {
    pub fn name(self) -> &'static str {
        match self {
            SkipReason::SameSupport => "same-support",
            SkipReason::SameIdeal => "same-ideal",
            SkipReason::ContainsEvaluatedIdeal => "ideal-containment",
            SkipReason::SizeBound => "size-bound",
            SkipReason::Hierarchical => "hierarchical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Evaluated { radius: usize, method: Method },
    Skipped(SkipReason),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordStat {
    pub codeword: FieldVector,
    pub support: ElementSet,
    pub ideal_size: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PruneCounts {
    pub same_support: usize,
    pub same_ideal: usize,
    pub ideal_containment: usize,
    pub size_bound: usize,
    pub hierarchical: usize,
}

impl PruneCounts {
    fn bump(&mut self, reason: SkipReason) {
        match reason {
            SkipReason::SameSupport => self.same_support += 1,
            SkipReason::SameIdeal => self.same_ideal += 1,
            SkipReason::ContainsEvaluatedIdeal => self.ideal_containment += 1,
            SkipReason::SizeBound => self.size_bound += 1,
            SkipReason::Hierarchical => self.hierarchical += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.same_support + self.same_ideal + self.ideal_containment + self.size_bound + self.hierarchical
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeRadiusResult {
    pub radius: usize,
    pub packing_vector: FieldVector,
    pub minimum_distance: usize,
    /// One entry per nonzero codeword, in evaluation order.
    pub stats: Vec<CodewordStat>,
    pub pruned: PruneCounts,
}

struct Candidate {
    word: FieldVector,
    support: ElementSet,
    ideal: ElementSet,
}

struct Walk<'o> {
    opts: &'o CodeRadiusOptions,
    supports: Vec<ElementSet>,
    evaluated: Vec<ElementSet>,
    best: Option<(usize, usize)>,
}

impl Walk<'_> {
    /// The reason to skip `c` given everything decided so far. Each rule
    /// only fires more often as `evaluated` grows and `best` falls.
    fn skip(&self, c: &Candidate) -> Option<SkipReason> {
        if self.opts.support_dedup && self.supports.contains(&c.support) {
            return Some(SkipReason::SameSupport);
        }
        if self.opts.ideal_dedup && self.evaluated.contains(&c.ideal) {
            return Some(SkipReason::SameIdeal);
        }
        if self.opts.ideal_containment && self.evaluated.iter().any(|e| e.is_subset(&c.ideal)) {
            return Some(SkipReason::ContainsEvaluatedIdeal);
        }
        if self.opts.size_bound {
            // Any partition of the maximal elements of an ideal of size m
            // has a block of weight at least ⌈m/2⌉.
            if let Some((best, _)) = self.best {
                if best < c.ideal.count().div_ceil(2) {
                    return Some(SkipReason::SizeBound);
                }
            }
        }
        None
    }
}

/// `R_{d_P}(C)`, the minimum packing radius over the nonzero codewords.
pub fn radius_of_code(
    p: &Poset,
    code: &LinearCode,
    opts: &CodeRadiusOptions,
) -> Result<CodeRadiusResult, RadiusError> {
    radius_of_code_batched(p, code, opts, 1, &mut |subs| {
        subs.iter()
            .map(|s| radius_of_poset(s, opts.strategy).expect("within the exhaustive limit"))
            .collect()
    })
}

/// [`radius_of_code`] with the per-codeword evaluation handed out in
/// batches of up to `batch` induced posets, e.g. to run them in parallel.
/// `eval` must return one result per poset, in order. The outcome and the
/// statistics do not depend on `batch`.
pub fn radius_of_code_batched(
    p: &Poset,
    code: &LinearCode,
    opts: &CodeRadiusOptions,
    batch: usize,
    eval: &mut dyn FnMut(&[Poset]) -> Vec<PosetRadius>,
) -> Result<CodeRadiusResult, RadiusError> {
    if code.dimension() == 0 {
        return Err(CodeError::ZeroDimensional.into());
    }
    if code.length() != p.size() {
        return Err(CodeError::LengthMismatch {
            expected: p.size(),
            found: code.length(),
        }
        .into());
    }
    let mut cands: Vec<Candidate> = code
        .codewords(opts.cap)?
        .skip(1)
        .map(|word| {
            let support = word.support();
            let ideal = p.ideal(&support);
            Candidate {
                word,
                support,
                ideal,
            }
        })
        .collect();
    cands.sort_by_key(|c| c.ideal.count());
    let minimum_distance = cands[0].ideal.count();

    let mut stats = Vec::with_capacity(cands.len());
    let mut pruned = PruneCounts::default();

    if opts.hierarchical_shortcut && p.is_hierarchical() {
        let m = p.maximal_elements(&cands[0].ideal).count();
        let radius = hierarchical_radius(minimum_distance, m);
        for (i, c) in cands.iter().enumerate() {
            let verdict = if i == 0 {
                Verdict::Evaluated {
                    radius,
                    method: Method::Hierarchical,
                }
            } else {
                pruned.bump(SkipReason::Hierarchical);
                Verdict::Skipped(SkipReason::Hierarchical)
            };
            stats.push(stat(c, verdict));
        }
        return Ok(CodeRadiusResult {
            radius,
            packing_vector: cands[0].word.clone(),
            minimum_distance,
            stats,
            pruned,
        });
    }

    let mut walk = Walk {
        opts,
        supports: Vec::new(),
        evaluated: Vec::new(),
        best: None,
    };
    let batch = batch.max(1);
    let mut start = 0;
    while start < cands.len() {
        // Speculatively pick the next candidates that survive against the
        // current state, then replay the window in order.
        let mut picked = Vec::new();
        let mut end = start;
        while end < cands.len() && picked.len() < batch {
            if walk.skip(&cands[end]).is_none() {
                picked.push(end);
            }
            end += 1;
        }
        let subs: Vec<Poset> = picked
            .iter()
            .map(|&i| {
                p.induced_ideal_subposet(&cands[i].support)
                    .expect("nonzero codeword")
                    .0
            })
            .collect();
        let results = if subs.is_empty() { Vec::new() } else { eval(&subs) };
        assert_eq!(results.len(), subs.len(), "one result per poset");
        for i in start..end {
            let c = &cands[i];
            let verdict = match walk.skip(c) {
                Some(reason) => {
                    pruned.bump(reason);
                    Verdict::Skipped(reason)
                }
                None => {
                    let slot = picked
                        .iter()
                        .position(|&j| j == i)
                        .expect("skip rules are monotone");
                    let r = &results[slot];
                    walk.evaluated.push(c.ideal.clone());
                    if walk.best.is_none_or(|(b, _)| r.radius() < b) {
                        walk.best = Some((r.radius(), i));
                    }
                    Verdict::Evaluated {
                        radius: r.radius(),
                        method: r.method,
                    }
                }
            };
            if !walk.supports.contains(&c.support) {
                walk.supports.push(c.support.clone());
            }
            stats.push(stat(c, verdict));
        }
        start = end;
    }
    let (radius, idx) = walk.best.expect("the first codeword is always evaluated");
    Ok(CodeRadiusResult {
        radius,
        packing_vector: cands[idx].word.clone(),
        minimum_distance,
        stats,
        pruned,
    })
}

fn stat(c: &Candidate, verdict: Verdict) -> CodewordStat {
    CodewordStat {
        codeword: c.word.clone(),
        support: c.support.clone(),
        ideal_size: c.ideal.count(),
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn closed_forms() {
        assert_eq!(chain_radius(3), 2);
        assert_eq!(antichain_radius(5), 2);
        assert_eq!(antichain_radius(4), 1);
        assert_eq!(antichain_radius(1), 0);
        assert_eq!(hierarchical_radius(9, 3), 7);
        assert_eq!(hierarchical_radius(4, 4), 1);
    }

    #[test]
    fn auto_dispatch() {
        let r = radius_of_poset(&Poset::chain(3), Strategy::Auto).unwrap();
        assert_eq!((r.radius(), r.method), (2, Method::Chain));
        let p = Poset::disjoint_chains(&[8, 7, 6, 5, 4]);
        let r = radius_of_poset(&p, Strategy::Auto).unwrap();
        assert_eq!((r.radius(), r.method), (14, Method::DisjointIdeals));
        let d = radius_of_poset(&p, Strategy::Differencing).unwrap();
        assert_eq!(d.radius(), 14);
        let h = radius_of_poset(&Poset::hierarchy(&[3, 3, 3]), Strategy::Auto).unwrap();
        assert_eq!((h.outcome.discordancy, h.radius(), h.method), (7, 7, Method::Hierarchical));
    }

    #[test]
    fn vector_radius_maps_labels_back() {
        let p = Poset::from_covers(4, &[(1, 2), (3, 4)]).unwrap();
        let v = FieldVector::from_digits(2, "0101").unwrap();
        let r = radius_of_vector(&p, &v, Strategy::Differencing).unwrap();
        assert_eq!(r.radius(), 1);
        let mut all = r.outcome.primary.labels();
        all.extend(r.outcome.secondary.labels());
        all.sort();
        assert_eq!(all, vec![2, 4]);
        let zero = FieldVector::zero(2, 4);
        assert_eq!(radius_of_vector(&p, &zero, Strategy::Auto), Err(RadiusError::ZeroVector));
    }

    #[test]
    fn code_radius_with_and_without_pruning() {
        let p = Poset::from_covers(5, &[(1, 3), (2, 3), (2, 4)]).unwrap();
        let c = LinearCode::new(2, 5, vec![vec![1, 1, 0, 0, 1], vec![0, 1, 1, 1, 0]]).unwrap();
        let a = radius_of_code(&p, &c, &CodeRadiusOptions::default()).unwrap();
        let b = radius_of_code(&p, &c, &CodeRadiusOptions::no_pruning()).unwrap();
        assert_eq!(a.radius, b.radius);
        assert_eq!(b.pruned.total(), 0);
        assert_eq!(a.stats.len(), 3);
    }

    #[test]
    fn batching_does_not_change_stats() {
        let p = Poset::from_covers(6, &[(1, 4), (2, 4), (2, 5), (3, 6)]).unwrap();
        let c = LinearCode::new(
            2,
            6,
            vec![vec![1, 0, 0, 1, 1, 0], vec![0, 1, 0, 0, 1, 1], vec![0, 0, 1, 1, 0, 1]],
        )
        .unwrap();
        let opts = CodeRadiusOptions::default();
        let one = radius_of_code(&p, &c, &opts).unwrap();
        let mut eval = |subs: &[Poset]| -> Vec<PosetRadius> {
            subs.iter().map(|s| radius_of_poset(s, Strategy::Auto).unwrap()).collect()
        };
        let four = radius_of_code_batched(&p, &c, &opts, 4, &mut eval).unwrap();
        assert_eq!(one, four);
    }
}
