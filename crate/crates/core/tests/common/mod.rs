#![allow(dead_code)]

use poset_radius_core::Poset;
use rand::seq::SliceRandom;
use rand::Rng;

/// Seven elements, maximal {4,5,6,7}, ideals overlapping in pairs.
pub const OVERLAPPING_SEVEN: &str = "\
1 0 0 1 1 0 0
0 1 0 0 1 1 1
0 0 1 1 1 0 0
0 0 0 1 0 0 0
0 0 0 0 1 0 0
0 0 0 0 0 1 0
0 0 0 0 0 0 1";

/// Seven elements: a three-element base under four maximal elements,
/// three of which sit over the whole base.
pub const STACKED_SEVEN: &str = "\
1 1 1 1 1 1 1
0 1 1 1 1 1 1
0 0 1 1 1 1 0
0 0 0 1 0 0 0
0 0 0 0 1 0 0
0 0 0 0 0 1 0
0 0 0 0 0 0 1";

/// Eight elements of height three, followed by its standard form.
pub const DEEP_EIGHT: &str = "\
1 0 0 1 1 1 1 1
0 1 0 1 0 0 1 0
0 0 1 0 1 0 0 1
0 0 0 1 0 0 1 0
0 0 0 0 1 0 0 1
0 0 0 0 0 1 0 0
0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 1";

pub const DEEP_EIGHT_STANDARD: &str = "\
1 0 0 0 0 1 1 1
0 1 0 0 0 0 1 0
0 0 1 0 0 0 0 1
0 0 0 1 0 0 1 0
0 0 0 0 1 0 0 1
0 0 0 0 0 1 0 0
0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 1";

/// Two five-element posets with equal radius; the ER steps turn the
/// adjacency matrix of the second into that of the first.
pub const FIVE_TARGET: &str = "\
1 1 1 1 1
0 1 0 1 0
0 0 1 1 1
0 0 0 1 0
0 0 0 0 1";

pub const FIVE_SOURCE: &str = "\
1 0 1 1 1
0 1 0 1 1
0 0 1 0 1
0 0 0 1 0
0 0 0 0 1";

pub const FIVE_AFTER_REMOVAL: &str = "\
1 1
1 1
0 1
1 0
0 1";

pub const FIVE_AFTER_SWAPS: &str = "\
1 1
1 0
1 1
1 0
0 1";

/// A seven-element poset whose padded radius matrix sits inside the radius
/// matrix of an eight-element one.
pub const SMALLER_SEVEN: &str = "\
1 0 0 0 1 0 0
0 1 1 1 1 1 1
0 0 1 0 0 0 1
0 0 0 1 1 0 1
0 0 0 0 1 0 0
0 0 0 0 0 1 0
0 0 0 0 0 0 1";

pub const LARGER_EIGHT: &str = "\
1 1 1 1 1 1 1 1
0 1 0 1 1 0 1 1
0 0 1 0 0 0 0 1
0 0 0 1 1 0 0 1
0 0 0 0 1 0 0 0
0 0 0 0 0 1 0 0
0 0 0 0 0 0 1 0
0 0 0 0 0 0 0 1";

pub const SMALLER_SEVEN_PADDED: &str = "\
1 0 0 0
1 0 1 1
0 0 0 1
1 0 0 1
1 0 0 0
0 0 0 0
0 0 1 0
0 0 0 1";

pub fn parse_matrix(text: &str) -> Vec<Vec<bool>> {
    text.lines()
        .map(|l| l.split_whitespace().map(|t| t == "1").collect())
        .collect()
}

pub fn format_matrix(rows: &[Vec<bool>]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&b| if b { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn poset(text: &str) -> Poset {
    Poset::from_adjacency(&parse_matrix(text)).expect("fixture is a poset")
}

/// Every labelled poset on `n` elements.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << cells.len() {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in cells.iter().enumerate() {
            m[i][j] = mask >> b & 1 == 1;
        }
        if let Ok(p) = Poset::from_adjacency(&m) {
            out.push(p);
        }
    }
    out
}

/// A random poset: a random DAG over a shuffled order, closed.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[a], order[b]));
            }
        }
    }
    Poset::from_covers(n, &pairs).expect("acyclic by construction")
}

/// Applies a relabelling: element `i` becomes `perm[i]`.
pub fn relabel(p: &Poset, perm: &[usize]) -> Poset {
    let n = p.size();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[perm[i]][perm[j]] = p.leq(i, j);
        }
    }
    Poset::from_adjacency(&m).expect("relabelling keeps the order")
}

pub fn shuffled<R: Rng>(rng: &mut R, p: &Poset) -> Poset {
    let mut perm: Vec<usize> = (0..p.size()).collect();
    perm.shuffle(rng);
    relabel(p, &perm)
}

/// A random hierarchy with at most `max_n` elements, labels shuffled.
pub fn random_hierarchy<R: Rng>(rng: &mut R, max_n: usize) -> Poset {
    let mut sizes = Vec::new();
    let mut left = rng.gen_range(1..=max_n);
    while left > 0 {
        let s = rng.gen_range(1..=left.min(5));
        sizes.push(s);
        left -= s;
    }
    shuffled(rng, &Poset::hierarchy(&sizes))
}

/// A random forest of rooted trees pointing up: every component has one
/// maximal element, so maximal ideals are disjoint.
pub fn random_up_forest<R: Rng>(rng: &mut R, n: usize) -> Poset {
    // each element has at most one upper cover
    let mut pairs = Vec::new();
    for child in 1..n {
        if rng.gen_bool(0.7) {
            let parent = rng.gen_range(child + 1..=n);
            pairs.push((child, parent));
        }
    }
    shuffled(rng, &Poset::from_covers(n, &pairs).expect("forest"))
}
