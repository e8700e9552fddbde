mod common;

use common::*;
use poset_radius_core::codes::{p_distance, p_weight, DEFAULT_ENUMERATION_CAP};
use poset_radius_core::er::{ErMatrix, ErOp};
use poset_radius_core::oracle::{ball_radius_oracle, restricted_maxweight_oracle};
use poset_radius_core::partition::{brute_partition, ckk, discrepancy, kk_ldm, CkkOptions};
use poset_radius_core::poset_partition::{
    brute_min_discordancy, discordancy_lower_bound, discordancy_of, min_discordancy,
    ColumnChooser, DiscordancySearch, Entry, NumberMatrix, Op, SearchOptions,
};
use poset_radius_core::radius::{
    radius_of_code, radius_of_poset, radius_of_vector, CodeRadiusOptions, Strategy as RadiusStrategy,
};
use poset_radius_core::{ElementSet, FieldVector, Limits, LinearCode, Poset};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, any::<u64>(), 0.0..0.7f64)
        .prop_map(|(n, seed, d)| random_poset(&mut StdRng::seed_from_u64(seed), n, d))
}

fn random_vector(rng: &mut StdRng, q: u32, n: usize) -> FieldVector {
    FieldVector::new(q, (0..n).map(|_| rng.gen_range(0..q as u64))).unwrap()
}

fn random_subset(rng: &mut StdRng, n: usize) -> ElementSet {
    ElementSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.4)))
}

struct RandomChooser(StdRng);

impl ColumnChooser for RandomChooser {
    fn choose(&mut self, m: &NumberMatrix) -> (usize, usize) {
        let w = m.width();
        let j = self.0.gen_range(0..w);
        let k = (j + self.0.gen_range(1..w)) % w;
        (j, k)
    }
}

/// Entry a column should hold at `row` given its committed label sets.
fn expected_entry(p: &Poset, pri: &ElementSet, sec: &ElementSet, row: usize) -> Entry {
    let a = p.ideal(pri).contains(row);
    let b = p.ideal(sec).contains(row);
    match (a, b) {
        (false, false) => Entry::Zero,
        (true, false) => Entry::Plus,
        (false, true) => Entry::Minus,
        (true, true) => Entry::Imag,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ideals_are_closures(p in arb_poset(10), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = p.size();
        let x = random_subset(&mut rng, n);
        let y = random_subset(&mut rng, n);
        let ix = p.ideal(&x);
        prop_assert_eq!(&p.ideal(&ix), &ix);
        prop_assert!(x.is_subset(&ix));
        let xy = ElementSet::from(x.union(&y));
        let want = ix.union(&p.ideal(&y));
        let got = p.ideal(&xy);
        prop_assert_eq!(got.bits(), &want);
        prop_assert_eq!(p.weight(&x), ix.count());
        prop_assert_eq!(p.weight(&p.maximal_elements(&ix)), ix.count());
    }

    #[test]
    fn standard_form_keeps_maximal_ideals(p in arb_poset(10)) {
        let s = p.standard_form();
        prop_assert_eq!(s.standard_form().adjacency_matrix(), s.adjacency_matrix());
        let (max, min) = (s.maximal(), s.minimal());
        prop_assert!((0..s.size()).all(|i| max.contains(i) || min.contains(i)));
        let old_max = p.maximal();
        prop_assert_eq!(max.bits(), old_max.bits());
        prop_assert_eq!(
            NumberMatrix::radius_matrix(&s).entry_rows(),
            NumberMatrix::radius_matrix(&p).entry_rows()
        );
        prop_assert_eq!(
            radius_of_poset(&s, RadiusStrategy::Brute).unwrap().radius(),
            radius_of_poset(&p, RadiusStrategy::Brute).unwrap().radius()
        );
    }

    #[test]
    fn adjacency_round_trip(p in arb_poset(12)) {
        let m = p.adjacency_matrix();
        prop_assert_eq!(Poset::from_adjacency(&m).unwrap().adjacency_matrix(), m);
    }

    #[test]
    fn poset_distance_is_a_translation_invariant_metric(
        p in arb_poset(8),
        q in prop::sample::select(vec![2u32, 3, 5]),
        seed in any::<u64>(),
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = p.size();
        let [x, y, z] = [0; 3].map(|_| random_vector(&mut rng, q, n));
        let d = |a: &FieldVector, b: &FieldVector| p_distance(&p, a, b).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(d(&x, &y) == 0, x == y);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert_eq!(d(&x.add(&z).unwrap(), &y.add(&z).unwrap()), d(&x, &y));
        let hamming = x.coords().iter().zip(y.coords()).filter(|(a, b)| a != b).count();
        prop_assert_eq!(p_distance(&Poset::antichain(n), &x, &y).unwrap(), hamming);
        prop_assert!(p_weight(&p, &x).unwrap() >= x.support().count());
    }

    #[test]
    fn vector_radius_matches_ball_and_support_oracles(
        p in arb_poset(6),
        q in prop::sample::select(vec![2u32, 3]),
        seed in any::<u64>(),
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let v = random_vector(&mut rng, q, p.size());
        prop_assume!(!v.is_zero());
        let r = radius_of_vector(&p, &v, RadiusStrategy::Auto).unwrap().radius();
        prop_assert_eq!(r, ball_radius_oracle(&p, &v).unwrap());
        prop_assert_eq!(r, restricted_maxweight_oracle(&p, &v).unwrap());
        prop_assert_eq!(r, radius_of_vector(&p, &v, RadiusStrategy::Differencing).unwrap().radius());
    }

    #[test]
    fn vector_radius_ignores_nonzero_scalars(p in arb_poset(10), seed in any::<u64>(), c in 1u32..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let v = random_vector(&mut rng, 5, p.size());
        prop_assume!(!v.is_zero());
        prop_assert_eq!(
            radius_of_vector(&p, &v, RadiusStrategy::Auto).unwrap().radius(),
            radius_of_vector(&p, &v.scale(c), RadiusStrategy::Auto).unwrap().radius()
        );
    }

    #[test]
    fn columns_track_their_committed_sets(p in arb_poset(10), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = p.size();
        let maximal = p.maximal();
        let mut m = NumberMatrix::radius_matrix(&p);
        loop {
            let mut seen = ElementSet::empty(n);
            for c in m.columns() {
                let pri = ElementSet::from_indices(n, c.primary().iter());
                let sec = ElementSet::from_indices(n, c.secondary().iter());
                prop_assert!(pri.is_disjoint(&sec) && pri.is_disjoint(&seen) && sec.is_disjoint(&seen));
                seen.union_with(&pri);
                seen.union_with(&sec);
                for row in 0..n {
                    prop_assert_eq!(c.get(row), expected_entry(&p, &pri, &sec, row));
                }
            }
            prop_assert_eq!(seen.bits(), maximal.bits());
            if m.width() == 1 {
                break;
            }
            let j = rng.gen_range(0..m.width());
            let k = (j + rng.gen_range(1..m.width())) % m.width();
            let op = if rng.gen_bool(0.5) { Op::Diff } else { Op::Assoc };
            m = m.combine(j, k, op).unwrap();
        }
        let col = &m.columns()[0];
        let a = ElementSet::from_indices(n, col.primary().iter());
        let b = ElementSet::from_indices(n, col.secondary().iter());
        let (re, im) = col.entry_sum();
        prop_assert_eq!(re.unsigned_abs() as usize, p.weight(&a).abs_diff(p.weight(&b)));
        prop_assert_eq!(im, p.ideal(&a).intersection_count(&p.ideal(&b)));
        prop_assert_eq!(col.discordancy(), discordancy_of(&p, &a, &b));
    }

    #[test]
    fn search_matches_enumeration(p in arb_poset(12)) {
        prop_assume!(p.maximal().count() <= 12);
        let m = NumberMatrix::radius_matrix(&p);
        let brute = brute_min_discordancy(&p).unwrap();
        let found = min_discordancy(&m);
        prop_assert!(found.optimal);
        prop_assert_eq!(found.discordancy, brute.discordancy);
        prop_assert_eq!(discordancy_of(&p, &found.primary, &found.secondary), found.discordancy);
        prop_assert_eq!(found.discordancy % 2, p.size() % 2);
        prop_assert!(discordancy_lower_bound(&m) <= found.discordancy);
    }

    #[test]
    fn optimum_does_not_depend_on_column_choice(p in arb_poset(10), seed in any::<u64>()) {
        let m = NumberMatrix::radius_matrix(&p);
        let want = min_discordancy(&m).discordancy;
        for options in [SearchOptions::default(), SearchOptions::exhaustive()] {
            let mut chooser = RandomChooser(StdRng::seed_from_u64(seed));
            let got = DiscordancySearch::new().options(options).chooser(&mut chooser).run(&m);
            prop_assert_eq!(got.discordancy, want);
            prop_assert_eq!(discordancy_of(&p, &got.primary, &got.secondary), want);
        }
    }

    #[test]
    fn compaction_does_not_change_the_optimum(p in arb_poset(10)) {
        let m = NumberMatrix::radius_matrix(&p);
        let on = min_discordancy(&m);
        for options in [
            SearchOptions { compact: false, ..SearchOptions::default() },
            SearchOptions { compact: false, ..SearchOptions::exhaustive() },
        ] {
            let off = DiscordancySearch::new().options(options).run(&m);
            prop_assert_eq!(off.discordancy, on.discordancy);
        }
    }

    #[test]
    fn lower_bound_holds_below_the_root(p in arb_poset(10), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut m = NumberMatrix::radius_matrix(&p).compacted();
        while m.width() > 1 {
            let exact = DiscordancySearch::new().options(SearchOptions::exhaustive()).run(&m);
            prop_assert!(discordancy_lower_bound(&m) <= exact.discordancy);
            let j = rng.gen_range(0..m.width());
            let k = (j + rng.gen_range(1..m.width())) % m.width();
            let op = if rng.gen_bool(0.5) { Op::Diff } else { Op::Assoc };
            m = m.combine(j, k, op).unwrap().compacted();
        }
    }

    #[test]
    fn fast_paths_agree_with_differencing(seed in any::<u64>(), n in 1usize..=14) {
        let mut rng = StdRng::seed_from_u64(seed);
        let lengths: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..=4)).collect();
        let cases = [
            Poset::chain(n),
            Poset::antichain(n),
            random_hierarchy(&mut rng, n),
            random_up_forest(&mut rng, n),
            shuffled(&mut rng, &Poset::disjoint_chains(&lengths)),
        ];
        for p in &cases {
            let auto = radius_of_poset(p, RadiusStrategy::Auto).unwrap();
            let diff = radius_of_poset(p, RadiusStrategy::Differencing).unwrap();
            prop_assert_eq!(auto.radius(), diff.radius(), "{}", auto.method.name());
            prop_assert_eq!(discordancy_of(p, &auto.outcome.primary, &auto.outcome.secondary), auto.outcome.discordancy);
        }
    }

    #[test]
    fn er_operations_keep_the_radius(p in arb_poset(8), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut m = ErMatrix::radius_matrix(&p);
        let want = m.radius().unwrap();
        for _ in 0..8 {
            let (h, w) = (m.height(), m.width());
            let op = match rng.gen_range(0..5) {
                0 => ErOp::SwapRows(rng.gen_range(0..h), rng.gen_range(0..h)),
                1 => ErOp::SwapCols(rng.gen_range(0..w), rng.gen_range(0..w)),
                2 => ErOp::AddNullRow(rng.gen_range(0..=h)),
                3 => {
                    let base = m.column(rng.gen_range(0..w));
                    let column = base
                        .into_iter()
                        .map(|e| if rng.gen_bool(0.5) { e } else { Entry::Zero })
                        .collect();
                    ErOp::AddDominatedColumn { at: rng.gen_range(0..=w), column }
                }
                _ => match m.dominated_columns().first() {
                    Some(&k) => ErOp::RemoveDominatedColumn(k),
                    None => continue,
                },
            };
            if h == 0 && matches!(op, ErOp::SwapRows(..)) {
                continue;
            }
            m = m.transform(&op).unwrap();
            prop_assert_eq!(m.radius().unwrap(), want, "after {:?}", op);
        }
        let nulls: Vec<usize> = (0..m.height()).rev().filter(|&r| m.rows()[r].iter().all(|&e| e == Entry::Zero)).collect();
        for r in nulls {
            m = m.transform(&ErOp::RemoveNullRow(r)).unwrap();
            prop_assert_eq!(m.radius().unwrap(), want);
        }
    }

    #[test]
    fn code_pruning_does_not_change_the_radius(
        p in arb_poset(7),
        q in prop::sample::select(vec![2u32, 3]),
        seed in any::<u64>(),
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = p.size();
        let k = rng.gen_range(1..=2.min(n));
        let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q as u64)).collect()).collect();
        let code = LinearCode::new(q, n, rows);
        prop_assume!(code.is_ok());
        let code = code.unwrap();
        let pruned = radius_of_code(&p, &code, &CodeRadiusOptions::default()).unwrap();
        let plain = radius_of_code(&p, &code, &CodeRadiusOptions::no_pruning()).unwrap();
        prop_assert_eq!(pruned.radius, plain.radius);
        let oracle = code
            .codewords(DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .filter(|w| !w.is_zero())
            .map(|w| ball_radius_oracle(&p, &w).unwrap())
            .min()
            .unwrap();
        prop_assert_eq!(pruned.radius, oracle);
    }

    #[test]
    fn complete_differencing_is_optimal(values in prop::collection::vec(1u64..1000, 1..=14)) {
        let brute = brute_partition(&values).unwrap();
        let full = ckk(&values, CkkOptions::default(), &Limits::unlimited(), None).unwrap();
        let bare = ckk(
            &values,
            CkkOptions { prune_rules: false, perfect_exit: false },
            &Limits::unlimited(),
            None,
        )
        .unwrap();
        let heuristic = kk_ldm(&values).unwrap();
        prop_assert_eq!(full.discrepancy, brute.discrepancy);
        prop_assert_eq!(bare.discrepancy, brute.discrepancy);
        prop_assert!(heuristic.result.discrepancy >= brute.discrepancy);
        if heuristic.result.optimal {
            prop_assert_eq!(heuristic.result.discrepancy, brute.discrepancy);
        }
        for r in [&full, &bare, &heuristic.result] {
            prop_assert_eq!(discrepancy(&values, &r.block1).unwrap(), r.discrepancy);
        }
    }

    #[test]
    fn budgeted_differencing_returns_a_valid_partition(
        values in prop::collection::vec(1u64..1_000_000, 2..=14),
        budget in 0u64..20,
    ) {
        let brute = brute_partition(&values).unwrap();
        let r = ckk(&values, CkkOptions::default(), &Limits::nodes(budget), None).unwrap();
        prop_assert!(r.discrepancy >= brute.discrepancy);
        prop_assert_eq!(discrepancy(&values, &r.block1).unwrap(), r.discrepancy);
        let mut all: Vec<usize> = r.block1.iter().chain(&r.block2).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..values.len()).collect::<Vec<_>>());
        if r.optimal {
            prop_assert_eq!(r.discrepancy, brute.discrepancy);
        }
    }
}
