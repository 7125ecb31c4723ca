mod common;

use combinlab::intmath::{ceil_log2, ceil_log2_factorial};
use combinlab::oracles::{replay_comparisons, Comparator, CountingComparator};
use combinlab::sorting::*;
use combinlab::tournament::*;
use common::{permutations, shuffled};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cc(keys: Vec<u32>) -> CountingComparator<u32> {
    CountingComparator::new(keys).unwrap()
}

fn is_sorted_by_keys(c: &CountingComparator<u32>, order: &[usize]) -> bool {
    order.len() == c.len() && order.windows(2).all(|w| c.keys()[w[0]] < c.keys()[w[1]])
}

#[test]
fn merge_insertion_worst_case_over_all_permutations() {
    for n in 1..=8 {
        let worst = permutations(n)
            .into_iter()
            .map(|p| {
                let mut c = cc(p);
                let out = merge_insertion_sort(&mut c);
                assert!(is_sorted_by_keys(&c, &out));
                c.comparisons()
            })
            .max()
            .unwrap();
        assert!(worst <= f_n(n as u64), "n = {n}");
        assert!(worst >= ceil_log2_factorial(n as u64), "n = {n}");
    }
}

#[test]
fn insertion_sort_costs_exactly_a_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 0..=80 {
        let mut c = cc(shuffled(n, &mut rng));
        let out = insertion_sort(&mut c);
        assert!(is_sorted_by_keys(&c, &out));
        assert_eq!(c.comparisons(), a_n(n as u64));
    }
}

#[test]
fn grouped_mergesort_never_exceeds_b_n() {
    for n in 1..=7 {
        for p in permutations(n) {
            let mut c = cc(p);
            let out = merge_sort_grouped(&mut c);
            assert!(is_sorted_by_keys(&c, &out));
            assert!(c.comparisons() <= b_n(n as u64));
        }
    }
}

#[test]
fn budgets_are_ordered() {
    for n in 1..=64u64 {
        let b = sort_budgets(n);
        assert!(b.info_lower <= b.f_n && b.f_n <= b.a_n, "n = {n}");
    }
}

#[test]
fn tournament_budgets_over_all_permutations() {
    for n in 2..=7usize {
        let lg = ceil_log2(n as u64) as u64;
        for p in permutations(n) {
            let rank = |i: usize| n - p[i] as usize;
            let mut c = cc(p.clone());
            assert_eq!(rank(tournament_max(&mut c).0), 1);
            assert_eq!(c.comparisons(), n as u64 - 1);

            let mut c = cc(p.clone());
            let (hi, lo) = max_and_min(&mut c).unwrap();
            assert_eq!((rank(hi), rank(lo)), (1, n));
            assert!(c.comparisons() <= (3 * n as u64).div_ceil(2) - 2);

            let mut c = cc(p.clone());
            let (a, b) = top_two(&mut c).unwrap();
            assert_eq!((rank(a), rank(b)), (1, 2));
            assert!(c.comparisons() <= n as u64 - 2 + lg);

            if n >= 3 {
                let mut c = cc(p.clone());
                let (a, b, d) = top_three(&mut c).unwrap();
                assert_eq!((rank(a), rank(b), rank(d)), (1, 2, 3));
                assert!(c.comparisons() <= top_three_budget(n as u64));
            }

            for t in 1..=n {
                let mut c = cc(p.clone());
                assert_eq!(rank(select_t_tournament(&mut c, t).unwrap()), t);
                assert!(c.comparisons() <= select_t_tournament_budget(n as u64, t as u64));
            }
        }
    }
}

proptest! {
    #[test]
    fn sorts_agree_and_transcripts_replay(keys in prop::collection::vec(0u32..1000, 0..60)) {
        let mut expect = keys.clone();
        expect.sort();
        // ties are broken by index
        let tagged: Vec<(u32, usize)> = keys.iter().copied().zip(0..).collect();
        for sorter in [insertion_sort::<CountingComparator<u32>>, merge_sort_grouped, merge_insertion_sort] {
            let mut c = CountingComparator::with_tie_break(keys.clone());
            let out = sorter(&mut c);
            prop_assert_eq!(out.iter().map(|&i| keys[i]).collect::<Vec<_>>(), expect.clone());
            prop_assert!(replay_comparisons(&tagged, c.transcript()));
        }
    }

    #[test]
    fn merge_insertion_within_f(n in 1usize..=300, seed in any::<u64>()) {
        let mut c = cc(shuffled(n, &mut ChaCha8Rng::seed_from_u64(seed)));
        let out = merge_insertion_sort(&mut c);
        prop_assert!(is_sorted_by_keys(&c, &out));
        prop_assert!(c.comparisons() <= f_n(n as u64));
    }

    #[test]
    fn selections_match_ranks(n in 1usize..=200, t_frac in 0.0f64..1.0, seed in any::<u64>()) {
        let keys = shuffled(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let t = 1 + ((n - 1) as f64 * t_frac) as usize;
        let want = (n - t) as u32;
        let mut c = cc(keys.clone());
        prop_assert_eq!(keys[select_t_tournament(&mut c, t).unwrap()], want);
        prop_assert!(c.comparisons() <= select_t_tournament_budget(n as u64, t as u64));
        let mut c = cc(keys.clone());
        prop_assert_eq!(keys[select_t_linear(&mut c, t).unwrap()], want);
        if n > 32 {
            prop_assert!(c.comparisons() as i64 <= select_t_linear_budget(n as u64));
        }
    }
}
