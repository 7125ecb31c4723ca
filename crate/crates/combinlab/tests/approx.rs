use combinlab::approx::*;
use combinlab::complexity::brute::tsp_optimum;
use combinlab::complexity::verify::tour_cost;
use combinlab::graph::Graph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn ratios_within_guarantees_on_random_suites() {
    for alg in Algorithm::ALL {
        let mut worst = Q::from_integer(1);
        for seed in 0..500 {
            let r = run_random(alg, seed).unwrap();
            assert!(r.within_bound(), "{alg} seed {seed}: {r:?}");
            worst = worst.max(r.ratio.unwrap());
        }
        eprintln!("{alg}: worst ratio {worst}");
    }
}

#[test]
fn degree_greedy_counterexample_grows() {
    let ratio = |n| counterexample_report(n).unwrap().ratio.unwrap();
    assert!(ratio(6) > Q::new(7, 5));
    assert!((6..=30).all(|n| ratio(n) > Q::new(7, 5)));
    assert!(ratio(30) > ratio(6));
    for n in 2..=30 {
        let g = vc_greedy_counterexample(n).unwrap();
        let core = counterexample_core(n);
        assert!(is_vertex_cover(&g, &core));
        // the k = 1 gadgets are n disjoint edges, so no cover is smaller than n
        let pendant: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1 && !core.contains(&v)).collect();
        let hit: std::collections::BTreeSet<usize> = pendant.iter().map(|&v| g.neighbors(v)[0]).collect();
        assert!(hit.len() >= n);
        let harmonic_gap = combinlab::intmath::harmonic(n as u64) - Q::from_integer(1);
        assert!(ratio(n) >= harmonic_gap);
    }
}

#[test]
fn double_tree_breaks_without_triangle_inequality() {
    let hit = (0..200u64).find(|&seed| gap_report(8, 0.3, Q::from_integer(1), seed).unwrap().ratio.unwrap() > Q::from_integer(2));
    let seed = hit.expect("some seed exceeds ratio 2");
    let r = gap_report(8, 0.3, Q::from_integer(1), seed).unwrap();
    let g = planted_hamiltonian_graph(8, 0.3, seed);
    assert_eq!(tsp_optimum(&tsp_gap_instance(&g, Q::from_integer(1)).unwrap()).0, 8);
    assert_eq!(r, gap_report(8, 0.3, Q::from_integer(1), seed).unwrap());
}

#[test]
fn christofides_beats_double_tree_on_some_five_city_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let found = (0..2000).any(|_| {
        let inst = random_metric(5, 20, &mut rng);
        let dt = tour_cost(inst.cost(), &tsp_double_tree(&inst));
        let ch = tour_cost(inst.cost(), &tsp_christofides(&inst).unwrap());
        ch < dt
    });
    assert!(found);
}

#[test]
fn matching_dp_equals_enumeration_on_eight_vertices() {
    fn all(v: &[usize], w: &dyn Fn(usize, usize) -> i64, count: &mut usize) -> i64 {
        if v.is_empty() {
            *count += 1;
            return 0;
        }
        let mut best = i64::MAX;
        for j in 1..v.len() {
            let rest: Vec<usize> = v[1..].iter().copied().filter(|&x| x != v[j]).collect();
            best = best.min(w(v[0], v[j]) + all(&rest, w, count));
        }
        best
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let m: Vec<Vec<i64>> = (0..8).map(|_| (0..8).map(|_| rng.gen_range(0..100)).collect()).collect();
        let w = |a: usize, b: usize| m[a.min(b)][a.max(b)];
        let mut count = 0;
        let brute = all(&(0..8).collect::<Vec<_>>(), &w, &mut count);
        assert_eq!(count, 105);
        assert_eq!(min_perfect_matching_exact(&(0..8).collect::<Vec<_>>(), w).unwrap().0, brute);
    }
}

#[test]
fn first_fit_leaves_at_most_one_bin_under_half() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let n = rng.gen_range(1..=30);
        let sizes: Vec<Q> = (0..n).map(|_| Q::new(rng.gen_range(0..=40), 40)).collect();
        let bins = bin_pack_first_fit(&sizes).unwrap();
        let loads = bin_loads(&sizes, &bins);
        assert!(loads.iter().filter(|&&l| l * 2 < Q::from_integer(1)).count() <= 1);
        let total: Q = sizes.iter().sum();
        assert!(loads.len() as i64 <= (total * 2).ceil().to_integer().max(1));
    }
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn covers_are_covers(g in graph_strategy()) {
        prop_assert!(is_vertex_cover(&g, &vc_matching_2approx(&g)));
        prop_assert!(is_vertex_cover(&g, &vc_degree_greedy(&g)));
    }

    #[test]
    fn local_search_cut_is_locally_optimal(g in graph_strategy()) {
        let r = max_cut_local_search(&g);
        prop_assert!(r.moves <= g.m());
        let mut inside = vec![false; g.n()];
        for &v in &r.side { inside[v] = true; }
        for v in 0..g.n() {
            inside[v] = !inside[v];
            prop_assert!(cut_size(&g, &inside) <= r.cut);
            inside[v] = !inside[v];
        }
        prop_assert!(2 * r.cut >= max_cut_brute(&g).unwrap());
    }

    #[test]
    fn metric_tours_visit_every_city(seed in any::<u64>(), n in 3usize..=12) {
        let inst = random_metric(n, 50, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(is_tour(&tsp_double_tree(&inst), n));
        prop_assert!(is_tour(&tsp_christofides(&inst).unwrap(), n));
    }
}
