//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the console.
//! The process fails when a criterion fails that is not listed in
//! [`KNOWN_FAILURES`] or when a listed one starts passing.

mod common;

use std::time::Instant;

use combinlab::approx::{counterexample_report, gap_report, harness_eps, run_random, Algorithm, Q};
use combinlab::bench::{run_suite, BenchParams, Suite};
use combinlab::complexity::brute::OracleLimits;
use combinlab::complexity::enumerate::{check_reduction_suite, twosat_exhaustive, twosat_random};
use combinlab::complexity::ReductionKind;
use combinlab::dp::{allocate, greedy_knapsack_by_density, knapsack_pareto, lcs, matrix_chain, polygon_triangulation};
use combinlab::graph::{euler_cycle, euler_cycle_fleury, is_euler_cycle, scc_kosaraju, Digraph};
use combinlab::intmath::{ceil_log2, ceil_log2_factorial, ceil_log3};
use combinlab::oracles::*;
use combinlab::paths::{dijkstra, floyd_warshall, kruskal, prim, WeightedGraph};
use combinlab::search_games::*;
use combinlab::sorting::*;
use combinlab::tournament::*;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail, with the reason printed under their line.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    4,
    "B_10 = 25 cannot be reproduced: the grouped mergesort on 10 = 8 + 2 costs 17 for the block of 8, \
     1 for the block of 2 and 9 for the final merge, 27 in all, and the adversarial input reaches it. \
     25 comes from reading the 2^k term of the closed form with k = number of binary digits; \
     that reading also gives B_8 = 23 against the exact 17.",
)];

type Criterion = (&'static str, fn() -> Check);

struct Check {
    parts: Vec<(String, bool)>,
}

impl Check {
    fn new() -> Self {
        Check { parts: Vec::new() }
    }

    fn part(&mut self, label: impl Into<String>, ok: bool) {
        self.parts.push((label.into(), ok));
    }

    fn ok(&self) -> bool {
        self.parts.iter().all(|p| p.1)
    }
}

fn c1_search_games() -> Check {
    let mut c = Check::new();
    let mut radio = true;
    let mut coins = true;
    let mut group = true;
    let mut bitonic = true;
    for n in 1..=12usize {
        for ball in 1..=n {
            let mut t = FixedRadioactive::new(ball);
            radio &= find_radioactive(n, &mut t).unwrap() == ball && t.tests() <= ceil_log2(n as u64) as u64;
        }
        let worlds = CoinVerdict::all_worlds(n);
        coins &= worlds.len() == 2 * n + 1;
        for world in worlds {
            let mut b = TruthfulBalance::new(world);
            coins &= find_counterfeit(n, &mut b).unwrap() == world && b.weighings() <= ceil_log3(2 * n as u64 + 1) as u64;
        }
        if n >= 3 {
            for mask in 0u32..1 << n {
                if 2 * mask.count_ones() as usize <= n {
                    continue;
                }
                let honest: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                for policy in [LiarPolicy::AlwaysLie, LiarPolicy::AlwaysYes, LiarPolicy::AlwaysNo, LiarPolicy::Seeded(u64::from(mask))] {
                    let mut w = FixedWorld::new(honest.clone(), policy);
                    group &= classify_group(&mut w).unwrap() == honest && w.questions() <= (3 * (n as u64 - 1)).div_ceil(2);
                }
            }
            // every bitonic arrangement of 1..=n: choose which values sit left of the peak
            let k = FibTable::up_to(n as u64).index_for(n as u64) as u64;
            for left in 0u32..1 << (n - 1) {
                let mut up: Vec<u32> = (1..n as u32).filter(|v| left >> (v - 1) & 1 == 1).collect();
                let down: Vec<u32> = (1..n as u32).rev().filter(|v| left >> (v - 1) & 1 == 0).collect();
                up.push(n as u32);
                let peak = up.len();
                up.extend(down);
                let mut p = SliceProbe::new(up);
                let (at, v) = bitonic_max(n, &mut p).unwrap();
                bitonic &= at == peak && v == n as u32 && p.probes() <= k;
            }
        }
    }
    c.part("radioactive <= ceil(log2 n)", radio);
    c.part("counterfeit <= ceil(log3(2n+1)) in all 2n+1 worlds", coins);
    c.part("classify_group <= ceil(3(n-1)/2) over all honest-majority worlds", group);
    c.part("bitonic_max <= k for Phi_k <= n < Phi_k+1 over all bitonic permutations", bitonic);
    c
}

fn c2_adversaries() -> Check {
    let mut c = Check::new();
    let mut sets = true;
    for n in 1..=12 {
        let mut adv = AdversarySetEquality::new(n).unwrap();
        let equal = sets_equal(&mut adv);
        sets &= equal && adv.queries() == (n * (n + 1) / 2) as u64;
        let (a, b) = adv.certify().unwrap();
        let mut truthful = TruthfulEquality::new(a, b).unwrap();
        sets &= adv.transcript().iter().all(|&(i, j, ans)| truthful.equal(i, j) == ans);
    }
    c.part("sets_equal forced to n(n+1)/2, n <= 12, transcripts certified", sets);
    let mut merge = true;
    for n in 1..=64 {
        let mut adv = AdversaryMerge::new(n, n).unwrap();
        let (a, b) = (adv.run_a(), adv.run_b());
        let out = merge_runs(&a, &b, &mut adv);
        merge &= adv.comparisons() == 2 * n as u64 - 1 && out.len() == 2 * n;
        let keys = adv.certify().unwrap();
        merge &= replay_comparisons(&keys, adv.transcript());
    }
    c.part("merge_runs forced to 2n-1, n <= 64, transcripts certified", merge);
    c
}

/// Runs every selection routine on one key vector; `None` when all outputs
/// match the ranks and stay in budget, otherwise what went wrong.
fn tournament_case(keys: &[u32], t: usize) -> Option<String> {
    let n = keys.len();
    let rank = |i: usize| n - keys[i] as usize;
    let cc = || CountingComparator::new(keys.to_vec()).unwrap();
    let lg = ceil_log2(n as u64) as u64;
    let mut c = cc();
    if rank(tournament_max(&mut c).0) != 1 || c.comparisons() != n as u64 - 1 {
        return Some(format!("max, n = {n}"));
    }
    let mut c = cc();
    let (hi, lo) = max_and_min(&mut c).unwrap();
    if (rank(hi), rank(lo)) != (1, n) || c.comparisons() > (3 * n as u64).div_ceil(2).saturating_sub(2) {
        return Some(format!("max_and_min, n = {n}"));
    }
    if n >= 2 {
        let mut c = cc();
        let (a, b) = top_two(&mut c).unwrap();
        if (rank(a), rank(b)) != (1, 2) || c.comparisons() > n as u64 - 2 + lg {
            return Some(format!("top_two, n = {n}"));
        }
    }
    if n >= 3 {
        let mut c = cc();
        let (a, b, d) = top_three(&mut c).unwrap();
        if (rank(a), rank(b), rank(d)) != (1, 2, 3) || c.comparisons() > n as u64 + 2 * lg - 3 {
            return Some(format!("top_three, n = {n}"));
        }
    }
    let mut c = cc();
    if rank(select_t_tournament(&mut c, t).unwrap()) != t || c.comparisons() > select_t_tournament_budget(n as u64, t as u64) {
        return Some(format!("select_t_tournament, n = {n}, t = {t}"));
    }
    let mut c = cc();
    if rank(select_t_linear(&mut c, t).unwrap()) != t {
        return Some(format!("select_t_linear rank, n = {n}, t = {t}"));
    }
    None
}

fn c3_tournament() -> Check {
    let mut c = Check::new();
    let mut bad = None;
    for n in 1..=8 {
        for p in permutations(n) {
            for t in 1..=n {
                bad = bad.or_else(|| tournament_case(&p, t));
            }
        }
    }
    c.part(format!("all permutations n <= 8{}", bad.as_ref().map(|b| format!(" ({b})")).unwrap_or_default()), bad.is_none());
    let mut rng = ChaCha8Rng::seed_from_u64(0x746f);
    let mut bad = None;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=512);
        let keys = shuffled(n, &mut rng);
        let t = rng.gen_range(1..=n);
        bad = bad.or_else(|| tournament_case(&keys, t));
    }
    c.part(format!("1000 random inputs n <= 512{}", bad.as_ref().map(|b| format!(" ({b})")).unwrap_or_default()), bad.is_none());
    let mut worst_slack = i64::MAX;
    let mut lin = true;
    for n in 33..=2000usize {
        let keys = shuffled(n, &mut rng);
        let t = rng.gen_range(1..=n);
        let mut cmp = CountingComparator::new(keys.clone()).unwrap();
        let got = select_t_linear(&mut cmp, t).unwrap();
        lin &= keys[got] as usize == n - t;
        worst_slack = worst_slack.min(select_t_linear_budget(n as u64) - cmp.comparisons() as i64);
    }
    c.part(format!("select_t_linear <= 15n-163 for 33 <= n <= 2000 (least slack {worst_slack})"), lin && worst_slack >= 0);
    c
}

fn c4_sorting() -> Check {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x736f);
    let mut exact = true;
    for n in 0..=200 {
        for _ in 0..3 {
            let mut cmp = CountingComparator::new(shuffled(n, &mut rng)).unwrap();
            let out = insertion_sort(&mut cmp);
            exact &= out.iter().enumerate().all(|(r, &i)| cmp.keys()[i] as usize == r);
            exact &= cmp.comparisons() == a_n(n as u64);
        }
    }
    c.part("insertion_sort = A_n exactly, n <= 200", exact);
    let mut within = true;
    for n in 1..=8 {
        for p in permutations(n) {
            let mut cmp = CountingComparator::new(p).unwrap();
            merge_insertion_sort(&mut cmp);
            within &= cmp.comparisons() <= f_n(n as u64);
        }
    }
    for n in 9..=200 {
        for _ in 0..5 {
            let mut cmp = CountingComparator::new(shuffled(n, &mut rng)).unwrap();
            let out = merge_insertion_sort(&mut cmp);
            within &= out.iter().enumerate().all(|(r, &i)| cmp.keys()[i] as usize == r);
            within &= cmp.comparisons() <= f_n(n as u64);
        }
    }
    c.part("merge_insertion <= F(n) (all permutations n <= 8, random n <= 200)", within);
    c.part(format!("F(5) = {}, F(10) = {}", f_n(5), f_n(10)), f_n(5) == 7 && f_n(10) == 22);
    let mut cmp = CountingComparator::new(grouped_worst_input(10)).unwrap();
    merge_sort_grouped(&mut cmp);
    let simulated = cmp.comparisons();
    c.part(format!("B_10 = 25 by adversarial merge simulation (simulated {simulated}, b_n(10) = {})", b_n(10)), simulated == 25);
    c.part("F(n) >= ceil(log2 n!) for n <= 64", (1..=64).all(|n| f_n(n) >= ceil_log2_factorial(n)));
    c
}

fn c5_graphs() -> Check {
    let mut c = Check::new();
    let mut scc = true;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v).collect();
        for mask in 0u64..1 << pairs.len() {
            let arcs = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let d = Digraph::new(n, arcs).unwrap();
            scc &= normalize(scc_kosaraju(&d)) == mutual_reachability_classes(&d);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6772);
    for _ in 0..1000 {
        let d = random_digraph(rng.gen_range(1..=30), rng.gen_range(0.0..0.15), &mut rng);
        scc &= normalize(scc_kosaraju(&d)) == mutual_reachability_classes(&d);
    }
    c.part("SCC = mutual reachability (all digraphs n <= 5, 1000 random n <= 30)", scc);
    let mut euler = true;
    let mut eulerian = 0;
    for _ in 0..1000 {
        let g = random_graph(rng.gen_range(1..=10), rng.gen_range(0.2..1.0), &mut rng);
        let (a, b) = (euler_cycle(&g), euler_cycle_fleury(&g));
        euler &= a.is_ok() == b.is_ok();
        if let (Ok(a), Ok(b)) = (a, b) {
            eulerian += 1;
            euler &= g.m() == 0 || (is_euler_cycle(&g, &a) && is_euler_cycle(&g, &b));
        }
    }
    c.part(format!("Euler splicing = Fleury on 1000 random graphs ({eulerian} Eulerian)"), euler);
    let mut sp = true;
    for _ in 0..1000 {
        let g = random_weighted_digraph(rng.gen_range(1..=15), rng.gen_range(0.1..0.6), 0, 20, &mut rng);
        let f = floyd_warshall(&g);
        sp &= (0..g.n()).all(|s| dijkstra(&g, s).unwrap().dist == f.d[s]);
    }
    c.part("dijkstra = floyd rows on 1000 non-negative digraphs", sp);
    let mut neg = true;
    let mut flagged = 0;
    for _ in 0..3000 {
        let g = random_weighted_digraph(rng.gen_range(1..=6), rng.gen_range(0.2..0.7), -6, 8, &mut rng);
        let got = floyd_warshall(&g).negative_cycle_vertices;
        flagged += usize::from(!got.is_empty());
        neg &= got == negative_closed_walk_vertices(&g);
    }
    c.part(format!("floyd negative-cycle flags = brute force, 3000 digraphs n <= 6 ({flagged} with negative cycles)"), neg);
    c
}

fn c6_mst() -> Check {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d73);
    let (mut weight, mut same) = (true, true);
    let mut connected = 0;
    for i in 0..600 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(n, rng.gen_range(0.3..1.0), &mut rng);
        let distinct = i % 2 == 0;
        let mut ws: Vec<i64> = (1..=g.m() as i64).collect();
        if distinct {
            use rand::seq::SliceRandom;
            ws.shuffle(&mut rng);
        } else {
            ws.iter_mut().for_each(|x| *x = rng.gen_range(1..=4));
        }
        let wg = WeightedGraph::new(n, g.edges().iter().zip(&ws).map(|(&(u, v), &x)| (u, v, w(x))).collect()).unwrap();
        match brute_mst(&wg) {
            None => weight &= prim(&wg).is_err() && kruskal(&wg).is_err(),
            Some((best, trees)) => {
                connected += 1;
                let (a, b) = (prim(&wg).unwrap(), kruskal(&wg).unwrap());
                weight &= a.total == best && b.total == best;
                if distinct {
                    same &= trees.len() == 1 && a.edge_set() == trees[0] && b.edge_set() == trees[0];
                }
            }
        }
    }
    c.part(format!("prim/kruskal weight = brute minimum, 600 graphs n <= 7 ({connected} connected)"), weight);
    c.part("identical edge sets under distinct weights", same);
    c
}

fn c7_dp() -> Check {
    let mut c = Check::new();
    // every instance with up to 3 items, values and volumes in 0..=3
    let mut knap = true;
    for n in 0..=3u32 {
        for code in 0..16u32.pow(n) {
            let digits: Vec<u64> = (0..n).map(|i| u64::from(code / 16u32.pow(i) % 16)).collect();
            let values: Vec<u64> = digits.iter().map(|d| d % 4).collect();
            let volumes: Vec<u64> = digits.iter().map(|d| d / 4).collect();
            for cap in 0..=9 {
                knap &= knapsack_pareto(&values, &volumes, cap).unwrap().value == brute_knapsack(&values, &volumes, cap);
            }
        }
    }
    c.part("knapsack_pareto = enumeration (all instances n <= 3, entries <= 3)", knap);
    let strings: Vec<Vec<char>> = (0..=6u32)
        .flat_map(|len| (0..1u32 << len).map(move |m| (0..len).map(|i| if m >> i & 1 == 1 { 'B' } else { 'A' }).collect()))
        .collect();
    let lcs_ok = strings.iter().all(|x| strings.iter().all(|y| lcs(x, y).0 == brute_lcs(x, y)));
    c.part("lcs = enumeration (all pairs of {A,B} strings of length <= 6)", lcs_ok);
    let mut chain = true;
    let mut tri = true;
    for len in 2..=7u32 {
        for code in 0..4u32.pow(len) {
            let p: Vec<u64> = (0..len).map(|i| u64::from(code / 4u32.pow(i) % 4 + 1)).collect();
            let cost = matrix_chain(&p).unwrap().0;
            chain &= cost == brute_chain(&p, 0, p.len() - 2);
            if p.len() >= 3 {
                tri &= polygon_triangulation(p.len(), |a, b, d| (p[a] * p[b] * p[d]) as i64).unwrap().cost == cost as i128;
            }
        }
    }
    c.part("matrix_chain = enumeration (all dimension vectors over 1..=4, up to 6 matrices)", chain);
    c.part("triangulation with w = p_i p_k p_j = matrix_chain, n <= 6", tri);
    let mut polys = true;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7472);
    for _ in 0..500 {
        let v = rng.gen_range(3..=8);
        let table: Vec<Vec<Vec<i64>>> = (0..v).map(|_| (0..v).map(|_| (0..v).map(|_| rng.gen_range(0..20)).collect()).collect()).collect();
        let wt = |a: usize, b: usize, d: usize| table[a][b][d];
        polys &= polygon_triangulation(v, wt).unwrap().cost == brute_triangulation(0, v - 1, &wt);
    }
    c.part("polygon_triangulation = enumeration, 500 random weight tables", polys);
    let mut alloc = true;
    for _ in 0..2000 {
        let inst = random_allocation(rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(0..=8), &mut rng);
        alloc &= allocate(&inst).unwrap().0 == brute_allocate(&inst);
    }
    c.part("allocate = enumeration, 2000 random instances", alloc);
    let (cs, vs) = ([160, 250, 180, 30], [40, 50, 40, 20]);
    let (opt, greedy) = (knapsack_pareto(&cs, &vs, 85).unwrap().value, greedy_knapsack_by_density(&cs, &vs, 85).unwrap().value);
    c.part(format!("V = 85 knapsack: optimum {opt}, density greedy {greedy}"), opt == 340 && greedy == 280);
    let mc = matrix_chain(&[10, 100, 5, 50]).unwrap().0;
    c.part(format!("matrix chain (10,100,5,50) = {mc}"), mc == 7500);
    c
}

fn c8_reductions() -> Check {
    let mut c = Check::new();
    let limits = OracleLimits::default();
    let start = Instant::now();
    let mut total = 0;
    for kind in ReductionKind::ALL {
        let out = check_reduction_suite(kind, &limits).unwrap();
        total += out.instances;
        c.part(format!("{kind} ({} instances)", out.instances), out.failures.is_empty() && out.instances > 0);
    }
    let secs = start.elapsed().as_secs_f64();
    c.part(format!("{total} instances in {secs:.1} s (< 60 s)"), secs < 60.0);
    c
}

fn c9_twosat() -> Check {
    let mut c = Check::new();
    let mut formulas = 0;
    let mut ok = true;
    // every formula of at most 8 distinct clauses on 4 variables; all of them on up to 3
    for (n, r) in [(1, 2), (2, 12), (3, 18), (4, 8)] {
        let out = twosat_exhaustive(n, r).unwrap();
        formulas += out.formulas;
        ok &= out.failures.is_empty();
    }
    c.part(format!("exhaustive n <= 4 ({formulas} formulas)"), ok);
    let out = twosat_random(10_000, 12, 0x3273).unwrap();
    c.part(format!("10^4 random formulas n <= 12 ({} UNSAT, certificates checked by SCC membership)", out.unsat), out.failures.is_empty());
    c
}

fn c10_approx() -> Check {
    let mut c = Check::new();
    for alg in Algorithm::ALL {
        if alg == Algorithm::VcDegreeGreedy {
            continue;
        }
        let runs = if alg == Algorithm::KnapsackFptas { 1500 } else { 500 };
        let mut worst = Q::from_integer(1);
        let mut violations = 0;
        let mut per_eps = [0; 3];
        for seed in 0..runs {
            let r = run_random(alg, seed).unwrap();
            worst = worst.max(r.ratio.unwrap());
            violations += usize::from(!r.within_bound());
            if alg == Algorithm::KnapsackFptas {
                per_eps[(seed % 3) as usize] += 1;
                assert_eq!(r.bound, Some(Q::from_integer(1) + harness_eps(seed)));
            }
        }
        let extra = if alg == Algorithm::KnapsackFptas {
            format!(", {}/{}/{} runs at eps 1, 1/2, 1/4", per_eps[0], per_eps[1], per_eps[2])
        } else {
            String::new()
        };
        c.part(format!("{alg}: {runs} runs, worst ratio {worst}, {violations} violations{extra}"), violations == 0);
    }
    c
}

fn c11_negative() -> Check {
    let mut c = Check::new();
    let ratios: Vec<Q> = (6..=30).map(|n| counterexample_report(n).unwrap().ratio.unwrap()).collect();
    let again: Vec<Q> = (6..=30).map(|n| counterexample_report(n).unwrap().ratio.unwrap()).collect();
    c.part(
        format!("degree greedy on the counterexample: ratio {} at n = 6, {} at n = 30, > 7/5 throughout", ratios[0], ratios[24]),
        ratios[0] > Q::new(7, 5) && ratios.iter().all(|&r| r > Q::new(7, 5)) && ratios[24] > ratios[0] && ratios == again,
    );
    let eps = Q::from_integer(1);
    let seed = (0..500u64).find(|&s| gap_report(8, 0.3, eps, s).unwrap().ratio.unwrap() > Q::from_integer(2));
    let det = seed.map(|s| gap_report(8, 0.3, eps, s).unwrap() == gap_report(8, 0.3, eps, s).unwrap()).unwrap_or(false);
    let ratio = seed.map(|s| gap_report(8, 0.3, eps, s).unwrap().ratio.unwrap().to_string()).unwrap_or_default();
    c.part(format!("double tree on the gap instance, eps = 1: ratio {ratio} at seed {seed:?}"), seed.is_some() && det);
    c
}

fn c12_determinism() -> Check {
    let mut c = Check::new();
    for suite in Suite::ALL {
        let mut p = BenchParams::defaults(suite);
        p.seed = 0x5eed;
        p.trials = 50;
        let a = run_suite(suite, &p).unwrap().to_json();
        let b = run_suite(suite, &p).unwrap().to_json();
        c.part(format!("{} ({} bytes)", suite.name(), a.len()), a == b);
    }
    c
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("search-game exactness", c1_search_games),
        ("adversary tightness", c2_adversaries),
        ("tournament budgets", c3_tournament),
        ("sorting counts", c4_sorting),
        ("graph oracle equivalence", c5_graphs),
        ("MST", c6_mst),
        ("DP oracle equivalence", c7_dp),
        ("reductions", c8_reductions),
        ("2-SAT", c9_twosat),
        ("approximation ratios", c10_approx),
        ("negative demonstrations", c11_negative),
        ("determinism", c12_determinism),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let check = run();
        let ok = check.ok();
        println!("criterion {id:>2} {} {name} ({:.1} s)", if ok { "PASS" } else { "FAIL" }, start.elapsed().as_secs_f64());
        for (label, part_ok) in &check.parts {
            println!("      {} {label}", if *part_ok { "ok  " } else { "FAIL" });
        }
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == id);
        match (ok, known) {
            (false, Some((_, why))) => println!("      known failure: {why}"),
            (true, Some(_)) => unexpected.push(format!("criterion {id} passed but is listed as a known failure")),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("{u}");
        }
        std::process::exit(1);
    }
    println!("acceptance: {} of 12 criteria pass; {} known failure(s) documented above", 12 - KNOWN_FAILURES.len(), KNOWN_FAILURES.len());
}
