use combinlab::intmath::ceil_log2;
use combinlab::oracles::*;
use combinlab::search_games::*;
use combinlab::sorting::merge_runs;

#[test]
fn radioactive_all_placements() {
    for n in 1..=100 {
        for ball in 1..=n {
            let mut t = FixedRadioactive::new(ball);
            assert_eq!(find_radioactive(n, &mut t).unwrap(), ball);
            assert!(t.tests() <= ceil_log2(n as u64) as u64);
        }
    }
}

#[test]
fn counterfeit_all_worlds() {
    for n in 1..=60 {
        let budget = coin_budget(n as u64) as u64;
        let mut worst = 0;
        for world in CoinVerdict::all_worlds(n) {
            let mut b = TruthfulBalance::new(world);
            assert_eq!(find_counterfeit(n, &mut b).unwrap(), world, "n = {n}");
            assert!(b.weighings() <= budget, "n = {n} {world:?}");
            worst = worst.max(b.weighings());
        }
        if [1, 4, 13, 40].contains(&n) {
            assert_eq!(worst, budget);
        }
    }
}

#[test]
fn bitonic_all_peaks() {
    for n in 1..=40usize {
        for peak in 1..=n {
            // canonical values: rise by 2 up to the peak, then fall by 2
            let vals: Vec<i64> =
                (1..=n as i64).map(|i| if i as usize <= peak { 2 * i } else { 2 * peak as i64 - 2 * (i - peak as i64) - 1 }).collect();
            let mut p = SliceProbe::new(vals.clone());
            let (at, v) = bitonic_max(n, &mut p).unwrap();
            assert_eq!(at, peak, "n = {n}");
            assert_eq!(v, vals[peak - 1]);
            assert!(p.probes() <= bitonic_budget(n), "n = {n} peak {peak}");
        }
    }
}

#[test]
fn bitonic_five_worst_case_is_four() {
    let worst = (1..=5)
        .map(|peak| {
            let vals: Vec<i32> = (1..=5).map(|i| if i <= peak { i } else { 2 * peak - i }).collect();
            let mut p = SliceProbe::new(vals);
            bitonic_max(5, &mut p).unwrap();
            p.probes()
        })
        .max()
        .unwrap();
    assert_eq!(worst, 4);
}

#[test]
fn set_equality_adversary_forces_triangle() {
    for n in 1..=12 {
        let mut adv = AdversarySetEquality::new(n).unwrap();
        assert!(sets_equal(&mut adv));
        assert_eq!(adv.queries(), (n * (n + 1) / 2) as u64);
        let (a, b) = adv.certify().unwrap();
        let mut truthful = TruthfulEquality::new(a, b).unwrap();
        for &(i, j, ans) in adv.transcript() {
            assert_eq!(truthful.equal(i, j), ans);
        }
    }
}

#[test]
fn set_equality_truthful() {
    let mut o = TruthfulEquality::new(vec![1], vec![2]).unwrap();
    assert!(!sets_equal(&mut o));
    assert_eq!(o.queries(), 1);
    let mut o = TruthfulEquality::new(vec![1, 2, 3, 4], vec![1, 2, 3, 4]).unwrap();
    assert!(sets_equal(&mut o));
    assert!(o.queries() <= 10);
}

#[test]
fn merge_adversary_forces_full_merge() {
    for n in 1..=64 {
        let mut adv = AdversaryMerge::new(n, n).unwrap();
        let (a, b) = (adv.run_a(), adv.run_b());
        merge_runs(&a, &b, &mut adv);
        assert_eq!(adv.comparisons(), 2 * n as u64 - 1);
        let keys = adv.certify().unwrap();
        assert!(replay_comparisons(&keys, adv.transcript()));
    }
}

fn labelings(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n)
        .map(move |mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(move |h| 2 * h.iter().filter(|&&x| x).count() > n)
}

#[test]
fn classify_group_all_worlds() {
    for n in 3..=12 {
        for honest in labelings(n) {
            for policy in [LiarPolicy::AlwaysLie, LiarPolicy::AlwaysYes, LiarPolicy::AlwaysNo, LiarPolicy::Seeded(n as u64)] {
                let mut w = FixedWorld::new(honest.clone(), policy);
                assert_eq!(classify_group(&mut w).unwrap(), honest, "n = {n} {policy:?}");
                assert!(w.questions() <= group_budget(n));
            }
        }
    }
}

/// Answers from a fixed bit script; questions past the script get "no" and
/// flag that the script was too short.
struct Scripted {
    n: usize,
    bits: Vec<bool>,
    log: Vec<(usize, usize, bool)>,
}

impl GroupOracle for Scripted {
    fn size(&self) -> usize {
        self.n
    }
    fn ask(&mut self, i: usize, j: usize) -> combinlab::Result<bool> {
        let a = self.bits.get(self.log.len()).copied().unwrap_or(false);
        self.log.push((i, j, a));
        Ok(a)
    }
    fn questions(&self) -> u64 {
        self.log.len() as u64
    }
}

fn has_world(n: usize, log: &[(usize, usize, bool)]) -> bool {
    (0u32..1 << n).any(|m| {
        let h = |v: usize| m >> v & 1 == 1;
        2 * m.count_ones() as usize > n && log.iter().all(|&(i, j, a)| !h(i) || h(j) == a)
    })
}

// Longest run of classify_group over every answer sequence that some
// honest-majority world could produce.
fn exact_worst(n: usize, bits: &mut Vec<bool>) -> u64 {
    let mut s = Scripted { n, bits: bits.clone(), log: Vec::new() };
    let _ = classify_group(&mut s);
    let asked = s.log.len();
    if !has_world(n, &s.log[..asked.min(bits.len())]) {
        return 0;
    }
    if asked <= bits.len() {
        return asked as u64;
    }
    let mut best = 0;
    for b in [false, true] {
        bits.push(b);
        best = best.max(exact_worst(n, bits));
        bits.pop();
    }
    best
}

#[test]
fn classify_group_exact_worst_case() {
    for n in 3..=9 {
        let w = exact_worst(n, &mut Vec::new());
        // odd n meets the budget exactly; even n finishes one question early
        let expect = if n % 2 == 1 { group_budget(n) } else { group_budget(n) - 1 };
        assert_eq!(w, expect, "n = {n}");
    }
}

#[test]
fn whoiswho_adversary_forces_budget() {
    for n in 3..=15 {
        let mut adv = AdversaryWhoIsWho::new(n).unwrap();
        let labels = classify_group(&mut adv).unwrap();
        let cert = adv.certify().unwrap();
        assert_eq!(labels, cert, "n = {n}");
        let mut replay = FixedWorld::new(cert, LiarPolicy::AlwaysLie);
        for &(i, j, a) in adv.transcript() {
            if replay.honest()[i] {
                assert_eq!(replay.ask(i, j).unwrap(), a);
            }
        }
        if n % 2 == 1 {
            assert_eq!(adv.questions(), group_budget(n), "n = {n}");
        } else {
            assert!(adv.questions() >= group_budget(n - 1), "n = {n}");
        }
    }
}
