//! Search puzzles solved with a worst-case optimal number of queries:
//! the radioactive ball, the counterfeit coin, the peak of a bitonic
//! sequence, set equality and "who is who".
//!
//! Balls, coins and bitonic positions are numbered from 1; coin 0 is the
//! extra coin known to be genuine. Group members are numbered from 0.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::intmath::{ceil_log3, pow3};
use crate::oracles::{BalanceOutcome, EqualityOracle, GroupOracle, QueryCounter};

/// Group tester for the radioactive-ball puzzle: is any ball of the subset
/// radioactive?
pub trait GroupTest {
    fn test(&mut self, subset: &[usize]) -> bool;
    fn tests(&self) -> u64;
}

#[derive(Debug, Clone)]
pub struct FixedRadioactive {
    index: usize,
    counter: QueryCounter,
}

impl FixedRadioactive {
    pub fn new(index: usize) -> Self {
        Self { index, counter: QueryCounter::new() }
    }
}

impl GroupTest for FixedRadioactive {
    fn test(&mut self, subset: &[usize]) -> bool {
        self.counter.tick();
        subset.contains(&self.index)
    }

    fn tests(&self) -> u64 {
        self.counter.count()
    }
}

/// Halving search: test the first `ceil(|I|/2)` candidates, keep the half
/// that must hold the ball. At most `ceil(log2 n)` tests. Every answer
/// pattern names exactly one ball, so nothing can be inconsistent here.
pub fn find_radioactive<T: GroupTest>(n: usize, tester: &mut T) -> Result<usize> {
    if n == 0 {
        return Err(Error::invalid("need at least one ball"));
    }
    let mut cand: Vec<usize> = (1..=n).collect();
    while cand.len() > 1 {
        let half = cand.len().div_ceil(2);
        if tester.test(&cand[..half]) {
            cand.truncate(half);
        } else {
            cand.drain(..half);
        }
    }
    Ok(cand[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Bias {
    Heavier,
    Lighter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CoinVerdict {
    AllGenuine,
    Counterfeit { index: usize, bias: Bias },
}

impl CoinVerdict {
    /// All `2n + 1` possible worlds for `n` suspect coins.
    pub fn all_worlds(n: usize) -> Vec<CoinVerdict> {
        let mut w = vec![CoinVerdict::AllGenuine];
        for index in 1..=n {
            w.push(CoinVerdict::Counterfeit { index, bias: Bias::Heavier });
            w.push(CoinVerdict::Counterfeit { index, bias: Bias::Lighter });
        }
        w
    }
}

/// Two-pan balance over coins `0..=n`.
pub trait Balance {
    fn weigh(&mut self, left: &[usize], right: &[usize]) -> BalanceOutcome;
    fn weighings(&self) -> u64;
}

#[derive(Debug, Clone)]
pub struct TruthfulBalance {
    world: CoinVerdict,
    counter: QueryCounter,
}

impl TruthfulBalance {
    pub fn new(world: CoinVerdict) -> Self {
        Self { world, counter: QueryCounter::new() }
    }
}

impl Balance for TruthfulBalance {
    fn weigh(&mut self, left: &[usize], right: &[usize]) -> BalanceOutcome {
        self.counter.tick();
        // pans with different coin counts are meaningless for this puzzle
        assert_eq!(left.len(), right.len(), "pans must hold equally many coins");
        match self.world {
            CoinVerdict::AllGenuine => BalanceOutcome::Equal,
            CoinVerdict::Counterfeit { index, bias } => {
                let on_left = left.contains(&index);
                let on_right = right.contains(&index);
                match (on_left, on_right, bias) {
                    (true, _, Bias::Heavier) | (_, true, Bias::Lighter) => BalanceOutcome::Left,
                    (true, _, Bias::Lighter) | (_, true, Bias::Heavier) => BalanceOutcome::Right,
                    _ => BalanceOutcome::Equal,
                }
            }
        }
    }

    fn weighings(&self) -> u64 {
        self.counter.count()
    }
}

/// `K_l = (3^l - 1) / 2`, the largest pool that `l` weighings settle when one
/// genuine coin is on hand.
pub fn k_pool(l: u32) -> u64 {
    (pow3(l) - 1) / 2
}

/// `ceil(log3(2n + 1))`, the weighing budget for `n` suspect coins.
pub fn coin_budget(n: u64) -> u32 {
    ceil_log3(2 * n + 1)
}

/// Finds the counterfeit coin (or proves there is none) within
/// `ceil(log3(2n+1))` weighings.
///
/// Unknown pool of `p` coins with budget `k`: set `K_{k-1}` coins aside and
/// weigh the rest half against half, topping up the short pan with a genuine
/// coin. Once the balance tips, every weighed coin is either a heavy or a
/// light suspect and the set-aside coins are genuine; from there each
/// weighing spreads the suspects over the three outcomes so that none keeps
/// more than `3^{k-1}` of them.
pub fn find_counterfeit<B: Balance>(n: usize, balance: &mut B) -> Result<CoinVerdict> {
    if n == 0 {
        return Err(Error::invalid("need at least one coin"));
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut genuine: Vec<usize> = vec![0];
    loop {
        let p = pool.len();
        if p == 0 {
            return Ok(CoinVerdict::AllGenuine);
        }
        let k = coin_budget(p as u64);
        let keep = k_pool(k - 1) as usize;
        let r = p - keep;
        let weighed: Vec<usize> = pool[..r].to_vec();
        let rest: Vec<usize> = pool[r..].to_vec();
        let half = r.div_ceil(2);
        let left = weighed[..half].to_vec();
        let mut right = weighed[half..].to_vec();
        if r % 2 == 1 {
            right.push(genuine[0]);
        }
        let pool_right: Vec<usize> = weighed[half..].to_vec();
        match balance.weigh(&left, &right) {
            BalanceOutcome::Equal => {
                genuine.extend(weighed);
                pool = rest;
            }
            BalanceOutcome::Left => {
                genuine.extend(rest);
                return settle_suspects(left, pool_right, genuine, balance);
            }
            BalanceOutcome::Right => {
                genuine.extend(rest);
                return settle_suspects(pool_right, left, genuine, balance);
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Split {
    hl: usize,
    hr: usize,
    ll: usize,
    lr: usize,
}

// Picks how many heavy and light suspects go on each pan so that each of the
// three outcomes keeps at most t suspects and the padding fits in `g`
// genuine coins.
fn choose_split(h: usize, l: usize, t: usize, g: usize) -> Option<Split> {
    let s = h + l;
    let lo = s.saturating_sub(t);
    let hi = s.min(2 * t);
    for w in (lo..=hi).rev() {
        let x_lo = w.saturating_sub(l);
        let x_hi = h.min(w);
        if x_lo > x_hi {
            continue;
        }
        for x in x_lo..=x_hi {
            let y = w - x;
            for hl in [x.div_ceil(2), x / 2] {
                for lr in [y.div_ceil(2), y / 2] {
                    let hr = x - hl;
                    let ll = y - lr;
                    if hl + lr > t || hr + ll > t {
                        continue;
                    }
                    let pad = (hl + ll).abs_diff(hr + lr);
                    if pad <= g {
                        return Some(Split { hl, hr, ll, lr });
                    }
                }
            }
        }
    }
    None
}

fn settle_suspects<B: Balance>(
    mut heavy: Vec<usize>,
    mut light: Vec<usize>,
    mut genuine: Vec<usize>,
    balance: &mut B,
) -> Result<CoinVerdict> {
    loop {
        let s = heavy.len() + light.len();
        match s {
            0 => return Err(Error::InconsistentBalance),
            1 => {
                return Ok(match heavy.first() {
                    Some(&index) => CoinVerdict::Counterfeit { index, bias: Bias::Heavier },
                    None => CoinVerdict::Counterfeit { index: light[0], bias: Bias::Lighter },
                })
            }
            _ => {}
        }
        let t = pow3(ceil_log3(s as u64) - 1) as usize;
        let sp = choose_split(heavy.len(), light.len(), t, genuine.len())
            .ok_or_else(|| Error::InconsistentOracle("no admissible weighing for the suspect set".into()))?;
        let hl: Vec<usize> = heavy[..sp.hl].to_vec();
        let hr: Vec<usize> = heavy[sp.hl..sp.hl + sp.hr].to_vec();
        let h_out: Vec<usize> = heavy[sp.hl + sp.hr..].to_vec();
        let ll: Vec<usize> = light[..sp.ll].to_vec();
        let lr: Vec<usize> = light[sp.ll..sp.ll + sp.lr].to_vec();
        let l_out: Vec<usize> = light[sp.ll + sp.lr..].to_vec();
        let mut left: Vec<usize> = hl.iter().chain(&ll).copied().collect();
        let mut right: Vec<usize> = hr.iter().chain(&lr).copied().collect();
        let mut g = genuine.iter().copied();
        while left.len() < right.len() {
            left.push(g.next().unwrap());
        }
        while right.len() < left.len() {
            right.push(g.next().unwrap());
        }
        let (nh, nl) = match balance.weigh(&left, &right) {
            BalanceOutcome::Left => (hl, lr),
            BalanceOutcome::Right => (hr, ll),
            BalanceOutcome::Equal => (h_out, l_out),
        };
        for c in heavy.iter().chain(&light) {
            if !nh.contains(c) && !nl.contains(c) {
                genuine.push(*c);
            }
        }
        heavy = nh;
        light = nl;
    }
}

/// Fibonacci numbers with `Φ_0 = Φ_1 = 1`.
#[derive(Debug, Clone)]
pub struct FibTable {
    phi: Vec<u64>,
}

impl FibTable {
    /// Table reaching at least `limit`.
    pub fn up_to(limit: u64) -> Self {
        let mut phi = vec![1u64, 1];
        while *phi.last().unwrap() <= limit || phi.len() < 4 {
            let k = phi.len();
            phi.push(phi[k - 1] + phi[k - 2]);
        }
        Self { phi }
    }

    pub fn phi(&self, k: usize) -> u64 {
        self.phi[k]
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// `λ_k = Φ_{k+1} - 1`, the longest sequence `k` probes can handle.
    pub fn lambda(&self, k: usize) -> u64 {
        self.phi[k + 1] - 1
    }

    /// The `k` with `Φ_k <= n < Φ_{k+1}`; for `n = 1` this is 1.
    pub fn index_for(&self, n: u64) -> usize {
        let mut k = 1;
        while self.phi[k + 1] <= n {
            k += 1;
        }
        k
    }
}

/// Value-at-position oracle, positions `1..=n`.
pub trait Probe<T> {
    fn probe(&mut self, i: usize) -> T;
    fn probes(&self) -> u64;
}

#[derive(Debug, Clone)]
pub struct SliceProbe<T> {
    values: Vec<T>,
    counter: QueryCounter,
}

impl<T: Clone> SliceProbe<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values, counter: QueryCounter::new() }
    }
}

impl<T: Clone> Probe<T> for SliceProbe<T> {
    fn probe(&mut self, i: usize) -> T {
        self.counter.tick();
        self.values[i - 1].clone()
    }

    fn probes(&self) -> u64 {
        self.counter.count()
    }
}

/// Probe budget for the peak of a bitonic sequence of length `n`.
pub fn bitonic_budget(n: usize) -> u64 {
    match n {
        0 => 0,
        1 => 1,
        2 => 2,
        _ => FibTable::up_to(n as u64).index_for(n as u64) as u64,
    }
}

struct PeakSearch<'a, T, P> {
    n: usize,
    probe: &'a mut P,
    seen: HashMap<usize, T>,
}

impl<T: Ord + Clone, P: Probe<T>> PeakSearch<'_, T, P> {
    fn get(&mut self, pos: usize) -> T {
        if let Some(v) = self.seen.get(&pos) {
            return v.clone();
        }
        let v = self.probe.probe(pos);
        self.seen.insert(pos, v.clone());
        v
    }

    // Positions past n are virtual: below every real value and decreasing.
    fn greater(&mut self, a: usize, b: usize) -> Result<bool> {
        match (a <= self.n, b <= self.n) {
            (true, true) => {
                // equal values can only sit on opposite slopes, so the peak
                // lies strictly between them and either branch keeps it
                let (va, vb) = (self.get(a), self.get(b));
                Ok(va > vb)
            }
            (true, false) => Ok(true),
            (false, true) => Ok(false),
            (false, false) => Ok(a < b),
        }
    }
}

/// Peak of a strictly bitonic sequence with at most `k` probes, where
/// `Φ_k <= n < Φ_{k+1}` (lengths 1 and 2 probe everything).
///
/// The search keeps a window of `Φ_p - 1` positions with a probed element at
/// relative position `Φ_{p-1}` and probes relative position `Φ_{p-2}`; the
/// surviving part is again such a window, read backwards when it is the
/// right part. Padding beyond `n` is virtual and costs nothing.
pub fn bitonic_max<T: Ord + Clone, P: Probe<T>>(n: usize, probe: &mut P) -> Result<(usize, T)> {
    if n == 0 {
        return Err(Error::invalid("empty sequence"));
    }
    let mut s = PeakSearch { n, probe, seen: HashMap::new() };
    let peak = match n {
        1 => {
            s.get(1);
            1
        }
        2 => {
            if s.greater(1, 2)? {
                1
            } else {
                2
            }
        }
        _ => {
            let fib = FibTable::up_to(n as u64);
            let k = fib.index_for(n as u64);
            let mut p = k + 1;
            let mut start = 1isize;
            let mut dir = 1isize;
            let abs = |start: isize, dir: isize, rel: u64| (start + dir * (rel as isize - 1)) as usize;
            let mut known = abs(start, dir, fib.phi(p - 1));
            while p > 2 {
                let cand = abs(start, dir, fib.phi(p - 2));
                if s.greater(cand, known)? {
                    known = cand;
                } else {
                    start = abs(start, dir, fib.phi(p) - 1) as isize;
                    dir = -dir;
                }
                p -= 1;
            }
            known
        }
    };
    if peak > n {
        return Err(Error::NotBitonic);
    }
    let mut probed: Vec<(usize, T)> = s.seen.into_iter().collect();
    probed.sort_by_key(|(i, _)| *i);
    let at = probed.iter().position(|(i, _)| *i == peak).ok_or(Error::NotBitonic)?;
    let rising = probed[..=at].windows(2).all(|w| w[0].1 < w[1].1);
    let falling = probed[at..].windows(2).all(|w| w[0].1 > w[1].1);
    if !rising || !falling {
        return Err(Error::NotBitonic);
    }
    Ok((peak, probed[at].1.clone()))
}

/// Compares each `a_i` with the unmatched `b`'s in order, dropping a `b`
/// once matched. At most `n(n+1)/2` questions.
pub fn sets_equal<O: EqualityOracle>(oracle: &mut O) -> bool {
    let n = oracle.size();
    let mut rest: Vec<usize> = (0..n).collect();
    for i in 0..n {
        match rest.iter().position(|&j| oracle.equal(i, j)) {
            Some(pos) => {
                rest.remove(pos);
            }
            None => return false,
        }
    }
    true
}

/// `ceil(3(n-1)/2)`.
pub fn group_budget(n: usize) -> u64 {
    (3 * (n as u64).saturating_sub(1)).div_ceil(2)
}

/// Labels every member honest (`true`) or not with at most
/// `ceil(3(n-1)/2)` questions, assuming a strict honest majority.
pub fn classify_group<O: GroupOracle>(oracle: &mut O) -> Result<Vec<bool>> {
    let n = oracle.size();
    if n < 3 {
        return Err(Error::invalid("group needs at least 3 members"));
    }
    let mut label: Vec<Option<bool>> = vec![None; n];
    let members: Vec<usize> = (0..n).collect();
    classify_subset(&members, oracle, &mut label)?;
    let labels: Vec<bool> = label.into_iter().map(|x| x.unwrap()).collect();
    if 2 * labels.iter().filter(|&&h| h).count() <= n {
        return Err(Error::InconsistentOracle("answers leave no honest majority".into()));
    }
    Ok(labels)
}

fn classify_subset<O: GroupOracle>(members: &[usize], oracle: &mut O, label: &mut [Option<bool>]) -> Result<()> {
    let m = members.len();
    let c = members[0];
    let cap = (m - 1) / 2;
    let mut yes = Vec::new();
    let mut no = Vec::new();
    let mut polled = 1;
    for &o in &members[1..] {
        polled += 1;
        if oracle.ask(o, c)? {
            yes.push(o);
        } else {
            no.push(o);
        }
        if no.len() > yes.len() || yes.len() == cap {
            break;
        }
    }
    let rest = &members[polled..];
    if no.len() > yes.len() {
        let j = yes.len();
        if j + 1 == cap || rest.len() < 3 {
            for &r in rest {
                label[r] = Some(true);
            }
        } else {
            classify_subset(rest, oracle, label)?;
        }
        let h = *rest
            .iter()
            .find(|&&r| label[r] == Some(true))
            .ok_or_else(|| Error::InconsistentOracle("no honest member left to consult".into()))?;
        let c_honest = oracle.ask(h, c)?;
        label[c] = Some(c_honest);
        let (settled, open) = if c_honest { (&no, &yes) } else { (&yes, &no) };
        for &x in settled {
            label[x] = Some(false);
        }
        for &x in open {
            label[x] = Some(oracle.ask(h, x)?);
        }
    } else {
        label[c] = Some(true);
        for &x in &no {
            label[x] = Some(false);
        }
        for &x in yes.iter().chain(rest) {
            label[x] = Some(oracle.ask(c, x)?);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{FixedWorld, LiarPolicy};

    #[test]
    fn radioactive_small() {
        let mut t = FixedRadioactive::new(1);
        assert_eq!(find_radioactive(1, &mut t).unwrap(), 1);
        assert_eq!(t.tests(), 0);
        for idx in 1..=4 {
            let mut t = FixedRadioactive::new(idx);
            assert_eq!(find_radioactive(4, &mut t).unwrap(), idx);
            assert_eq!(t.tests(), 2);
        }
    }

    #[test]
    fn counterfeit_single_coin() {
        for world in CoinVerdict::all_worlds(1) {
            let mut b = TruthfulBalance::new(world);
            assert_eq!(find_counterfeit(1, &mut b).unwrap(), world);
            assert_eq!(b.weighings(), 1);
        }
    }

    #[test]
    fn counterfeit_k2_and_k3() {
        for (n, budget) in [(4, 2), (13, 3)] {
            for world in CoinVerdict::all_worlds(n) {
                let mut b = TruthfulBalance::new(world);
                assert_eq!(find_counterfeit(n, &mut b).unwrap(), world);
                assert!(b.weighings() <= budget);
            }
        }
    }

    #[test]
    fn fib_table() {
        let f = FibTable::up_to(20);
        assert_eq!((f.phi(0), f.phi(1), f.phi(4), f.phi(6)), (1, 1, 5, 13));
        assert_eq!(f.index_for(5), 4);
        assert_eq!(f.index_for(7), 4);
        assert_eq!(f.lambda(4), 7);
    }

    #[test]
    fn bitonic_example() {
        let mut p = SliceProbe::new(vec![1, 3, 5, 7, 6, 4, 2]);
        assert_eq!(bitonic_max(7, &mut p).unwrap(), (4, 7));
        assert!(p.probes() <= 4);
        let mut one = SliceProbe::new(vec![9]);
        assert_eq!(bitonic_max(1, &mut one).unwrap(), (1, 9));
        assert_eq!(one.probes(), 1);
    }

    #[test]
    fn bitonic_rejects_valley() {
        let mut p = SliceProbe::new(vec![1, 2, 9, 3, 8, 4, 5]);
        assert_eq!(bitonic_max(7, &mut p), Err(Error::NotBitonic));
    }

    #[test]
    fn group_small_worlds() {
        let mut w = FixedWorld::new(vec![true; 3], LiarPolicy::AlwaysLie);
        assert_eq!(classify_group(&mut w).unwrap(), vec![true; 3]);
        assert!(w.questions() <= 3);
        let honest = vec![true, false, true, false, true];
        let mut w = FixedWorld::new(honest.clone(), LiarPolicy::AlwaysLie);
        assert_eq!(classify_group(&mut w).unwrap(), honest);
        assert!(w.questions() <= 6);
    }
}
