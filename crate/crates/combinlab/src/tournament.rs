//! Selection by comparisons: knockout maximum, max and min, top two,
//! top three and the t-th largest.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::intmath::ceil_log2;
use crate::oracles::Comparator;
use crate::sorting::{merge_insertion_by, CmpFn};

/// A played knockout bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnockoutTree {
    /// `rounds[0]` holds the entrants, `rounds[r]` the survivors of round `r`.
    pub rounds: Vec<Vec<usize>>,
    /// Entrants beaten by each id, in the order the matches were played.
    pub beaten: BTreeMap<usize, Vec<usize>>,
    pub champion: usize,
    pub matches: u64,
}

impl KnockoutTree {
    pub fn victims(&self, id: usize) -> &[usize] {
        self.beaten.get(&id).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of matches the champion played.
    pub fn champion_matches(&self) -> usize {
        self.victims(self.champion).len()
    }
}

fn greater(cmp: &mut CmpFn<'_>, a: usize, b: usize) -> bool {
    cmp(a, b) == Ordering::Greater
}

/// Knockout over `ids`; in an odd round the last entrant gets a bye.
pub fn knockout_by(ids: &[usize], cmp: &mut CmpFn<'_>) -> KnockoutTree {
    assert!(!ids.is_empty(), "knockout needs an entrant");
    let mut rounds = vec![ids.to_vec()];
    let mut beaten: BTreeMap<usize, Vec<usize>> = ids.iter().map(|&i| (i, Vec::new())).collect();
    let mut matches = 0;
    while rounds.last().unwrap().len() > 1 {
        let cur = rounds.last().unwrap();
        let mut next = Vec::with_capacity(cur.len().div_ceil(2));
        for pair in cur.chunks(2) {
            if let [a, b] = *pair {
                matches += 1;
                let (w, l) = if greater(cmp, a, b) { (a, b) } else { (b, a) };
                beaten.get_mut(&w).unwrap().push(l);
                next.push(w);
            } else {
                next.push(pair[0]);
            }
        }
        rounds.push(next);
    }
    let champion = rounds.last().unwrap()[0];
    KnockoutTree { rounds, beaten, champion, matches }
}

fn all_ids<C: Comparator>(cmp: &C) -> Vec<usize> {
    (0..cmp.len()).collect()
}

/// Maximum by knockout, `n - 1` comparisons.
pub fn tournament_max<C: Comparator>(cmp: &mut C) -> (usize, KnockoutTree) {
    let ids = all_ids(cmp);
    let t = knockout_by(&ids, &mut |a, b| cmp.compare(a, b));
    (t.champion, t)
}

fn linear_max(ids: &[usize], cmp: &mut CmpFn<'_>) -> usize {
    let mut best = ids[0];
    for &x in &ids[1..] {
        if greater(cmp, x, best) {
            best = x;
        }
    }
    best
}

fn linear_min(ids: &[usize], cmp: &mut CmpFn<'_>) -> usize {
    let mut best = ids[0];
    for &x in &ids[1..] {
        if greater(cmp, best, x) {
            best = x;
        }
    }
    best
}

/// `(argmax, argmin)` in at most `ceil(3n/2) - 2` comparisons: pair up,
/// then the maximum among the winners and the minimum among the losers.
pub fn max_and_min<C: Comparator>(cmp: &mut C) -> Result<(usize, usize)> {
    let n = cmp.len();
    if n == 0 {
        return Err(Error::invalid("max_and_min needs at least one item"));
    }
    let mut f = |a, b| cmp.compare(a, b);
    let mut hi = Vec::with_capacity(n / 2 + 1);
    let mut lo = Vec::with_capacity(n / 2 + 1);
    for i in (0..n - 1).step_by(2) {
        if greater(&mut f, i, i + 1) {
            hi.push(i);
            lo.push(i + 1);
        } else {
            hi.push(i + 1);
            lo.push(i);
        }
    }
    if n % 2 == 1 {
        hi.push(n - 1);
        lo.push(n - 1);
    }
    Ok((linear_max(&hi, &mut f), linear_min(&lo, &mut f)))
}

/// Largest and second largest, `n - 2 + ceil(log2 n)` comparisons at most.
pub fn top_two<C: Comparator>(cmp: &mut C) -> Result<(usize, usize)> {
    if cmp.len() < 2 {
        return Err(Error::invalid("top_two needs at least two items"));
    }
    let (first, tree) = tournament_max(cmp);
    let second = linear_max(tree.victims(first), &mut |a, b| cmp.compare(a, b));
    Ok((first, second))
}

/// Largest three, at most `n + 2 ceil(log2 n) - 3` comparisons.
///
/// Second place is decided by a serial mini-tournament over the champion's
/// victims (in round order). Third place is the best of everyone who lost
/// directly to second place, in the bracket or in the mini-tournament.
pub fn top_three<C: Comparator>(cmp: &mut C) -> Result<(usize, usize, usize)> {
    if cmp.len() < 3 {
        return Err(Error::invalid("top_three needs at least three items"));
    }
    let (first, tree) = tournament_max(cmp);
    let mut f = |a, b| cmp.compare(a, b);
    let contenders = tree.victims(first);
    let mut mini: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut second = contenders[0];
    for &c in &contenders[1..] {
        let (w, l) = if greater(&mut f, c, second) { (c, second) } else { (second, c) };
        mini.entry(w).or_default().push(l);
        second = w;
    }
    let mut pool: Vec<usize> = tree.victims(second).to_vec();
    pool.extend(mini.get(&second).into_iter().flatten());
    let third = linear_max(&pool, &mut f);
    Ok((first, second, third))
}

pub fn top_three_budget(n: u64) -> u64 {
    n + 2 * ceil_log2(n) as u64 - 3
}

/// Tournament bracket over leaf slots that can be refilled and replayed.
struct Bracket {
    // children of each match node; leaves have none
    kids: Vec<Option<(usize, usize)>>,
    parent: Vec<Option<usize>>,
    value: Vec<Option<usize>>,
}

impl Bracket {
    fn new(ids: &[usize], cmp: &mut CmpFn<'_>) -> Self {
        let m = ids.len();
        let mut b = Bracket { kids: vec![None; m], parent: vec![None; m], value: ids.iter().map(|&i| Some(i)).collect() };
        let mut level: Vec<usize> = (0..m).collect();
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            for pair in level.chunks(2) {
                if let [x, y] = *pair {
                    let node = b.kids.len();
                    b.kids.push(Some((x, y)));
                    b.parent.push(None);
                    b.value.push(None);
                    b.parent[x] = Some(node);
                    b.parent[y] = Some(node);
                    b.play(node, cmp);
                    next.push(node);
                } else {
                    next.push(pair[0]);
                }
            }
            level = next;
        }
        b
    }

    fn root(&self) -> usize {
        self.kids.len() - 1
    }

    fn play(&mut self, node: usize, cmp: &mut CmpFn<'_>) {
        let (x, y) = self.kids[node].unwrap();
        self.value[node] = match (self.value[x], self.value[y]) {
            (Some(a), Some(b)) => Some(if greater(cmp, a, b) { a } else { b }),
            (a, None) => a,
            (None, b) => b,
        };
    }

    fn leaf_of(&self, id: usize) -> usize {
        // the winner's leaf is found by walking down
        let mut node = self.root();
        while let Some((x, y)) = self.kids[node] {
            node = if self.value[x] == Some(id) { x } else { y };
        }
        node
    }

    /// Replaces the champion's leaf with `v` and replays its path.
    fn replace_champion(&mut self, v: Option<usize>, cmp: &mut CmpFn<'_>) {
        let champ = self.value[self.root()].unwrap();
        let mut node = self.leaf_of(champ);
        self.value[node] = v;
        while let Some(p) = self.parent[node] {
            self.play(p, cmp);
            node = p;
        }
    }
}

fn check_t(n: usize, t: usize) -> Result<()> {
    if t == 0 || t > n {
        return Err(Error::OutOfRange(format!("t = {t} not in 1..={n}")));
    }
    Ok(())
}

/// t-th largest by replacement: a bracket over the first `n - t + 2` items,
/// `t - 2` rounds in which the champion is discarded and a fresh item takes
/// its leaf, then the champion's leaf is emptied once more.
/// At most `n - t + (t - 1) ceil(log2(n + 2 - t))` comparisons.
pub fn select_t_tournament<C: Comparator>(cmp: &mut C, t: usize) -> Result<usize> {
    let n = cmp.len();
    check_t(n, t)?;
    if t == 1 {
        return Ok(tournament_max(cmp).0);
    }
    let mut f = |a, b| cmp.compare(a, b);
    let m = n - t + 2;
    let mut bracket = Bracket::new(&(0..m).collect::<Vec<_>>(), &mut f);
    for fresh in m..n {
        bracket.replace_champion(Some(fresh), &mut f);
    }
    bracket.replace_champion(None, &mut f);
    Ok(bracket.value[bracket.root()].unwrap())
}

pub fn select_t_tournament_budget(n: u64, t: u64) -> u64 {
    n - t + (t - 1) * ceil_log2(n + 2 - t) as u64
}

/// Sizes up to this are selected by sorting with merge insertion.
pub const LINEAR_BASE: usize = 1 << 10;

struct LinearSelect<'a, 'b> {
    cmp: &'a mut CmpFn<'b>,
    n_real: usize,
    next_id: usize,
}

impl LinearSelect<'_, '_> {
    // ids from n_real upward are -inf sentinels; comparing with one is free
    fn compare(&mut self, a: usize, b: usize) -> Ordering {
        match (a >= self.n_real, b >= self.n_real) {
            (false, false) => (self.cmp)(a, b),
            (true, true) => b.cmp(&a),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
        }
    }

    /// `(t-th largest, items above it, items below it)`.
    fn select(&mut self, mut ids: Vec<usize>, t: usize) -> (usize, Vec<usize>, Vec<usize>) {
        if ids.len() <= LINEAR_BASE {
            let mut sorted = merge_insertion_by(&ids, &mut |a, b| self.compare(a, b));
            sorted.reverse();
            let smaller = sorted.split_off(t);
            let ans = sorted.pop().unwrap();
            return (ans, sorted, smaller);
        }
        let groups = (ids.len() - 7).div_ceil(14) * 2 + 1;
        while ids.len() < 7 * groups {
            ids.push(self.next_id);
            self.next_id += 1;
        }
        let sorted: Vec<Vec<usize>> = ids.chunks(7).map(|g| merge_insertion_by(g, &mut |a, b| self.compare(a, b))).collect();
        let medians: Vec<usize> = sorted.iter().map(|g| g[3]).collect();
        let (pivot, above, _) = self.select(medians, groups / 2 + 1);
        let above: HashSet<usize> = above.into_iter().collect();
        let (mut hi, mut lo) = (Vec::new(), Vec::new());
        for g in &sorted {
            if g[3] == pivot {
                hi.extend_from_slice(&g[4..]);
                lo.extend_from_slice(&g[..3]);
                continue;
            }
            // one side of the group is known from its median; the other
            // three are settled middle-first in two comparisons
            let (known_hi, triple) = if above.contains(&g[3]) { (true, &g[..3]) } else { (false, &g[4..]) };
            if known_hi {
                hi.extend_from_slice(&g[3..]);
            } else {
                lo.extend_from_slice(&g[..4]);
            }
            if self.compare(triple[1], pivot) == Ordering::Greater {
                hi.extend_from_slice(&triple[1..]);
                let side = if self.compare(triple[0], pivot) == Ordering::Greater { &mut hi } else { &mut lo };
                side.push(triple[0]);
            } else {
                lo.extend_from_slice(&triple[..2]);
                let side = if self.compare(triple[2], pivot) == Ordering::Greater { &mut hi } else { &mut lo };
                side.push(triple[2]);
            }
        }
        match (t - 1).cmp(&hi.len()) {
            Ordering::Equal => (pivot, hi, lo),
            Ordering::Less => {
                let (ans, a, mut b) = self.select(hi, t);
                b.push(pivot);
                b.extend(lo);
                (ans, a, b)
            }
            Ordering::Greater => {
                let k = t - hi.len() - 1;
                let (ans, a, b) = self.select(lo, k);
                hi.push(pivot);
                hi.extend(a);
                (ans, hi, b)
            }
        }
    }
}

/// t-th largest in at most `15n - 163` comparisons for `n > 32`.
///
/// Groups of seven, median of medians, a three-way split and recursion into
/// one side. Sizes up to [`LINEAR_BASE`] are sorted by merge insertion.
/// Inputs are padded to `7(2q + 1)` with `-inf` sentinels.
pub fn select_t_linear<C: Comparator>(cmp: &mut C, t: usize) -> Result<usize> {
    let n = cmp.len();
    check_t(n, t)?;
    let mut f = |a, b| cmp.compare(a, b);
    let mut sel = LinearSelect { cmp: &mut f, n_real: n, next_id: n };
    Ok(sel.select((0..n).collect(), t).0)
}

pub fn select_t_linear_budget(n: u64) -> i64 {
    15 * n as i64 - 163
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::CountingComparator;

    fn cc(keys: Vec<u32>) -> CountingComparator<u32> {
        CountingComparator::new(keys).unwrap()
    }

    #[test]
    fn knockout_basics() {
        let mut c = cc(vec![3, 7, 1, 8, 2, 6, 5, 4]);
        let (w, t) = tournament_max(&mut c);
        assert_eq!(w, 3);
        assert_eq!(c.comparisons(), 7);
        assert_eq!(t.champion_matches(), 3);
        let mut c = cc(vec![9]);
        assert_eq!(tournament_max(&mut c).0, 0);
        assert_eq!(c.comparisons(), 0);
    }

    #[test]
    fn bye_goes_to_last() {
        let mut c = cc(vec![1, 2, 3]);
        let (_, t) = tournament_max(&mut c);
        assert_eq!(t.rounds[1], vec![1, 2]);
    }

    #[test]
    fn small_selections() {
        let mut c = cc(vec![4, 9, 2, 7, 5, 1, 8]);
        assert_eq!(max_and_min(&mut c).unwrap(), (1, 5));
        assert!(c.comparisons() <= 9);
        let mut c = cc(vec![4, 9, 2, 7, 5, 1]);
        assert_eq!(top_two(&mut c).unwrap(), (1, 3));
        assert!(c.comparisons() <= 7);
        let mut c = cc(vec![4, 9, 2, 7, 5, 1, 8, 3]);
        assert_eq!(top_three(&mut c).unwrap(), (1, 6, 3));
        assert!(c.comparisons() <= 11);
    }

    #[test]
    fn select_examples() {
        let keys = vec![6u32, 1, 4, 3, 5, 2];
        let mut c = cc(keys.clone());
        assert_eq!(select_t_tournament(&mut c, 6).unwrap(), 1);
        let keys: Vec<u32> = vec![3, 10, 7, 1, 9, 4, 8, 2, 6, 5];
        let mut c = cc(keys);
        assert_eq!(select_t_tournament(&mut c, 3).unwrap(), 6);
        assert!(c.comparisons() <= 15);
        assert!(select_t_tournament(&mut c, 0).is_err());
        assert!(select_t_linear(&mut c, 11).is_err());
    }

    #[test]
    fn linear_select_large() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [1025usize, 1500, 2000] {
            let mut keys: Vec<u32> = (0..n as u32).collect();
            keys.shuffle(&mut rng);
            for t in [1, n / 2, n] {
                let mut c = cc(keys.clone());
                let got = select_t_linear(&mut c, t).unwrap();
                assert_eq!(keys[got] as usize, n - t);
                assert!(c.comparisons() as i64 <= select_t_linear_budget(n as u64));
            }
        }
    }
}
