//! Query oracles that count what they answer, plus adversaries.
//!
//! An adversary is just another oracle implementation: it picks answers that
//! keep the algorithm in the dark for as long as possible. Each adversary can
//! `certify` its transcript by producing a concrete input that a truthful
//! oracle would have answered identically.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Number of answered queries. Only ever incremented.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryCounter {
    count: u64,
}

impl QueryCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tick(&mut self) {
        self.count += 1;
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

/// Result of one weighing. `Left` means the left pan is heavier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BalanceOutcome {
    Left,
    Right,
    Equal,
}

/// Comparison oracle over the item ids `0..len()`.
pub trait Comparator {
    fn len(&self) -> usize;
    fn compare(&mut self, i: usize, j: usize) -> Ordering;
    fn comparisons(&self) -> u64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A comparison together with its answer, `(i, j, ordering of i vs j)`.
pub type CompareRecord = (usize, usize, Ordering);

/// Truthful comparator over a key vector.
#[derive(Debug, Clone)]
pub struct CountingComparator<K> {
    keys: Vec<K>,
    tie_break: bool,
    counter: QueryCounter,
    transcript: Vec<CompareRecord>,
}

impl<K: Ord + Clone> CountingComparator<K> {
    /// Requires pairwise distinct keys.
    pub fn new(keys: Vec<K>) -> Result<Self> {
        let mut sorted: Vec<&K> = keys.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NonStrictOrder);
        }
        Ok(Self { keys, tie_break: false, counter: QueryCounter::new(), transcript: Vec::new() })
    }

    /// Equal keys are ordered by index, which turns any weak order strict.
    pub fn with_tie_break(keys: Vec<K>) -> Self {
        Self { keys, tie_break: true, counter: QueryCounter::new(), transcript: Vec::new() }
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn transcript(&self) -> &[CompareRecord] {
        &self.transcript
    }

    pub fn reset(&mut self) {
        self.counter = QueryCounter::new();
        self.transcript.clear();
    }
}

impl<K: Ord + Clone> Comparator for CountingComparator<K> {
    fn len(&self) -> usize {
        self.keys.len()
    }

    fn compare(&mut self, i: usize, j: usize) -> Ordering {
        self.counter.tick();
        let mut o = self.keys[i].cmp(&self.keys[j]);
        if o == Ordering::Equal && self.tie_break {
            o = i.cmp(&j);
        }
        self.transcript.push((i, j, o));
        o
    }

    fn comparisons(&self) -> u64 {
        self.counter.count()
    }
}

/// Replays a comparison transcript against concrete keys.
pub fn replay_comparisons<K: Ord>(keys: &[K], transcript: &[CompareRecord]) -> bool {
    transcript.iter().all(|&(i, j, o)| keys[i].cmp(&keys[j]) == o)
}

/// Merge adversary for runs `a_1 < ... < a_m` (ids `0..m`) and
/// `b_1 < ... < b_n` (ids `m..m+n`): `a_i < b_j` exactly when `i < j`.
#[derive(Debug, Clone)]
pub struct AdversaryMerge {
    m: usize,
    n: usize,
    counter: QueryCounter,
    transcript: Vec<CompareRecord>,
}

impl AdversaryMerge {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::invalid("merge adversary needs m, n >= 1"));
        }
        Ok(Self { m, n, counter: QueryCounter::new(), transcript: Vec::new() })
    }

    pub fn run_a(&self) -> Vec<usize> {
        (0..self.m).collect()
    }

    pub fn run_b(&self) -> Vec<usize> {
        (self.m..self.m + self.n).collect()
    }

    pub fn transcript(&self) -> &[CompareRecord] {
        &self.transcript
    }

    // a_i sits at 2i and b_j at 2j - 1 (1-based), which is b1 < a1 < b2 < a2 < ...
    fn key(&self, id: usize) -> u64 {
        if id < self.m {
            2 * (id as u64 + 1)
        } else {
            2 * ((id - self.m) as u64 + 1) - 1
        }
    }

    /// Keys of the forced input, indexed by id.
    pub fn certify(&self) -> Result<Vec<u64>> {
        let keys: Vec<u64> = (0..self.m + self.n).map(|id| self.key(id)).collect();
        if replay_comparisons(&keys, &self.transcript) {
            Ok(keys)
        } else {
            Err(Error::AdversaryUnsound("merge transcript disagrees with forced order".into()))
        }
    }
}

impl Comparator for AdversaryMerge {
    fn len(&self) -> usize {
        self.m + self.n
    }

    fn compare(&mut self, i: usize, j: usize) -> Ordering {
        self.counter.tick();
        let o = self.key(i).cmp(&self.key(j));
        self.transcript.push((i, j, o));
        o
    }

    fn comparisons(&self) -> u64 {
        self.counter.count()
    }
}

/// Equality oracle for questions "is a_i = b_j?", indices `0..n`.
pub trait EqualityOracle {
    fn size(&self) -> usize;
    fn equal(&mut self, i: usize, j: usize) -> bool;
    fn queries(&self) -> u64;
}

#[derive(Debug, Clone)]
pub struct TruthfulEquality<K> {
    a: Vec<K>,
    b: Vec<K>,
    counter: QueryCounter,
}

impl<K: Eq> TruthfulEquality<K> {
    pub fn new(a: Vec<K>, b: Vec<K>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::invalid("sets must have the same size"));
        }
        Ok(Self { a, b, counter: QueryCounter::new() })
    }
}

impl<K: Eq> EqualityOracle for TruthfulEquality<K> {
    fn size(&self) -> usize {
        self.a.len()
    }

    fn equal(&mut self, i: usize, j: usize) -> bool {
        self.counter.tick();
        self.a[i] == self.b[j]
    }

    fn queries(&self) -> u64 {
        self.counter.count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Open,
    No,
    Yes,
}

/// Set-equality adversary: says "no" whenever the cells not yet marked "no"
/// still contain `n` independent cells (a perfect matching).
#[derive(Debug, Clone)]
pub struct AdversarySetEquality {
    n: usize,
    table: Vec<Vec<Cell>>,
    counter: QueryCounter,
    transcript: Vec<(usize, usize, bool)>,
}

impl AdversarySetEquality {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("set-equality adversary needs n >= 1"));
        }
        Ok(Self { n, table: vec![vec![Cell::Open; n]; n], counter: QueryCounter::new(), transcript: Vec::new() })
    }

    pub fn transcript(&self) -> &[(usize, usize, bool)] {
        &self.transcript
    }

    /// A perfect matching row -> column over cells not marked "no".
    fn matching(&self) -> Option<Vec<usize>> {
        let adj: Vec<Vec<usize>> = (0..self.n).map(|i| (0..self.n).filter(|&j| self.table[i][j] != Cell::No).collect()).collect();
        let m = bipartite_matching(self.n, self.n, &adj);
        if m.iter().all(|x| x.is_some()) {
            Some(m.into_iter().map(|x| x.unwrap()).collect())
        } else {
            None
        }
    }

    /// Concrete sets `(A, B)` with `A = {0..n}` consistent with every answer.
    pub fn certify(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let pairing = self.matching().ok_or_else(|| Error::AdversaryUnsound("no perfect matching survives".into()))?;
        let a: Vec<usize> = (0..self.n).collect();
        let mut b = vec![0; self.n];
        for (i, &j) in pairing.iter().enumerate() {
            b[j] = i;
        }
        for &(i, j, ans) in &self.transcript {
            if (a[i] == b[j]) != ans {
                return Err(Error::AdversaryUnsound(format!("cell ({i},{j}) contradicts the pairing")));
            }
        }
        Ok((a, b))
    }
}

impl EqualityOracle for AdversarySetEquality {
    fn size(&self) -> usize {
        self.n
    }

    fn equal(&mut self, i: usize, j: usize) -> bool {
        match self.table[i][j] {
            Cell::Yes => return true,
            Cell::No => return false,
            Cell::Open => {}
        }
        self.counter.tick();
        self.table[i][j] = Cell::No;
        let ans = if self.matching().is_some() {
            false
        } else {
            self.table[i][j] = Cell::Yes;
            true
        };
        self.transcript.push((i, j, ans));
        ans
    }

    fn queries(&self) -> u64 {
        self.counter.count()
    }
}

/// Maximum bipartite matching by augmenting paths. Returns, for each left
/// vertex, its matched right vertex.
pub fn bipartite_matching(left: usize, right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_r: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_r[v].is_none() || augment(match_r[v].unwrap(), adj, seen, match_r) {
                match_r[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut match_r: Vec<Option<usize>> = vec![None; right];
    for u in 0..left {
        let mut seen = vec![false; right];
        augment(u, adj, &mut seen, &mut match_r);
    }
    let mut match_l = vec![None; left];
    for (v, u) in match_r.iter().enumerate() {
        if let Some(u) = *u {
            match_l[u] = Some(v);
        }
    }
    match_l
}

/// Oracle for the group-membership question "member i, is member j honest?".
/// Members are `0..n`.
pub trait GroupOracle {
    fn size(&self) -> usize;
    fn ask(&mut self, i: usize, j: usize) -> Result<bool>;
    fn questions(&self) -> u64;
}

/// How dishonest members answer in a fixed world.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiarPolicy {
    AlwaysLie,
    AlwaysYes,
    AlwaysNo,
    /// Pseudo-random but deterministic in `(seed, i, j)`.
    Seeded(u64),
}

#[derive(Debug, Clone)]
pub struct FixedWorld {
    honest: Vec<bool>,
    policy: LiarPolicy,
    counter: QueryCounter,
}

impl FixedWorld {
    pub fn new(honest: Vec<bool>, policy: LiarPolicy) -> Self {
        Self { honest, policy, counter: QueryCounter::new() }
    }

    pub fn honest(&self) -> &[bool] {
        &self.honest
    }
}

impl GroupOracle for FixedWorld {
    fn size(&self) -> usize {
        self.honest.len()
    }

    fn ask(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::SelfQuestion);
        }
        self.counter.tick();
        let truth = self.honest[j];
        if self.honest[i] {
            return Ok(truth);
        }
        Ok(match self.policy {
            LiarPolicy::AlwaysLie => !truth,
            LiarPolicy::AlwaysYes => true,
            LiarPolicy::AlwaysNo => false,
            LiarPolicy::Seeded(s) => {
                let h = s ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (j as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
                h.count_ones() % 2 == 1
            }
        })
    }

    fn questions(&self) -> u64 {
        self.counter.count()
    }
}

/// Who-is-who adversary. The first `k = ceil((n-1)/2) - 1` questions get
/// "no"; their pairs form a graph `G` whose components drive later answers.
///
/// Later answers depend only on the member asked about and are remembered,
/// so each component ends up with at most one "yes".
#[derive(Debug, Clone)]
pub struct AdversaryWhoIsWho {
    n: usize,
    k: usize,
    first: Vec<(usize, usize)>,
    // component id per member once the first k questions are in; None = W
    comp: Option<Vec<Option<usize>>>,
    answer: HashMap<usize, bool>,
    counter: QueryCounter,
    transcript: Vec<(usize, usize, bool)>,
}

impl AdversaryWhoIsWho {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("who-is-who adversary needs n >= 3"));
        }
        let k = (n - 1).div_ceil(2) - 1;
        Ok(Self { n, k, first: Vec::new(), comp: None, answer: HashMap::new(), counter: QueryCounter::new(), transcript: Vec::new() })
    }

    pub fn transcript(&self) -> &[(usize, usize, bool)] {
        &self.transcript
    }

    fn components(&self) -> Vec<Option<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut in_v = vec![false; self.n];
        for &(i, j) in &self.first {
            in_v[i] = true;
            in_v[j] = true;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
        (0..self.n).map(|v| if in_v[v] { Some(find(&mut parent, v)) } else { None }).collect()
    }

    fn members_of(comp: &[Option<usize>], c: usize) -> impl Iterator<Item = usize> + '_ {
        comp.iter().enumerate().filter(move |(_, x)| **x == Some(c)).map(|(v, _)| v)
    }

    /// Honest/dishonest labels (situation A): honest members are W, every
    /// member that got a "yes", and in each component without a "yes" the
    /// smallest member that never got a "no".
    pub fn certify(&self) -> Result<Vec<bool>> {
        let comp = self.comp.clone().unwrap_or_else(|| self.components());
        let mut honest = vec![false; self.n];
        let mut done = std::collections::HashSet::new();
        for v in 0..self.n {
            match comp[v] {
                None => honest[v] = true,
                Some(c) => {
                    if !done.insert(c) {
                        continue;
                    }
                    let yes: Vec<usize> = Self::members_of(&comp, c).filter(|u| self.answer.get(u) == Some(&true)).collect();
                    if yes.len() > 1 {
                        return Err(Error::AdversaryUnsound("two yes answers in one component".into()));
                    }
                    let pick = match yes.first() {
                        Some(&y) => y,
                        None => Self::members_of(&comp, c)
                            .find(|u| self.answer.get(u) != Some(&false))
                            .ok_or_else(|| Error::AdversaryUnsound("component with every member refuted".into()))?,
                    };
                    honest[pick] = true;
                }
            }
        }
        if 2 * honest.iter().filter(|&&h| h).count() <= self.n {
            return Err(Error::AdversaryUnsound("certified world lacks an honest majority".into()));
        }
        for &(i, j, ans) in &self.transcript {
            if honest[i] && honest[j] != ans {
                return Err(Error::AdversaryUnsound(format!("honest member {i} answered falsely about {j}")));
            }
        }
        Ok(honest)
    }
}

impl GroupOracle for AdversaryWhoIsWho {
    fn size(&self) -> usize {
        self.n
    }

    fn ask(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::SelfQuestion);
        }
        if i >= self.n || j >= self.n {
            return Err(Error::OutOfRange(format!("member index {} >= {}", i.max(j), self.n)));
        }
        self.counter.tick();
        if self.first.len() < self.k {
            self.first.push((i, j));
            self.transcript.push((i, j, false));
            return Ok(false);
        }
        if self.comp.is_none() {
            self.comp = Some(self.components());
        }
        let comp = self.comp.as_ref().unwrap();
        let ans = match comp[j] {
            None => true,
            Some(c) => match self.answer.get(&j) {
                Some(&a) => a,
                None => {
                    let open = Self::members_of(comp, c).any(|v| v != j && self.answer.get(&v) != Some(&false));
                    !open
                }
            },
        };
        self.answer.insert(j, ans);
        self.transcript.push((i, j, ans));
        Ok(ans)
    }

    fn questions(&self) -> u64 {
        self.counter.count()
    }
}
