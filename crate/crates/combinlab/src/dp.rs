//! Dynamic programming: separable resource allocation, knapsack by Pareto
//! sets, longest common subsequence, matrix chains, parenthesization counts
//! and polygon triangulation.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `N` tasks; giving task `i` the amount `x` costs `cost[i][x]` and earns
/// `profit[i][x]`, for `x = 0..=b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationInstance {
    pub cost: Vec<Vec<u64>>,
    pub profit: Vec<Vec<u64>>,
    pub budget: u64,
}

impl AllocationInstance {
    pub fn new(cost: Vec<Vec<u64>>, profit: Vec<Vec<u64>>, budget: u64) -> Result<Self> {
        let inst = AllocationInstance { cost, profit, budget };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cost.len() != self.profit.len() {
            return Err(Error::invalid("cost and profit tables differ in task count"));
        }
        for (i, (c, p)) in self.cost.iter().zip(&self.profit).enumerate() {
            if c.len() != p.len() || c.is_empty() {
                return Err(Error::invalid(format!("task {}: tables must be non-empty and equally long", i + 1)));
            }
            if c[0] != 0 || p[0] != 0 {
                return Err(Error::invalid(format!("task {}: cost and profit must be 0 at 0", i + 1)));
            }
            if c.windows(2).any(|w| w[0] > w[1]) || p.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::invalid(format!("task {}: tables must be non-decreasing", i + 1)));
            }
        }
        Ok(())
    }

    /// The `(N, L)` special case: `cost_i(x) = x`, amounts `0..=l`.
    pub fn unit_cost(profit: Vec<Vec<u64>>, l: u64) -> Result<Self> {
        let cost = profit.iter().map(|p| (0..p.len() as u64).collect()).collect();
        AllocationInstance::new(cost, profit, l)
    }
}

/// `F(N, k)` and a plan `x_1..x_N` reaching it. Among equally good amounts
/// for a task the smallest is used.
pub fn allocate(inst: &AllocationInstance) -> Result<(u64, Vec<usize>)> {
    inst.validate()?;
    let k = inst.budget as usize;
    let n = inst.cost.len();
    let mut f = vec![vec![0u64; k + 1]; n + 1];
    let mut choice = vec![vec![0usize; k + 1]; n + 1];
    for i in 1..=n {
        let (c, p) = (&inst.cost[i - 1], &inst.profit[i - 1]);
        for j in 0..=k {
            let mut best = (0u64, 0usize);
            let mut found = false;
            for (x, (&cx, &px)) in c.iter().zip(p).enumerate() {
                if cx as usize > j {
                    continue;
                }
                let v = px + f[i - 1][j - cx as usize];
                if !found || v > best.0 {
                    best = (v, x);
                    found = true;
                }
            }
            f[i][j] = best.0;
            choice[i][j] = best.1;
        }
    }
    let mut plan = vec![0; n];
    let mut j = k;
    for i in (1..=n).rev() {
        plan[i - 1] = choice[i][j];
        j -= inst.cost[i - 1][plan[i - 1]] as usize;
    }
    Ok((f[n][k], plan))
}

/// A state `(S, c, w)`: item set, total value, total volume.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParetoEntry {
    pub items: Vec<usize>,
    pub value: u64,
    pub volume: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackSolution {
    /// 0-based item indices, ascending.
    pub items: Vec<usize>,
    pub value: u64,
    pub volume: u64,
}

fn check_knapsack(values: &[u64], volumes: &[u64]) -> Result<()> {
    if values.len() != volumes.len() {
        return Err(Error::invalid("values and volumes differ in length"));
    }
    Ok(())
}

/// The sets `M_0, M_1, ..., M_n`: after item `k`, every non-dominated state
/// over items `0..k` that fits the capacity, ascending by volume.
pub fn pareto_sets(values: &[u64], volumes: &[u64], capacity: u64) -> Result<Vec<Vec<ParetoEntry>>> {
    check_knapsack(values, volumes)?;
    let mut all = vec![vec![ParetoEntry { items: Vec::new(), value: 0, volume: 0 }]];
    for k in 0..values.len() {
        let prev = all.last().unwrap();
        let mut next = prev.clone();
        for e in prev {
            let w = e.volume + volumes[k];
            if w <= capacity {
                let mut items = e.items.clone();
                items.push(k);
                next.push(ParetoEntry { items, value: e.value + values[k], volume: w });
            }
        }
        // lighter first; among equal volume the more valuable, then the
        // lexicographically smaller set; keep only strict value records
        next.sort_by(|a, b| a.volume.cmp(&b.volume).then(b.value.cmp(&a.value)).then(a.items.cmp(&b.items)));
        let mut kept: Vec<ParetoEntry> = Vec::with_capacity(next.len());
        for e in next {
            if kept.last().is_none_or(|last| e.value > last.value) {
                kept.push(e);
            }
        }
        debug_assert!(kept.iter().all(|a| kept.iter().all(|b| a == b || !(b.value >= a.value && b.volume <= a.volume))));
        all.push(kept);
    }
    Ok(all)
}

/// Optimal 0-1 knapsack by Pareto sets with dominance pruning.
pub fn knapsack_pareto(values: &[u64], volumes: &[u64], capacity: u64) -> Result<KnapsackSolution> {
    let sets = pareto_sets(values, volumes, capacity)?;
    // the last entry has the largest value (values strictly increase)
    let best = sets.last().unwrap().last().unwrap().clone();
    Ok(KnapsackSolution { items: best.items, value: best.value, volume: best.volume })
}

/// Greedy by value density, highest first (ties by index); each item is
/// taken if it still fits. No optimality guarantee.
pub fn greedy_knapsack_by_density(values: &[u64], volumes: &[u64], capacity: u64) -> Result<KnapsackSolution> {
    check_knapsack(values, volumes)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    // c_i / v_i >= c_j / v_j  <=>  c_i v_j >= c_j v_i, zero volume first
    order.sort_by(|&i, &j| {
        let lhs = values[i] as u128 * volumes[j] as u128;
        let rhs = values[j] as u128 * volumes[i] as u128;
        match (volumes[i] == 0, volumes[j] == 0) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => rhs.cmp(&lhs),
        }
        .then(i.cmp(&j))
    });
    let mut items = Vec::new();
    let (mut value, mut volume) = (0, 0);
    for i in order {
        if volume + volumes[i] <= capacity {
            volume += volumes[i];
            value += values[i];
            items.push(i);
        }
    }
    items.sort_unstable();
    Ok(KnapsackSolution { items, value, volume })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arrow {
    Diag,
    Up,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsTables {
    pub c: Vec<Vec<usize>>,
    /// `b[i-1][j-1]` is the arrow of cell `(i, j)`.
    pub b: Vec<Vec<Arrow>>,
}

/// Longest common subsequence. Arrow ties resolve `Diag`, then `Up`
/// (when `c[i-1][j] >= c[i][j-1]`), then `Left`.
pub fn lcs<T: PartialEq + Clone>(x: &[T], y: &[T]) -> (usize, Vec<T>, LcsTables) {
    let (n, m) = (x.len(), y.len());
    let mut c = vec![vec![0; m + 1]; n + 1];
    let mut b = vec![vec![Arrow::Left; m]; n];
    for i in 1..=n {
        for j in 1..=m {
            if x[i - 1] == y[j - 1] {
                c[i][j] = c[i - 1][j - 1] + 1;
                b[i - 1][j - 1] = Arrow::Diag;
            } else if c[i - 1][j] >= c[i][j - 1] {
                c[i][j] = c[i - 1][j];
                b[i - 1][j - 1] = Arrow::Up;
            } else {
                c[i][j] = c[i][j - 1];
                b[i - 1][j - 1] = Arrow::Left;
            }
        }
    }
    let mut seq = Vec::with_capacity(c[n][m]);
    let (mut i, mut j) = (n, m);
    while i > 0 && j > 0 {
        match b[i - 1][j - 1] {
            Arrow::Diag => {
                seq.push(x[i - 1].clone());
                i -= 1;
                j -= 1;
            }
            Arrow::Up => i -= 1,
            Arrow::Left => j -= 1,
        }
    }
    seq.reverse();
    (c[n][m], seq, LcsTables { c, b })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainTables {
    /// `m[i][j]` for `1 <= i <= j <= n` (row and column 0 unused).
    pub m: Vec<Vec<u128>>,
    pub s: Vec<Vec<usize>>,
}

/// Cheapest way to multiply `A_1 ... A_n` where `A_i` is
/// `p[i-1] x p[i]`. Ties go to the smallest split.
pub fn matrix_chain(p: &[u64]) -> Result<(u128, String, ChainTables)> {
    if p.len() < 2 {
        return Err(Error::invalid("need at least one matrix"));
    }
    if p.contains(&0) {
        return Err(Error::invalid("dimensions must be positive"));
    }
    let w = |i: usize, k: usize, j: usize| p[i] as u128 * p[k] as u128 * p[j] as u128;
    let (cost, s, m) = chain_dp(p.len() - 1, &w);
    let parens = parenthesize(&s, 1, p.len() - 1);
    Ok((cost, parens, ChainTables { m, s }))
}

fn chain_dp<W: Fn(usize, usize, usize) -> u128>(n: usize, w: &W) -> (u128, Vec<Vec<usize>>, Vec<Vec<u128>>) {
    let mut m = vec![vec![0u128; n + 1]; n + 1];
    let mut s = vec![vec![0usize; n + 1]; n + 1];
    for len in 2..=n {
        for i in 1..=n - len + 1 {
            let j = i + len - 1;
            let mut best: Option<(u128, usize)> = None;
            for k in i..j {
                let q = m[i][k] + m[k + 1][j] + w(i - 1, k, j);
                if best.is_none_or(|(b, _)| q < b) {
                    best = Some((q, k));
                }
            }
            let (q, k) = best.unwrap();
            m[i][j] = q;
            s[i][j] = k;
        }
    }
    (m[1][n], s, m)
}

fn parenthesize(s: &[Vec<usize>], i: usize, j: usize) -> String {
    if i == j {
        format!("A{i}")
    } else {
        let k = s[i][j];
        format!("({}{})", parenthesize(s, i, k), parenthesize(s, k + 1, j))
    }
}

/// `P(n)`: the number of ways to parenthesize a product of `n` factors.
pub fn count_parenthesizations(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let mut p = vec![BigUint::zero(); n + 1];
    p[1] = BigUint::one();
    for len in 2..=n {
        let mut acc = BigUint::zero();
        for k in 1..len {
            acc += &p[k] * &p[len - k];
        }
        p[len] = acc;
    }
    p[n].clone()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub cost: i128,
    /// Chords `(a, b)` with `a < b`, polygon vertices numbered `0..=n`.
    pub diagonals: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
}

/// Minimum-weight triangulation of the convex polygon `v_0 ... v_n` under
/// the triangle weight `w(a, b, c)` (called with `a < b < c`).
pub fn polygon_triangulation<W: Fn(usize, usize, usize) -> i64>(vertices: usize, w: W) -> Result<Triangulation> {
    if vertices < 3 {
        return Err(Error::invalid("a polygon needs at least three vertices"));
    }
    let n = vertices - 1;
    let mut m = vec![vec![0i128; n + 1]; n + 1];
    let mut s = vec![vec![0usize; n + 1]; n + 1];
    for len in 2..=n {
        for i in 1..=n - len + 1 {
            let j = i + len - 1;
            let mut best: Option<(i128, usize)> = None;
            for k in i..j {
                let q = m[i][k] + m[k + 1][j] + w(i - 1, k, j) as i128;
                if best.is_none_or(|(b, _)| q < b) {
                    best = Some((q, k));
                }
            }
            let (q, k) = best.unwrap();
            m[i][j] = q;
            s[i][j] = k;
        }
    }
    let mut t = Triangulation { cost: m[1][n], diagonals: Vec::new(), triangles: Vec::new() };
    let mut stack = vec![(1, n)];
    while let Some((i, j)) = stack.pop() {
        if i >= j {
            continue;
        }
        let k = s[i][j];
        t.triangles.push((i - 1, k, j));
        if k - (i - 1) > 1 {
            t.diagonals.push((i - 1, k));
        }
        if j - k > 1 {
            t.diagonals.push((k, j));
        }
        stack.push((i, k));
        stack.push((k + 1, j));
    }
    t.diagonals.sort_unstable();
    t.triangles.sort_unstable();
    Ok(t)
}

/// Twice the area of the triangle on three integer points.
pub fn doubled_area(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocation_examples() {
        let inst = AllocationInstance::new(vec![vec![0, 2, 3]], vec![vec![0, 5, 6]], 2).unwrap();
        assert_eq!(allocate(&inst).unwrap(), (5, vec![1]));
        let lin = AllocationInstance::unit_cost(vec![vec![0, 1, 2, 3], vec![0, 2, 4, 6]], 3).unwrap();
        assert_eq!(allocate(&lin).unwrap(), (6, vec![0, 3]));
        assert!(AllocationInstance::new(vec![vec![1]], vec![vec![0]], 1).is_err());
        assert!(AllocationInstance::new(vec![vec![0, 2, 1]], vec![vec![0, 1, 2]], 1).is_err());
    }

    #[test]
    fn knapsack_capacity_85() {
        let (c, v) = ([160, 250, 180, 30], [40, 50, 40, 20]);
        let s = knapsack_pareto(&c, &v, 85).unwrap();
        assert_eq!((s.value, s.items), (340, vec![0, 2]));
        let g = greedy_knapsack_by_density(&c, &v, 85).unwrap();
        assert_eq!((g.value, g.volume, g.items), (280, 70, vec![1, 3]));
        let z = knapsack_pareto(&c, &v, 0).unwrap();
        assert_eq!((z.value, z.items.len()), (0, 0));
    }

    #[test]
    fn lcs_small_example() {
        let (len, z, t) = lcs(&['A', 'A', 'B'], &['B', 'A', 'A']);
        assert_eq!((len, z), (2, vec!['A', 'A']));
        assert_eq!(t.c[3][3], 2);
        assert_eq!(lcs::<char>(&[], &['A']).0, 0);
    }

    #[test]
    fn chain_examples() {
        let (cost, parens, _) = matrix_chain(&[10, 100, 5, 50]).unwrap();
        assert_eq!((cost, parens.as_str()), (7500, "((A1A2)A3)"));
        assert_eq!(matrix_chain(&[3, 4]).unwrap().0, 0);
        let p: Vec<u64> = (1..=12).map(|n| count_parenthesizations(n).try_into().unwrap()).collect();
        assert_eq!(&p[..5], &[1, 1, 2, 5, 14]);
        assert!(p[11] >= 16);
    }

    #[test]
    fn triangulation_examples() {
        let t = polygon_triangulation(3, |_, _, _| 7).unwrap();
        assert_eq!((t.cost, t.diagonals.len()), (7, 0));
        let pts = [(0, 0), (4, 0), (6, 3), (4, 6), (0, 5), (-2, 2)];
        let t = polygon_triangulation(6, |a, b, c| doubled_area(pts[a], pts[b], pts[c])).unwrap();
        assert_eq!(t.diagonals.len(), 3);
        let fan: i64 = (1..5).map(|i| doubled_area(pts[0], pts[i], pts[i + 1])).sum();
        assert_eq!(t.cost, fan as i128);
        let p = [10u64, 100, 5, 50];
        let t = polygon_triangulation(4, |a, b, c| (p[a] * p[b] * p[c]) as i64).unwrap();
        assert_eq!(t.cost, 7500);
    }
}
