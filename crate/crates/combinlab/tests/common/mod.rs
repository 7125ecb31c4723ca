//! Brute-force oracles and random instances shared by the integration tests.
#![allow(dead_code)]

use combinlab::dp::AllocationInstance;
use combinlab::graph::{Digraph, Graph};
use combinlab::paths::{Weight, WeightedDigraph, WeightedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn w(x: i64) -> Weight {
    Weight::from_integer(x)
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, edges).unwrap()
}

pub fn random_digraph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Digraph {
    let arcs = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v).filter(|_| rng.gen_bool(p)).collect();
    Digraph::new(n, arcs).unwrap()
}

pub fn random_weighted_digraph<R: Rng>(n: usize, p: f64, lo: i64, hi: i64, rng: &mut R) -> WeightedDigraph {
    let d = random_digraph(n, p, rng);
    let arcs = d.arcs().iter().map(|&(u, v)| (u, v, w(rng.gen_range(lo..=hi)))).collect();
    WeightedDigraph::new(n, arcs).unwrap()
}

/// `reach[u][v]`: a walk of length >= 0 from `u` to `v`.
pub fn reachability(d: &Digraph) -> Vec<Vec<bool>> {
    let n = d.n();
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &v in d.successors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Classes of mutual reachability, each sorted, sorted by first element.
pub fn mutual_reachability_classes(d: &Digraph) -> Vec<Vec<usize>> {
    let r = reachability(d);
    let n = d.n();
    let mut done = vec![false; n];
    let mut out = Vec::new();
    for u in 0..n {
        if done[u] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&v| r[u][v] && r[v][u]).collect();
        class.iter().for_each(|&v| done[v] = true);
        out.push(class);
    }
    out
}

pub fn normalize(mut parts: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    parts.iter_mut().for_each(|p| p.sort_unstable());
    parts.sort();
    parts
}

/// Every simple directed cycle, as a vertex list starting at its smallest vertex.
pub fn simple_cycles(d: &Digraph) -> Vec<Vec<usize>> {
    fn extend(d: &Digraph, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        for &v in d.successors(u) {
            if v == start {
                out.push(path.clone());
            } else if v > start && !on[v] {
                on[v] = true;
                path.push(v);
                extend(d, start, path, on, out);
                path.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..d.n() {
        let mut on = vec![false; d.n()];
        on[s] = true;
        extend(d, s, &mut vec![s], &mut on, &mut out);
    }
    out
}

pub fn cycle_weight(g: &WeightedDigraph, c: &[usize]) -> Weight {
    (0..c.len()).map(|i| g.weight(c[i], c[(i + 1) % c.len()]).unwrap()).sum()
}

/// Vertices with a negative closed walk through them: those that share a
/// strongly connected component with a vertex of some negative simple cycle.
pub fn negative_closed_walk_vertices(g: &WeightedDigraph) -> Vec<usize> {
    let r = reachability(g.digraph());
    let on_neg: Vec<usize> = simple_cycles(g.digraph()).into_iter().filter(|c| cycle_weight(g, c) < w(0)).flatten().collect();
    (0..g.n()).filter(|&v| on_neg.iter().any(|&c| r[v][c] && r[c][v])).collect()
}

/// Shortest walk weights when no negative cycle exists, by relaxing `n` rounds.
pub fn bellman_ford_row(g: &WeightedDigraph, s: usize) -> Vec<Option<Weight>> {
    let mut d = vec![None; g.n()];
    d[s] = Some(w(0));
    for _ in 0..g.n() {
        for (u, v, x) in g.arcs() {
            if let Some(du) = d[u] {
                if d[v].is_none_or(|dv| du + x < dv) {
                    d[v] = Some(du + x);
                }
            }
        }
    }
    d
}

fn components_of(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut c = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            c -= 1;
        }
    }
    c
}

pub type EdgeSet = Vec<(usize, usize)>;

/// Minimum weight over all `(n-1)`-edge acyclic subsets; `None` if disconnected.
pub fn brute_mst(g: &WeightedGraph) -> Option<(Weight, Vec<EdgeSet>)> {
    let n = g.n();
    let edges = g.edges();
    if n <= 1 {
        return Some((w(0), vec![Vec::new()]));
    }
    let mut best: Option<(Weight, Vec<EdgeSet>)> = None;
    let mut pick = Vec::new();
    fn rec(
        edges: &[(usize, usize, Weight)],
        i: usize,
        need: usize,
        n: usize,
        pick: &mut Vec<usize>,
        best: &mut Option<(Weight, Vec<EdgeSet>)>,
    ) {
        if pick.len() == need {
            let set: Vec<(usize, usize)> = pick.iter().map(|&k| (edges[k].0.min(edges[k].1), edges[k].0.max(edges[k].1))).collect();
            if components_of(n, &set) == 1 {
                let total: Weight = pick.iter().map(|&k| edges[k].2).sum();
                let mut sorted = set;
                sorted.sort_unstable();
                match best {
                    Some((b, trees)) if total == *b => trees.push(sorted),
                    Some((b, _)) if total > *b => {}
                    _ => *best = Some((total, vec![sorted])),
                }
            }
            return;
        }
        if edges.len() - i < need - pick.len() {
            return;
        }
        pick.push(i);
        rec(edges, i + 1, need, n, pick, best);
        pick.pop();
        rec(edges, i + 1, need, n, pick, best);
    }
    rec(&edges, 0, n - 1, n, &mut pick, &mut best);
    best
}

pub fn brute_knapsack(values: &[u64], volumes: &[u64], cap: u64) -> u64 {
    (0u32..1 << values.len())
        .filter_map(|m| {
            let pick = |xs: &[u64]| (0..xs.len()).filter(|i| m >> i & 1 == 1).map(|i| xs[i]).sum::<u64>();
            (pick(volumes) <= cap).then(|| pick(values))
        })
        .max()
        .unwrap()
}

/// Longest common subsequence length by testing every subsequence of `x`.
pub fn brute_lcs<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    let is_subseq = |s: &[&T]| {
        let mut it = y.iter();
        s.iter().all(|c| it.any(|d| d == *c))
    };
    (0u32..1 << x.len())
        .filter_map(|m| {
            let s: Vec<&T> = (0..x.len()).filter(|i| m >> i & 1 == 1).map(|i| &x[i]).collect();
            is_subseq(&s).then_some(s.len())
        })
        .max()
        .unwrap()
}

/// Cheapest full parenthesization of `A_i .. A_j` (0-based), by trying every split recursively.
pub fn brute_chain(p: &[u64], i: usize, j: usize) -> u128 {
    if i == j {
        return 0;
    }
    (i..j).map(|k| brute_chain(p, i, k) + brute_chain(p, k + 1, j) + p[i] as u128 * p[k + 1] as u128 * p[j + 1] as u128).min().unwrap()
}

/// Every triangulation of the polygon `lo..=hi`, as the triangle lists' minimum weight.
pub fn brute_triangulation(lo: usize, hi: usize, wt: &dyn Fn(usize, usize, usize) -> i64) -> i128 {
    if hi - lo < 2 {
        return 0;
    }
    // the edge lo-hi lies in exactly one triangle (lo, k, hi)
    (lo + 1..hi).map(|k| wt(lo, k, hi) as i128 + brute_triangulation(lo, k, wt) + brute_triangulation(k, hi, wt)).min().unwrap()
}

/// Best profit over every amount vector within budget.
pub fn brute_allocate(inst: &AllocationInstance) -> u64 {
    fn rec(inst: &AllocationInstance, i: usize, left: u64) -> u64 {
        if i == inst.cost.len() {
            return 0;
        }
        (0..inst.cost[i].len())
            .filter(|&x| inst.cost[i][x] <= left)
            .map(|x| inst.profit[i][x] + rec(inst, i + 1, left - inst.cost[i][x]))
            .max()
            .unwrap()
    }
    rec(inst, 0, inst.budget)
}

pub fn random_allocation<R: Rng>(tasks: usize, amounts: usize, budget: u64, rng: &mut R) -> AllocationInstance {
    let table = |rng: &mut R, step: u64| {
        let mut t = vec![0u64];
        for _ in 1..amounts {
            let last = *t.last().unwrap();
            t.push(last + rng.gen_range(0..=step));
        }
        t
    };
    let cost = (0..tasks).map(|_| table(rng, 3)).collect();
    let profit = (0..tasks).map(|_| table(rng, 9)).collect();
    AllocationInstance::new(cost, profit, budget).unwrap()
}

pub fn shuffled<R: Rng>(n: usize, rng: &mut R) -> Vec<u32> {
    let mut v: Vec<u32> = (0..n as u32).collect();
    v.shuffle(rng);
    v
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut v: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![v.clone()];
    loop {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return out };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
}
