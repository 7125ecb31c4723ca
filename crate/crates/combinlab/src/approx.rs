//! Approximation algorithms, the instances that break the unguarded ones,
//! and a seeded harness comparing each heuristic with an exact optimum.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::complexity::brute::{min_set_cover, min_vertex_cover, tsp_optimum};
use crate::complexity::verify::tour_cost;
use crate::complexity::SetSystem;
use crate::dp::knapsack_pareto;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::intmath::harmonic;
use crate::paths::{prim, Weight, WeightedGraph};

pub type Q = Ratio<i64>;

// ---------------------------------------------------------------- vertex cover

/// Take both ends of every edge whose ends are still uncovered, in edge order.
pub fn vc_matching_2approx(g: &Graph) -> Vec<usize> {
    let mut taken = vec![false; g.n()];
    for &(u, v) in g.edges() {
        if !taken[u] && !taken[v] {
            taken[u] = true;
            taken[v] = true;
        }
    }
    (0..g.n()).filter(|&v| taken[v]).collect()
}

/// Repeatedly take a vertex of largest remaining degree (smallest index on
/// ties) and delete its edges. Sorted output.
pub fn vc_degree_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut cover = Vec::new();
    while let Some(v) = (0..n).filter(|&v| !gone[v] && deg[v] > 0).max_by(|&a, &b| deg[a].cmp(&deg[b]).then(b.cmp(&a))) {
        gone[v] = true;
        cover.push(v);
        for &u in g.neighbors(v) {
            if !gone[u] {
                deg[u] -= 1;
            }
        }
        deg[v] = 0;
    }
    cover.sort_unstable();
    cover
}

pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in cover {
        inside[v] = true;
    }
    g.edges().iter().all(|&(u, v)| inside[u] || inside[v])
}

/// Bipartite graph on which [`vc_degree_greedy`] takes every gadget vertex.
///
/// For each `k = 1..=n` there are `floor(n/k)` gadget vertices, each joined
/// to its own block of `k` core vertices. Gadgets are numbered first, larger
/// `k` first, and the `n` core vertices last, so every degree tie goes to a
/// gadget. The core is a cover and the `k = 1` gadgets hang a matching of
/// size `n` off it, so the optimum is exactly `n` while greedy takes
/// `sum floor(n/k)` vertices.
pub fn vc_greedy_counterexample(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::invalid("counterexample needs n >= 2"));
    }
    let gadgets: usize = (1..=n).map(|k| n / k).sum();
    let core = |i: usize| gadgets + i;
    let mut edges = Vec::new();
    let mut g = 0;
    for k in (1..=n).rev() {
        for block in 0..n / k {
            for i in 0..k {
                edges.push((g, core(block * k + i)));
            }
            g += 1;
        }
    }
    Graph::new(gadgets + n, edges)
}

/// Core vertices of [`vc_greedy_counterexample`], an optimal cover.
pub fn counterexample_core(n: usize) -> Vec<usize> {
    let gadgets: usize = (1..=n).map(|k| n / k).sum();
    (gadgets..gadgets + n).collect()
}

// ------------------------------------------------------------------- set cover

/// Greedy: the set covering most still-uncovered elements, first index on
/// ties. Errors when the family does not cover the universe.
pub fn set_cover_greedy(s: &SetSystem) -> Result<Vec<usize>> {
    if !s.covers() {
        return Err(Error::invalid("family does not cover the universe"));
    }
    let mut covered = vec![false; s.universe()];
    let mut left = s.universe();
    let mut picked = Vec::new();
    while left > 0 {
        let gain = |i: usize| s.family()[i].iter().filter(|&&e| !covered[e]).count();
        let best = (0..s.m()).max_by(|&a, &b| gain(a).cmp(&gain(b)).then(b.cmp(&a))).expect("covering family is non-empty");
        for &e in &s.family()[best] {
            if !covered[e] {
                covered[e] = true;
                left -= 1;
            }
        }
        picked.push(best);
    }
    Ok(picked)
}

// ------------------------------------------------------------------------- TSP

/// Symmetric non-negative matrix with zero diagonal obeying the triangle
/// inequality on every triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricTsp {
    cost: Vec<Vec<i64>>,
}

impl MetricTsp {
    pub fn new(cost: Vec<Vec<i64>>) -> Result<Self> {
        let n = cost.len();
        if n < 3 {
            return Err(Error::invalid("metric TSP needs at least 3 cities"));
        }
        if cost.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("cost matrix is not square"));
        }
        for i in 0..n {
            if cost[i][i] != 0 {
                return Err(Error::invalid(format!("c[{i}][{i}] is not zero")));
            }
            for j in 0..n {
                if cost[i][j] < 0 || cost[i][j] != cost[j][i] {
                    return Err(Error::invalid(format!("c[{i}][{j}] is negative or asymmetric")));
                }
                for k in 0..n {
                    if cost[i][j] as i128 > cost[i][k] as i128 + cost[k][j] as i128 {
                        return Err(Error::invalid(format!("triangle inequality fails at ({i}, {k}, {j})")));
                    }
                }
            }
        }
        Ok(MetricTsp { cost })
    }

    pub fn n(&self) -> usize {
        self.cost.len()
    }

    pub fn cost(&self) -> &[Vec<i64>] {
        &self.cost
    }
}

fn mst_edges(cost: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let n = cost.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| (u, v, Weight::from_integer(cost[u][v]))).collect();
    let g = WeightedGraph::new(n, edges).expect("complete graph");
    prim(&g).expect("complete graph is connected").edges.into_iter().map(|(u, v, _)| (u, v)).collect()
}

/// Closed Euler walk of a connected multigraph with even degrees, from `start`.
/// Edges are used in list order at each vertex.
fn euler_walk_multi(n: usize, edges: &[(usize, usize)], start: usize) -> Vec<usize> {
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        inc[u].push(i);
        inc[v].push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n];
    let mut stack = vec![start];
    let mut walk = Vec::with_capacity(edges.len() + 1);
    while let Some(&u) = stack.last() {
        while next[u] < inc[u].len() && used[inc[u][next[u]]] {
            next[u] += 1;
        }
        if next[u] == inc[u].len() {
            walk.push(u);
            stack.pop();
        } else {
            let e = inc[u][next[u]];
            used[e] = true;
            let (a, b) = edges[e];
            stack.push(if a == u { b } else { a });
        }
    }
    walk.reverse();
    walk
}

/// Keep the first occurrence of each vertex.
fn shortcut(walk: &[usize], n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    walk.iter().copied().filter(|&v| !std::mem::replace(&mut seen[v], true)).collect()
}

/// Double every edge of a minimum spanning tree, walk the Euler circuit from
/// city 0 and shortcut repeats. Works on any matrix; the factor-2 guarantee
/// needs the triangle inequality.
pub fn double_tree_tour(cost: &[Vec<i64>]) -> Vec<usize> {
    let n = cost.len();
    let t = mst_edges(cost);
    let doubled: Vec<(usize, usize)> = t.iter().flat_map(|&e| [e, e]).collect();
    shortcut(&euler_walk_multi(n, &doubled, 0), n)
}

pub fn tsp_double_tree(inst: &MetricTsp) -> Vec<usize> {
    double_tree_tour(&inst.cost)
}

/// Largest vertex count [`min_perfect_matching_exact`] accepts.
pub const MATCHING_LIMIT: usize = 20;

/// Minimum-weight perfect matching on `vertices` by dynamic programming over
/// subsets: the lowest unmatched vertex is paired with each other one.
pub fn min_perfect_matching_exact(vertices: &[usize], w: impl Fn(usize, usize) -> i64) -> Result<(i64, Vec<(usize, usize)>)> {
    let m = vertices.len();
    if m % 2 == 1 {
        return Err(Error::invalid(format!("perfect matching needs an even vertex count, got {m}")));
    }
    if m > MATCHING_LIMIT {
        return Err(Error::TooLarge(format!("{m} vertices to match, limit {MATCHING_LIMIT}")));
    }
    let full = (1usize << m) - 1;
    // best[mask]: cheapest matching of the vertices in mask
    let mut best = vec![i64::MAX; 1 << m];
    let mut choice = vec![0usize; 1 << m];
    best[0] = 0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut r = rest;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            r &= r - 1;
            let sub = rest & !(1 << j);
            if best[sub] != i64::MAX {
                let c = best[sub] + w(vertices[i], vertices[j]);
                if c < best[mask] {
                    best[mask] = c;
                    choice[mask] = j;
                }
            }
        }
    }
    let mut pairs = Vec::with_capacity(m / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = choice[mask];
        pairs.push((vertices[i], vertices[j]));
        mask &= !(1 << i) & !(1 << j);
    }
    Ok((best[full], pairs))
}

/// MST plus a minimum perfect matching on its odd-degree vertices, Euler
/// walk from city 0, shortcut to first occurrences.
pub fn tsp_christofides(inst: &MetricTsp) -> Result<Vec<usize>> {
    let n = inst.n();
    let cost = &inst.cost;
    let t = mst_edges(cost);
    let mut deg = vec![0usize; n];
    for &(u, v) in &t {
        deg[u] += 1;
        deg[v] += 1;
    }
    let odd: Vec<usize> = (0..n).filter(|&v| deg[v] % 2 == 1).collect();
    let (_, f) = min_perfect_matching_exact(&odd, |a, b| cost[a][b]).map_err(|e| match e {
        Error::TooLarge(m) => Error::TooLarge(format!("{m}; use the double-tree heuristic instead")),
        other => other,
    })?;
    let mut multi = t;
    multi.extend(f);
    Ok(shortcut(&euler_walk_multi(n, &multi, 0), n))
}

/// Costs 1 on the edges of `g` and `ceil((1+eps)|V|) + 1` elsewhere. A tour
/// costs `|V|` exactly when it follows a Hamiltonian cycle of `g`; any other
/// tour costs more than `(1+eps)|V|`. The ceiling keeps costs integral and
/// equals the exact value whenever `(1+eps)|V|` is an integer.
pub fn tsp_gap_instance(g: &Graph, eps: Q) -> Result<Vec<Vec<i64>>> {
    if eps < Q::zero() {
        return Err(Error::invalid("eps must be non-negative"));
    }
    let n = g.n();
    let far = ((Q::from_integer(1) + eps) * Q::from_integer(n as i64)).ceil().to_integer() + 1;
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0
                    } else if g.has_edge(i, j) {
                        1
                    } else {
                        far
                    }
                })
                .collect()
        })
        .collect())
}

/// Random graph on `n` vertices containing a Hamiltonian cycle along a random
/// permutation; the other pairs are edges with probability `p`.
pub fn planted_hamiltonian_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (perm[i], perm[(i + 1) % n])).map(|(a, b)| (a.min(b), a.max(b))).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::new(n, edges).expect("distinct pairs")
}

// --------------------------------------------------------------------- max cut

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutResult {
    /// The side `V'`, ascending.
    pub side: Vec<usize>,
    pub cut: usize,
    pub moves: usize,
}

/// Start from `V' = {}` and move single vertices across while that grows the
/// cut, scanning vertices in ascending order and taking the first
/// improvement.
pub fn max_cut_local_search(g: &Graph) -> CutResult {
    let n = g.n();
    let mut inside = vec![false; n];
    let mut moves = 0;
    loop {
        // moving v gains (neighbours on v's side) - (neighbours across)
        let improving = (0..n).find(|&v| {
            let same = g.neighbors(v).iter().filter(|&&u| inside[u] == inside[v]).count();
            2 * same > g.degree(v)
        });
        match improving {
            Some(v) => {
                inside[v] = !inside[v];
                moves += 1;
            }
            None => break,
        }
    }
    let cut = cut_size(g, &inside);
    CutResult { side: (0..n).filter(|&v| inside[v]).collect(), cut, moves }
}

pub fn cut_size(g: &Graph, inside: &[bool]) -> usize {
    g.edges().iter().filter(|&&(u, v)| inside[u] != inside[v]).count()
}

/// Largest cut by enumerating the `2^(n-1)` sides containing vertex 0's complement.
pub fn max_cut_brute(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 24 {
        return Err(Error::TooLarge(format!("max cut enumeration over {n} vertices")));
    }
    if n == 0 {
        return Ok(0);
    }
    let mut best = 0;
    for mask in 0u32..1 << (n - 1) {
        let inside: Vec<bool> = (0..n).map(|v| v > 0 && mask >> (v - 1) & 1 == 1).collect();
        best = best.max(cut_size(g, &inside));
    }
    Ok(best)
}

// -------------------------------------------------------------------- knapsack

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FptasResult {
    pub items: Vec<usize>,
    pub value: u64,
    pub volume: u64,
    /// Low bits zeroed in every value.
    pub b: u32,
}

/// `max(0, floor(log2(c0 eps / (n (1 + eps)))))` with `eps = p/q`, exactly.
pub fn fptas_shift(n: usize, c0: u64, eps: Q) -> u32 {
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    let num = c0 as u128 * p;
    let den = n as u128 * (q + p);
    let mut b = 0;
    while den << (b + 1) <= num {
        b += 1;
    }
    b
}

/// Zero the low `b` bits of every value and solve the truncated instance
/// exactly with Pareto sets. `c0` is the largest value among items that fit
/// on their own, since only those can be in an optimal set.
pub fn knapsack_fptas(values: &[u64], volumes: &[u64], capacity: u64, eps: Q) -> Result<FptasResult> {
    if values.len() != volumes.len() {
        return Err(Error::invalid("values and volumes differ in length"));
    }
    if eps <= Q::zero() {
        return Err(Error::invalid("eps must be positive"));
    }
    if values.contains(&0) {
        return Err(Error::invalid("values must be positive"));
    }
    let n = values.len();
    let c0 = (0..n).filter(|&i| volumes[i] <= capacity).map(|i| values[i]).max().unwrap_or(0);
    let b = if c0 == 0 { 0 } else { fptas_shift(n, c0, eps) };
    let truncated: Vec<u64> = values.iter().map(|&c| c >> b << b).collect();
    let s = knapsack_pareto(&truncated, volumes, capacity)?;
    let value = s.items.iter().map(|&i| values[i]).sum();
    Ok(FptasResult { items: s.items, value, volume: s.volume, b })
}

/// Best value over all `2^n` subsets.
pub fn knapsack_brute(values: &[u64], volumes: &[u64], capacity: u64) -> Result<u64> {
    let n = values.len();
    if n > 24 {
        return Err(Error::TooLarge(format!("knapsack enumeration over {n} items")));
    }
    let mut best = 0;
    for mask in 0u32..1 << n {
        let (c, v) = (0..n).filter(|&i| mask >> i & 1 == 1).fold((0u64, 0u64), |(c, v), i| (c + values[i], v + volumes[i]));
        if v <= capacity {
            best = best.max(c);
        }
    }
    Ok(best)
}

// ------------------------------------------------------------------ bin packing

fn check_sizes(sizes: &[Q]) -> Result<()> {
    match sizes.iter().position(|s| *s < Q::zero() || *s > Q::from_integer(1)) {
        Some(i) => Err(Error::invalid(format!("size {} of item {} is outside [0, 1]", sizes[i], i + 1))),
        None => Ok(()),
    }
}

/// First fit: each item goes to the lowest-numbered bin with room. Returns
/// the bin of every item.
pub fn bin_pack_first_fit(sizes: &[Q]) -> Result<Vec<usize>> {
    check_sizes(sizes)?;
    let mut load: Vec<Q> = Vec::new();
    let one = Q::from_integer(1);
    Ok(sizes
        .iter()
        .map(|&s| match load.iter().position(|&l| l + s <= one) {
            Some(b) => {
                load[b] += s;
                b
            }
            None => {
                load.push(s);
                load.len() - 1
            }
        })
        .collect())
}

/// Fewest bins, by trying every placement where a new bin is opened at most once per item.
pub fn bin_pack_brute(sizes: &[Q]) -> Result<usize> {
    check_sizes(sizes)?;
    if sizes.len() > 14 {
        return Err(Error::TooLarge(format!("bin packing enumeration over {} items", sizes.len())));
    }
    fn go(sizes: &[Q], i: usize, load: &mut Vec<Q>, best: &mut usize) {
        if load.len() >= *best {
            return;
        }
        if i == sizes.len() {
            *best = load.len();
            return;
        }
        for b in 0..load.len() {
            if load[b] + sizes[i] <= Q::from_integer(1) {
                load[b] += sizes[i];
                go(sizes, i + 1, load, best);
                load[b] -= sizes[i];
            }
        }
        load.push(sizes[i]);
        go(sizes, i + 1, load, best);
        load.pop();
    }
    let mut best = sizes.len() + 1;
    go(sizes, 0, &mut Vec::new(), &mut best);
    Ok(best.min(sizes.len()))
}

pub fn bin_loads(sizes: &[Q], bins: &[usize]) -> Vec<Q> {
    let mut load = vec![Q::zero(); bins.iter().max().map_or(0, |&b| b + 1)];
    for (s, &b) in sizes.iter().zip(bins) {
        load[b] += *s;
    }
    load
}

// ------------------------------------------------------------------ generators

/// `G(n, p)` with a seeded stream.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("distinct pairs")
}

/// L1 distances between `n` random points of `[0, span]^2`.
pub fn random_metric(n: usize, span: i64, rng: &mut impl Rng) -> MetricTsp {
    let pts: Vec<(i64, i64)> = (0..n).map(|_| (rng.gen_range(0..=span), rng.gen_range(0..=span))).collect();
    let cost = pts.iter().map(|a| pts.iter().map(|b| (a.0 - b.0).abs() + (a.1 - b.1).abs()).collect()).collect();
    MetricTsp::new(cost).expect("L1 distances are metric")
}

/// `m` random subsets of `0..n`, then each uncovered element joins a random set.
pub fn random_set_system(n: usize, m: usize, rng: &mut impl Rng) -> SetSystem {
    let mut family: Vec<Vec<usize>> = (0..m).map(|_| (0..n).filter(|_| rng.gen_bool(0.3)).collect()).collect();
    for e in 0..n {
        if !family.iter().any(|s| s.contains(&e)) {
            let i = rng.gen_range(0..m);
            family[i].push(e);
        }
    }
    SetSystem::new(n, family).expect("elements in range")
}

// --------------------------------------------------------------------- harness

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    VcMatching,
    VcDegreeGreedy,
    SetCoverGreedy,
    TspDoubleTree,
    TspChristofides,
    MaxCut,
    KnapsackFptas,
    BinPackFirstFit,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::VcMatching,
        Algorithm::VcDegreeGreedy,
        Algorithm::SetCoverGreedy,
        Algorithm::TspDoubleTree,
        Algorithm::TspChristofides,
        Algorithm::MaxCut,
        Algorithm::KnapsackFptas,
        Algorithm::BinPackFirstFit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::VcMatching => "vc-matching",
            Algorithm::VcDegreeGreedy => "vc-degree-greedy",
            Algorithm::SetCoverGreedy => "set-cover-greedy",
            Algorithm::TspDoubleTree => "tsp-double-tree",
            Algorithm::TspChristofides => "tsp-christofides",
            Algorithm::MaxCut => "max-cut",
            Algorithm::KnapsackFptas => "knapsack-fptas",
            Algorithm::BinPackFirstFit => "bin-pack-first-fit",
        }
    }

    pub fn maximizes(self) -> bool {
        matches!(self, Algorithm::MaxCut | Algorithm::KnapsackFptas)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| Error::invalid(format!("unknown algorithm {s:?}")))
    }
}

fn ser_q<S: Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// One heuristic run. Ratios are exact fractions written as `p/q` strings,
/// oriented so they are at least 1: heuristic/optimal when minimizing,
/// optimal/heuristic when maximizing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub heuristic: i64,
    pub optimal: Option<i64>,
    #[serde(serialize_with = "ser_q")]
    pub ratio: Option<Q>,
    #[serde(serialize_with = "ser_q")]
    pub bound: Option<Q>,
    pub seed: Option<u64>,
    /// SHA-256 of the instance's JSON form, first 16 hex digits.
    pub digest: String,
}

impl ApproxReport {
    pub fn new(
        algorithm: Algorithm,
        n: usize,
        heuristic: i64,
        optimal: Option<i64>,
        bound: Option<Q>,
        seed: Option<u64>,
        instance: &impl Serialize,
    ) -> Self {
        let ratio = optimal.map(|opt| {
            let (num, den) = if algorithm.maximizes() { (opt, heuristic) } else { (heuristic, opt) };
            if den == 0 {
                // both zero: the heuristic is optimal
                assert_eq!(num, 0, "zero denominator with non-zero value");
                Q::from_integer(1)
            } else {
                Q::new(num, den)
            }
        });
        ApproxReport { algorithm, n, heuristic, optimal, ratio, bound, seed, digest: digest(instance) }
    }

    /// Ratio at least 1 and within the bound, when both are known.
    pub fn within_bound(&self) -> bool {
        match (self.ratio, self.bound) {
            (Some(r), Some(b)) => r >= Q::from_integer(1) && r <= b,
            (Some(r), None) => r >= Q::from_integer(1),
            _ => true,
        }
    }

    pub fn ratio_f64(&self) -> Option<f64> {
        self.ratio.and_then(|r| r.to_f64())
    }
}

pub fn digest(instance: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(instance).expect("instances serialize");
    Sha256::digest(&bytes).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// FPTAS accuracy used by the harness for a given seed: 1, 1/2 or 1/4.
pub fn harness_eps(seed: u64) -> Q {
    Q::new(1, 1 << (seed % 3))
}

#[derive(Serialize)]
struct KnapsackInstance<'a> {
    values: &'a [u64],
    volumes: &'a [u64],
    capacity: u64,
    eps: String,
}

/// Generate a random desk-scale instance from `seed`, run `alg` on it, check
/// the output is feasible and compare with the exact optimum.
pub fn run_random(alg: Algorithm, seed: u64) -> Result<ApproxReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (alg as u64) << 56);
    let infeasible = |what: &str| Error::invalid(format!("{alg} produced an infeasible {what} for seed {seed}"));
    let s = Some(seed);
    Ok(match alg {
        Algorithm::VcMatching | Algorithm::VcDegreeGreedy => {
            let n = rng.gen_range(2..=12);
            let p = rng.gen_range(0.1..0.7);
            let g = random_graph(n, p, &mut rng);
            let cover = if alg == Algorithm::VcMatching { vc_matching_2approx(&g) } else { vc_degree_greedy(&g) };
            if !is_vertex_cover(&g, &cover) {
                return Err(infeasible("cover"));
            }
            let opt = min_vertex_cover(&g).len();
            let bound = (alg == Algorithm::VcMatching).then(|| Q::from_integer(2));
            ApproxReport::new(alg, n, cover.len() as i64, Some(opt as i64), bound, s, &g)
        }
        Algorithm::SetCoverGreedy => {
            let n = rng.gen_range(1..=10);
            let m = rng.gen_range(1..=10);
            let sys = random_set_system(n, m, &mut rng);
            let picked = set_cover_greedy(&sys)?;
            let mut hit = vec![false; n];
            picked.iter().flat_map(|&i| &sys.family()[i]).for_each(|&e| hit[e] = true);
            if hit.contains(&false) {
                return Err(infeasible("cover"));
            }
            let opt = min_set_cover(&sys).expect("family covers").len();
            let largest = sys.family().iter().map(Vec::len).max().unwrap_or(0);
            ApproxReport::new(alg, n, picked.len() as i64, Some(opt as i64), Some(harmonic(largest as u64)), s, &sys)
        }
        Algorithm::TspDoubleTree | Algorithm::TspChristofides => {
            let n = rng.gen_range(3..=9);
            let inst = random_metric(n, 20, &mut rng);
            let tour = if alg == Algorithm::TspDoubleTree { tsp_double_tree(&inst) } else { tsp_christofides(&inst)? };
            if !is_tour(&tour, n) {
                return Err(infeasible("tour"));
            }
            let (opt, _) = tsp_optimum(inst.cost());
            let bound = if alg == Algorithm::TspDoubleTree { Q::from_integer(2) } else { Q::new(3, 2) };
            ApproxReport::new(alg, n, tour_cost(inst.cost(), &tour) as i64, Some(opt as i64), Some(bound), s, &inst)
        }
        Algorithm::MaxCut => {
            let n = rng.gen_range(2..=12);
            let p = rng.gen_range(0.2..0.9);
            let g = random_graph(n, p, &mut rng);
            let r = max_cut_local_search(&g);
            if r.moves > g.m() {
                return Err(infeasible("move sequence"));
            }
            ApproxReport::new(alg, n, r.cut as i64, Some(max_cut_brute(&g)? as i64), Some(Q::from_integer(2)), s, &g)
        }
        Algorithm::KnapsackFptas => {
            let n = rng.gen_range(1..=12);
            let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
            let volumes: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=60)).collect();
            let capacity = rng.gen_range(0..=volumes.iter().sum::<u64>());
            let eps = harness_eps(seed);
            let r = knapsack_fptas(&values, &volumes, capacity, eps)?;
            if r.volume > capacity {
                return Err(infeasible("item set"));
            }
            let opt = knapsack_brute(&values, &volumes, capacity)?;
            let inst = KnapsackInstance { values: &values, volumes: &volumes, capacity, eps: eps.to_string() };
            ApproxReport::new(alg, n, r.value as i64, Some(opt as i64), Some(Q::from_integer(1) + eps), s, &inst)
        }
        Algorithm::BinPackFirstFit => {
            let n = rng.gen_range(1..=10);
            let sizes: Vec<Q> = (0..n).map(|_| Q::new(rng.gen_range(1..=20), 20)).collect();
            let bins = bin_pack_first_fit(&sizes)?;
            if bin_loads(&sizes, &bins).iter().any(|&l| l > Q::from_integer(1)) {
                return Err(infeasible("packing"));
            }
            let used = bins.iter().max().map_or(0, |&b| b + 1);
            let strs: Vec<String> = sizes.iter().map(Q::to_string).collect();
            ApproxReport::new(alg, n, used as i64, Some(bin_pack_brute(&sizes)? as i64), Some(Q::from_integer(2)), s, &strs)
        }
    })
}

pub fn is_tour(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Degree-greedy on the counterexample of size `n`, against the optimum `n`
/// (the core covers every edge and the `k = 1` gadgets force `n` vertices).
pub fn counterexample_report(n: usize) -> Result<ApproxReport> {
    let g = vc_greedy_counterexample(n)?;
    let cover = vc_degree_greedy(&g);
    Ok(ApproxReport::new(Algorithm::VcDegreeGreedy, g.n(), cover.len() as i64, Some(n as i64), None, None, &g))
}

/// Double tree on the gap instance of a graph with a planted Hamiltonian
/// cycle, so the optimum is `n`.
pub fn gap_report(n: usize, p: f64, eps: Q, seed: u64) -> Result<ApproxReport> {
    let g = planted_hamiltonian_graph(n, p, seed);
    let cost = tsp_gap_instance(&g, eps)?;
    let tour = double_tree_tour(&cost);
    Ok(ApproxReport::new(Algorithm::TspDoubleTree, n, tour_cost(&cost, &tour) as i64, Some(n as i64), None, Some(seed), &cost))
}
