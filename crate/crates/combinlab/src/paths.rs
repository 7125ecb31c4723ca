//! Shortest paths (Dijkstra, Floyd-Warshall), transitive closure and
//! minimum spanning trees (Prim, Kruskal) over exact rational weights.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

pub type Weight = Rational64;

/// A distance; `Inf` sorts above every finite value and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dist {
    Finite(Weight),
    Inf,
}

impl Dist {
    pub fn zero() -> Self {
        Dist::Finite(Weight::zero())
    }

    pub fn plus(self, w: Dist) -> Dist {
        match (self, w) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Inf,
        }
    }

    pub fn finite(self) -> Option<Weight> {
        match self {
            Dist::Finite(w) => Some(w),
            Dist::Inf => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => a.cmp(b),
            (Dist::Finite(_), Dist::Inf) => Ordering::Less,
            (Dist::Inf, Dist::Finite(_)) => Ordering::Greater,
            (Dist::Inf, Dist::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(w) => write!(f, "{w}"),
            Dist::Inf => write!(f, "inf"),
        }
    }
}

/// Digraph with one weight per arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    g: Digraph,
    w: Vec<Vec<Option<Weight>>>,
}

impl WeightedDigraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize, Weight)>) -> Result<Self> {
        let g = Digraph::new(n, arcs.iter().map(|&(u, v, _)| (u, v)).collect())?;
        let mut w = vec![vec![None; n]; n];
        for (u, v, x) in arcs {
            w[u][v] = Some(x);
        }
        Ok(WeightedDigraph { g, w })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn digraph(&self) -> &Digraph {
        &self.g
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Weight> {
        self.w[u][v]
    }

    pub fn arcs(&self) -> Vec<(usize, usize, Weight)> {
        self.g.arcs().iter().map(|&(u, v)| (u, v, self.w[u][v].unwrap())).collect()
    }

    fn arc_dist(&self, u: usize, v: usize) -> Dist {
        self.w[u][v].map_or(Dist::Inf, Dist::Finite)
    }
}

/// Undirected graph with one weight per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    g: Graph,
    weights: Vec<Weight>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, Weight)>) -> Result<Self> {
        let g = Graph::new(n, edges.iter().map(|&(u, v, _)| (u, v)).collect())?;
        Ok(WeightedGraph { g, weights: edges.into_iter().map(|e| e.2).collect() })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn edges(&self) -> Vec<(usize, usize, Weight)> {
        self.g.edges().iter().zip(&self.weights).map(|(&(u, v), &w)| (u, v, w)).collect()
    }

    /// The digraph with both orientations `(u, v)` and `(v, u)` of every edge.
    pub fn doubled(&self) -> WeightedDigraph {
        let arcs = self.edges().into_iter().flat_map(|(u, v, w)| [(u, v, w), (v, u, w)]).collect();
        WeightedDigraph::new(self.n(), arcs).expect("doubled graph is simple")
    }

    pub fn negated(&self) -> WeightedGraph {
        WeightedGraph { g: self.g.clone(), weights: self.weights.iter().map(|w| -w).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPaths {
    pub source: usize,
    pub dist: Vec<Dist>,
    /// Order in which vertices received permanent labels.
    pub settled: Vec<usize>,
}

/// Dijkstra with an `O(n^2)` label scan; among equal temporary labels the
/// smallest vertex index is made permanent first.
pub fn dijkstra(g: &WeightedDigraph, s: usize) -> Result<ShortestPaths> {
    let n = g.n();
    if s >= n {
        return Err(Error::OutOfRange(format!("source {} > n = {n}", s + 1)));
    }
    if g.arcs().iter().any(|a| a.2 < Weight::zero()) {
        return Err(Error::NegativeWeight);
    }
    let mut l = vec![Dist::Inf; n];
    let mut done = vec![false; n];
    let mut settled = Vec::with_capacity(n);
    l[s] = Dist::zero();
    loop {
        let p = (0..n).filter(|&v| !done[v] && l[v].is_finite()).min_by_key(|&v| (l[v], v));
        let Some(p) = p else { break };
        done[p] = true;
        settled.push(p);
        for &x in g.digraph().successors(p) {
            if !done[x] {
                l[x] = l[x].min(l[p].plus(g.arc_dist(p, x)));
            }
        }
    }
    Ok(ShortestPaths { source: s, dist: l, settled })
}

impl ShortestPaths {
    /// Walks back from `t`: the predecessor of `w` is the smallest `x`,
    /// made permanent before `w`, with `l(x) + d(x, w) = l(w)`.
    pub fn path_to(&self, g: &WeightedDigraph, t: usize) -> Option<Vec<usize>> {
        self.dist.get(t)?.finite()?;
        let mut rank = vec![usize::MAX; g.n()];
        for (i, &v) in self.settled.iter().enumerate() {
            rank[v] = i;
        }
        let mut path = vec![t];
        let mut w = t;
        while w != self.source {
            let x = (0..g.n()).find(|&x| rank[x] < rank[w] && self.dist[x].plus(g.arc_dist(x, w)) == self.dist[w])?;
            path.push(x);
            w = x;
        }
        path.reverse();
        Some(path)
    }
}

/// Shortest `s`-`t` path: `Ok(None)` when `t` is unreachable.
pub fn dijkstra_path(g: &WeightedDigraph, s: usize, t: usize) -> Result<Option<(Weight, Vec<usize>)>> {
    let sp = dijkstra(g, s)?;
    if t >= g.n() {
        return Err(Error::OutOfRange(format!("target {} > n = {}", t + 1, g.n())));
    }
    Ok(sp.dist[t].finite().zip(sp.path_to(g, t)))
}

/// Undirected shortest path, solved on the doubled digraph.
pub fn undirected_shortest_path(g: &WeightedGraph, u: usize, v: usize) -> Result<Option<(Weight, Vec<usize>)>> {
    dijkstra_path(&g.doubled(), u, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloydTables {
    pub d: Vec<Vec<Dist>>,
    /// First vertex after `i` on the recorded `i`-`j` path; `None` when
    /// there is none. `z[i][i] = Some(i)`.
    pub z: Vec<Vec<Option<usize>>>,
    /// Vertices with a negative closed walk through them, ascending.
    pub negative_cycle_vertices: Vec<usize>,
}

pub fn floyd_warshall(g: &WeightedDigraph) -> FloydTables {
    let n = g.n();
    let mut d = vec![vec![Dist::Inf; n]; n];
    let mut z = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Dist::zero();
        z[i][i] = Some(i);
    }
    for (u, v, w) in g.arcs() {
        d[u][v] = Dist::Finite(w);
        z[u][v] = Some(v);
    }
    for k in 0..n {
        for i in 0..n {
            if !d[i][k].is_finite() {
                continue;
            }
            for j in 0..n {
                let via = d[i][k].plus(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                    z[i][j] = z[i][k];
                }
            }
        }
    }
    // d[i][i] < 0 marks every vertex of a negative simple cycle, but whether
    // the rest of its strong component goes negative depends on the pivot
    // order. Anything that reaches a marked vertex and is reached back shares
    // a negative closed walk with it.
    let marked: Vec<usize> = (0..n).filter(|&i| d[i][i] < Dist::zero()).collect();
    let negative_cycle_vertices = (0..n).filter(|&i| marked.iter().any(|&k| d[i][k].is_finite() && d[k][i].is_finite())).collect();
    FloydTables { d, z, negative_cycle_vertices }
}

/// Follows the successor matrix from `i` to `j`. Refuses pairs whose walk
/// could pass through a negative cycle.
pub fn reconstruct_path(t: &FloydTables, i: usize, j: usize) -> Result<Vec<usize>> {
    let n = t.d.len();
    if i >= n || j >= n {
        return Err(Error::OutOfRange(format!("vertex {} > n = {n}", i.max(j) + 1)));
    }
    if t.z[i][j].is_none() {
        return Err(Error::NoPath(format!("no path from {} to {}", i + 1, j + 1)));
    }
    if t.negative_cycle_vertices.iter().any(|&k| t.d[i][k].is_finite() && t.d[k][j].is_finite()) {
        return Err(Error::NoPath(format!("a negative cycle lies between {} and {}", i + 1, j + 1)));
    }
    let mut path = vec![i];
    let mut v = i;
    while v != j {
        v = t.z[v][j].ok_or_else(|| Error::NoPath("broken successor chain".into()))?;
        path.push(v);
        if path.len() > n {
            return Err(Error::NoPath("successor chain loops".into()));
        }
    }
    Ok(path)
}

/// Reflexive-transitive closure by the boolean Warshall recurrence.
pub fn transitive_closure(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut t: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || g.has_arc(i, j)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if t[i][k] {
                let via = t[k].clone();
                t[i].iter_mut().zip(via).for_each(|(x, y)| *x = *x || y);
            }
        }
    }
    t
}

/// Prim's label for a vertex outside the tree: nearest tree vertex `u*`
/// and the distance `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimStep {
    pub added: usize,
    pub u_star: usize,
    pub beta: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MstResult {
    /// Edges as `(min, max, weight)` in the order they were chosen.
    pub edges: Vec<(usize, usize, Weight)>,
    pub total: Weight,
    /// Prim only.
    pub trace: Vec<PrimStep>,
}

impl MstResult {
    fn from_edges(edges: Vec<(usize, usize, Weight)>, trace: Vec<PrimStep>) -> Self {
        let total = edges.iter().map(|e| e.2).sum();
        MstResult { edges, total, trace }
    }

    /// Edge set without weights, sorted.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.0, e.1)).collect();
        s.sort_unstable();
        s
    }
}

fn ordered(u: usize, v: usize, w: Weight) -> (usize, usize, Weight) {
    (u.min(v), u.max(v), w)
}

/// Prim from vertex 0 with `(u*, beta)` labels, `O(n^2)`. Ties go to the
/// smallest vertex index.
pub fn prim(g: &WeightedGraph) -> Result<MstResult> {
    let n = g.n();
    if n == 0 {
        return Ok(MstResult::from_edges(Vec::new(), Vec::new()));
    }
    let mut wm: Vec<Vec<Option<Weight>>> = vec![vec![None; n]; n];
    for (u, v, w) in g.edges() {
        wm[u][v] = Some(w);
        wm[v][u] = Some(w);
    }
    let mut in_tree = vec![false; n];
    in_tree[0] = true;
    let mut label: Vec<Option<(usize, Weight)>> = (0..n).map(|u| wm[u][0].map(|w| (0, w))).collect();
    let mut edges = Vec::with_capacity(n - 1);
    let mut trace = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let pick = (0..n)
            .filter(|&u| !in_tree[u])
            .filter_map(|u| label[u].map(|(s, b)| (b, u, s)))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let Some((beta, u, u_star)) = pick else {
            return Err(Error::NotConnected);
        };
        in_tree[u] = true;
        edges.push(ordered(u, u_star, beta));
        trace.push(PrimStep { added: u, u_star, beta });
        for x in 0..n {
            if in_tree[x] {
                continue;
            }
            if let Some(w) = wm[x][u] {
                if label[x].is_none_or(|(_, b)| b > w) {
                    label[x] = Some((u, w));
                }
            }
        }
    }
    Ok(MstResult::from_edges(edges, trace))
}

/// Kruskal: edges sorted by `(weight, min end, max end)`, component labels
/// relabelled on every union.
pub fn kruskal(g: &WeightedGraph) -> Result<MstResult> {
    let n = g.n();
    let mut es: Vec<(usize, usize, Weight)> = g.edges().into_iter().map(|(u, v, w)| ordered(u, v, w)).collect();
    es.sort_by(|a, b| a.2.cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    let mut label: Vec<usize> = (0..n).collect();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (u, v, w) in es {
        let (lu, lv) = (label[u], label[v]);
        if lu == lv {
            continue;
        }
        for l in label.iter_mut() {
            if *l == lv {
                *l = lu;
            }
        }
        edges.push((u, v, w));
        if edges.len() + 1 == n {
            break;
        }
    }
    if n > 0 && edges.len() + 1 != n {
        return Err(Error::NotConnected);
    }
    Ok(MstResult::from_edges(edges, Vec::new()))
}

/// Maximum-weight spanning tree: Kruskal on negated weights.
pub fn max_spanning_tree(g: &WeightedGraph) -> Result<MstResult> {
    let t = kruskal(&g.negated())?;
    let edges = t.edges.into_iter().map(|(u, v, w)| (u, v, -w)).collect();
    Ok(MstResult::from_edges(edges, Vec::new()))
}
