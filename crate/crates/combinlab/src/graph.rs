//! Simple graphs and digraphs with BFS, components, Euler cycles, DFS
//! timestamps and Kosaraju's strongly connected components.
//!
//! Vertices are `0..n` in memory; the text formats in [`crate::io`] are
//! 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// JSON shape shared by [`Graph`] and [`Digraph`]: `{"n": .., "edges": [[u, v], ..]}`, 0-based.
#[derive(Serialize, Deserialize)]
struct PairsRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn check_pairs(n: usize, pairs: &[(usize, usize)], directed: bool) -> Result<()> {
    let mut keys = Vec::with_capacity(pairs.len());
    for &(u, v) in pairs {
        if u >= n || v >= n {
            return Err(Error::OutOfRange(format!("vertex {} >= n = {n}", u.max(v))));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {}", u + 1)));
        }
        keys.push(if directed { (u, v) } else { (u.min(v), u.max(v)) });
    }
    keys.sort_unstable();
    match keys.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::invalid(format!("parallel edge {}-{}", w[0].0 + 1, w[0].1 + 1))),
        None => Ok(()),
    }
}

/// Undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairsRepr", into = "PairsRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_pairs(n, &edges, false)?;
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let g = Graph { n, edges, adj };
        let degree_sum: usize = (0..n).map(|v| g.degree(v)).sum();
        debug_assert_eq!(degree_sum, 2 * g.edges.len());
        debug_assert_eq!((0..n).filter(|&v| g.degree(v) % 2 == 1).count() % 2, 0);
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }

    /// `n x q` vertex-edge incidence matrix, columns in edge order.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        let mut b = vec![vec![0; self.edges.len()]; self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            b[u][e] = 1;
            b[v][e] = 1;
        }
        b
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n).flat_map(|u| (u + 1..self.n).map(move |v| (u, v))).filter(|&(u, v)| !self.has_edge(u, v)).collect();
        Graph::new(self.n, edges).expect("complement is simple")
    }

    /// Both orientations of every edge.
    pub fn to_digraph(&self) -> Digraph {
        let arcs = self.edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Digraph::new(self.n, arcs).expect("doubled graph is simple")
    }
}

/// Directed graph without self-loops or parallel arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairsRepr", into = "PairsRepr")]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        check_pairs(n, &arcs, true)?;
        let mut out = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
        }
        for a in &mut out {
            a.sort_unstable();
        }
        Ok(Digraph { n, arcs, out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn transpose(&self) -> Digraph {
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            out[v].push(u);
        }
        for a in &mut out {
            a.sort_unstable();
        }
        Digraph { n: self.n, arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(), out }
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0; self.n]; self.n];
        for &(u, v) in &self.arcs {
            a[u][v] = 1;
        }
        a
    }
}

impl TryFrom<PairsRepr> for Graph {
    type Error = Error;
    fn try_from(r: PairsRepr) -> Result<Self> {
        Graph::new(r.n, r.edges)
    }
}

impl From<Graph> for PairsRepr {
    fn from(g: Graph) -> Self {
        PairsRepr { n: g.n, edges: g.edges }
    }
}

impl TryFrom<PairsRepr> for Digraph {
    type Error = Error;
    fn try_from(r: PairsRepr) -> Result<Self> {
        Digraph::new(r.n, r.edges)
    }
}

impl From<Digraph> for PairsRepr {
    fn from(g: Digraph) -> Self {
        PairsRepr { n: g.n, edges: g.arcs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsForest {
    /// Vertices in the order they were enqueued.
    pub order: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub roots: Vec<usize>,
    /// `(parent, child)` pairs.
    pub tree_edges: Vec<(usize, usize)>,
}

/// Breadth-first forest, roots taken in ascending order.
pub fn bfs_forest(g: &Graph) -> BfsForest {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut f = BfsForest { order: Vec::with_capacity(n), parent: vec![None; n], roots: Vec::new(), tree_edges: Vec::new() };
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        f.roots.push(r);
        f.order.push(r);
        let mut q = VecDeque::from([r]);
        while let Some(v) = q.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    f.parent[w] = Some(v);
                    f.tree_edges.push((v, w));
                    f.order.push(w);
                    q.push_back(w);
                }
            }
        }
    }
    f
}

/// Vertex sets of the connected components, each ascending, ordered by
/// smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let f = bfs_forest(g);
    let mut root_of = vec![0; g.n()];
    for &v in &f.order {
        root_of[v] = match f.parent[v] {
            None => v,
            Some(p) => root_of[p],
        };
    }
    f.roots.iter().map(|&r| (0..g.n()).filter(|&v| root_of[v] == r).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotEulerian {
    OddDegree(usize),
    Disconnected,
}

impl fmt::Display for NotEulerian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotEulerian::OddDegree(v) => write!(f, "vertex {} has odd degree", v + 1),
            NotEulerian::Disconnected => write!(f, "edges lie in more than one component"),
        }
    }
}

fn euler_precheck(g: &Graph) -> std::result::Result<Option<usize>, NotEulerian> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(NotEulerian::OddDegree(v));
    }
    let comps = connected_components(g);
    let busy: Vec<&Vec<usize>> = comps.iter().filter(|c| g.degree(c[0]) > 0 || c.len() > 1).collect();
    match busy.len() {
        0 => Ok(None),
        1 => Ok(Some(busy[0][0])),
        _ => Err(NotEulerian::Disconnected),
    }
}

struct EdgeUse {
    used: Vec<bool>,
    // (neighbour, edge id), ascending by neighbour
    inc: Vec<Vec<(usize, usize)>>,
}

impl EdgeUse {
    fn new(g: &Graph) -> Self {
        let mut inc = vec![Vec::new(); g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            inc[u].push((v, e));
            inc[v].push((u, e));
        }
        for l in &mut inc {
            l.sort_unstable();
        }
        EdgeUse { used: vec![false; g.m()], inc }
    }

    fn free_at(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.inc[v].iter().copied().filter(|&(_, e)| !self.used[e])
    }
}

/// Euler cycle by splicing: walk a closed trail from the first vertex with
/// edges, then repeatedly start a new closed trail at the first vertex of the
/// current cycle that still has unused edges and splice it in. Walks always
/// take the smallest unused neighbour.
///
/// Isolated vertices are ignored. A graph without edges gives an empty walk.
pub fn euler_cycle(g: &Graph) -> std::result::Result<Vec<usize>, NotEulerian> {
    let Some(start) = euler_precheck(g)? else {
        return Ok(Vec::new());
    };
    let mut eu = EdgeUse::new(g);
    fn trail(from: usize, eu: &mut EdgeUse) -> Vec<usize> {
        let mut walk = vec![from];
        let mut v = from;
        loop {
            let Some((w, e)) = eu.free_at(v).next() else { break };
            eu.used[e] = true;
            walk.push(w);
            v = w;
        }
        walk
    }
    let mut cycle = trail(start, &mut eu);
    while let Some(pos) = cycle.iter().position(|&v| eu.free_at(v).next().is_some()) {
        let sub = trail(cycle[pos], &mut eu);
        cycle.splice(pos..=pos, sub);
    }
    Ok(cycle)
}

/// Fleury's rule: never cross a bridge of the remaining graph unless it is
/// the only edge left at the current vertex. Used to cross-check
/// [`euler_cycle`].
pub fn euler_cycle_fleury(g: &Graph) -> std::result::Result<Vec<usize>, NotEulerian> {
    let Some(start) = euler_precheck(g)? else {
        return Ok(Vec::new());
    };
    let mut eu = EdgeUse::new(g);
    let mut walk = vec![start];
    let mut v = start;
    loop {
        let options: Vec<(usize, usize)> = eu.free_at(v).collect();
        let Some(&first) = options.first() else { break };
        let pick = if options.len() == 1 { first } else { *options.iter().find(|&&(w, e)| !is_bridge(&mut eu, v, w, e)).unwrap_or(&first) };
        eu.used[pick.1] = true;
        walk.push(pick.0);
        v = pick.0;
    }
    Ok(walk)
}

// An unused edge is a bridge when removing it disconnects its ends.
fn is_bridge(eu: &mut EdgeUse, u: usize, v: usize, e: usize) -> bool {
    eu.used[e] = true;
    let mut seen = vec![false; eu.inc.len()];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        let next: Vec<usize> = eu.free_at(x).map(|(w, _)| w).collect();
        for w in next {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    eu.used[e] = false;
    !seen[v]
}

/// Checks that `walk` is a closed walk using every edge of `g` exactly once.
pub fn is_euler_cycle(g: &Graph, walk: &[usize]) -> bool {
    if g.m() == 0 {
        return walk.len() <= 1;
    }
    if walk.len() != g.m() + 1 || walk[0] != walk[walk.len() - 1] {
        return false;
    }
    let mut used = BTreeSet::new();
    walk.windows(2).all(|w| g.has_edge(w[0], w[1]) && used.insert((w[0].min(w[1]), w[0].max(w[1]))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    White,
    Gray,
    Black,
}

/// Depth-first search record; times run from 1 to `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsRecord {
    pub color: Vec<Color>,
    pub d: Vec<usize>,
    pub f: Vec<usize>,
    pub parent: Vec<Option<usize>>,
    pub roots: Vec<usize>,
    pub time: usize,
}

impl DfsRecord {
    /// Vertices of each tree of the forest, in discovery order.
    pub fn trees(&self) -> Vec<Vec<usize>> {
        let n = self.d.len();
        let mut by_d: Vec<usize> = (0..n).collect();
        by_d.sort_by_key(|&v| self.d[v]);
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in by_d {
            if self.parent[v].is_none() {
                out.push(vec![v]);
            } else {
                out.last_mut().unwrap().push(v);
            }
        }
        out
    }
}

/// DFS over adjacency lists visiting roots in `order` (ascending when
/// `None`) and neighbours in list order.
pub fn dfs_lists(adj: &[Vec<usize>], order: Option<&[usize]>) -> DfsRecord {
    let n = adj.len();
    let default: Vec<usize>;
    let order = match order {
        Some(o) => o,
        None => {
            default = (0..n).collect();
            &default
        }
    };
    let mut r = DfsRecord { color: vec![Color::White; n], d: vec![0; n], f: vec![0; n], parent: vec![None; n], roots: Vec::new(), time: 0 };
    for &s in order {
        if r.color[s] != Color::White {
            continue;
        }
        r.roots.push(s);
        r.time += 1;
        r.d[s] = r.time;
        r.color[s] = Color::Gray;
        let mut stack = vec![(s, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (u, i) = *top;
            if let Some(&v) = adj[u].get(i) {
                top.1 += 1;
                if r.color[v] == Color::White {
                    r.parent[v] = Some(u);
                    r.time += 1;
                    r.d[v] = r.time;
                    r.color[v] = Color::Gray;
                    stack.push((v, 0));
                }
            } else {
                r.time += 1;
                r.f[u] = r.time;
                r.color[u] = Color::Black;
                stack.pop();
            }
        }
    }
    r
}

pub fn dfs_graph(g: &Graph, order: Option<&[usize]>) -> DfsRecord {
    dfs_lists(&g.adj, order)
}

pub fn dfs_digraph(g: &Digraph, order: Option<&[usize]>) -> DfsRecord {
    dfs_lists(&g.out, order)
}

/// Kosaraju: DFS on `g`, then DFS on the transpose taking roots by
/// decreasing finish time; each tree of the second forest is a component.
///
/// Components come out in topological order of the condensation (a
/// component is listed before every component it has arcs into). Members
/// are ascending.
pub fn scc_kosaraju(g: &Digraph) -> Vec<Vec<usize>> {
    let first = dfs_digraph(g, None);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(first.f[v]));
    let second = dfs_digraph(&g.transpose(), Some(&order));
    second
        .trees()
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect()
}

/// Component index per vertex, for a partition such as [`scc_kosaraju`]'s.
pub fn component_index(n: usize, comps: &[Vec<usize>]) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            idx[v] = i;
        }
    }
    idx
}

/// Arcs between distinct components, deduplicated.
pub fn condensation(g: &Digraph, comps: &[Vec<usize>]) -> Digraph {
    let idx = component_index(g.n(), comps);
    let arcs: BTreeSet<(usize, usize)> = g.arcs().iter().map(|&(u, v)| (idx[u], idx[v])).filter(|(a, b)| a != b).collect();
    Digraph::new(comps.len(), arcs.into_iter().collect()).expect("condensation arcs are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfs_examples() {
        let f = bfs_forest(&Graph::empty(3));
        assert_eq!(f.roots, vec![0, 1, 2]);
        let p = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(bfs_forest(&p).tree_edges, vec![(0, 1), (1, 2)]);
        assert_eq!(bfs_forest(&Graph::complete(5)).tree_edges.len(), 4);
    }

    #[test]
    fn components_examples() {
        assert_eq!(connected_components(&Graph::empty(4)).len(), 4);
        let two = Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(connected_components(&two), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(connected_components(&Graph::complete(5)).len(), 1);
    }

    #[test]
    fn rejects_loops_and_parallels() {
        assert!(Graph::new(2, vec![(0, 0)]).is_err());
        assert!(Graph::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Digraph::new(2, vec![(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn euler_k5() {
        let k5 = Graph::complete(5);
        let c = euler_cycle(&k5).unwrap();
        assert_eq!(c.len(), 11);
        assert!(is_euler_cycle(&k5, &c));
        assert!(is_euler_cycle(&k5, &[0, 1, 2, 3, 4, 0, 2, 4, 1, 3, 0]));
        assert!(is_euler_cycle(&Graph::complete(5), &euler_cycle_fleury(&Graph::complete(5)).unwrap()));
        assert_eq!(euler_cycle(&Graph::empty(1)).unwrap(), Vec::<usize>::new());
        // a triangle with a pendant edge: two odd vertices
        let g = Graph::new(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(euler_cycle(&g), Err(NotEulerian::OddDegree(2)));
    }

    #[test]
    fn dfs_times() {
        let r = dfs_graph(&Graph::empty(1), None);
        assert_eq!((r.d[0], r.f[0]), (1, 2));
        let g = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let r = dfs_digraph(&g, None);
        assert!(r.f[2] < r.f[1] && r.f[1] < r.f[0]);
    }

    #[test]
    fn scc_examples() {
        let g = Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(scc_kosaraju(&g), vec![vec![0, 1]]);
        let g = Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(scc_kosaraju(&g).len(), 3);
        let g = Digraph::new(4, vec![(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]).unwrap();
        assert_eq!(scc_kosaraju(&g), vec![vec![0, 1], vec![2, 3]]);
    }
}
