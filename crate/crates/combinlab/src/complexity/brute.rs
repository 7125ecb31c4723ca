//! Exhaustive decision oracles. Each returns a witness accepted by
//! [`verify_witness`](super::verify::verify_witness) iff one exists, and
//! refuses instances above the configured caps.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cnf::Cnf;
use super::instance::{Ilp, Problem, Relation, SetSystem, Witness};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

pub const ORACLE_LIMIT_ENV: &str = "COMBINLAB_ORACLE_LIMIT";

/// Size caps for the exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    /// Boolean variables of SAT, and items of knapsack and partition.
    pub bool_vars: usize,
    /// Vertices for clique, independent set and vertex cover.
    pub vertices: usize,
    pub coloring_vertices: usize,
    pub ham_vertices: usize,
    /// Ground set and family size of set systems.
    pub set_elements: usize,
    pub tsp_cities: usize,
    pub ilp_vars: usize,
    /// Largest upper bound of any ILP variable.
    pub ilp_box: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            bool_vars: 20,
            vertices: 12,
            coloring_vertices: 24,
            ham_vertices: 48,
            set_elements: 64,
            tsp_cities: 13,
            ilp_vars: 24,
            ilp_box: 3,
        }
    }
}

impl OracleLimits {
    /// Parses `key=value,...` overrides on top of the defaults. A bare
    /// integer sets every count cap (not the ILP box) to that value.
    pub fn parse(text: &str) -> Result<Self> {
        let mut l = OracleLimits::default();
        let text = text.trim();
        if text.is_empty() {
            return Ok(l);
        }
        if let Ok(n) = text.parse::<usize>() {
            l.bool_vars = n;
            l.vertices = n;
            l.coloring_vertices = n;
            l.ham_vertices = n;
            l.set_elements = n;
            l.tsp_cities = n;
            l.ilp_vars = n;
            return Ok(l);
        }
        for part in text.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(|| Error::invalid(format!("oracle limit {part:?} is not key=value")))?;
            let value: u64 = value.trim().parse().map_err(|_| Error::invalid(format!("oracle limit {part:?} needs an integer")))?;
            let slot = match key.trim() {
                "bool_vars" => &mut l.bool_vars,
                "vertices" => &mut l.vertices,
                "coloring_vertices" => &mut l.coloring_vertices,
                "ham_vertices" => &mut l.ham_vertices,
                "set_elements" => &mut l.set_elements,
                "tsp_cities" => &mut l.tsp_cities,
                "ilp_vars" => &mut l.ilp_vars,
                "ilp_box" => {
                    l.ilp_box = value;
                    continue;
                }
                other => return Err(Error::invalid(format!("unknown oracle limit {other:?}"))),
            };
            *slot = value as usize;
        }
        Ok(l)
    }

    /// Defaults, overridden by the environment variable when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ORACLE_LIMIT_ENV) {
            Ok(s) => OracleLimits::parse(&s),
            Err(_) => Ok(OracleLimits::default()),
        }
    }
}

fn cap(what: &str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge(format!("{what} = {size} exceeds the oracle cap {limit}")))
    } else {
        Ok(())
    }
}

/// [`brute_force_decide_with`] under the default caps (or the environment override).
pub fn brute_force_decide(p: &Problem) -> Result<Option<Witness>> {
    brute_force_decide_with(p, &OracleLimits::from_env()?)
}

pub fn brute_force_decide_with(p: &Problem, limits: &OracleLimits) -> Result<Option<Witness>> {
    p.validate()?;
    match p {
        Problem::Sat { formula } | Problem::ThreeSat { formula } => {
            cap("variables", formula.n(), limits.bool_vars)?;
            Ok(solve_sat(formula).map(Witness::Assignment))
        }
        Problem::Clique { graph, k } => {
            cap("vertices", graph.n(), limits.vertices)?;
            Ok(find_clique(graph, *k).map(Witness::Vertices))
        }
        Problem::IndependentSet { graph, k } => {
            cap("vertices", graph.n(), limits.vertices)?;
            Ok(find_clique(&graph.complement(), *k).map(Witness::Vertices))
        }
        Problem::VertexCover { graph, k } => {
            cap("vertices", graph.n(), limits.vertices)?;
            Ok(find_vertex_cover(graph, *k).map(Witness::Vertices))
        }
        Problem::Coloring { graph, k } => {
            cap("vertices", graph.n(), limits.coloring_vertices)?;
            Ok(find_coloring(graph, *k).map(Witness::Colors))
        }
        Problem::ExactCover { system } => {
            cap_system(system, limits)?;
            Ok(find_exact_cover(system).map(Witness::Indices))
        }
        Problem::Representatives { system } => {
            cap_system(system, limits)?;
            Ok(find_representatives(system).map(Witness::Indices))
        }
        Problem::SetCover { system, k } => {
            cap_system(system, limits)?;
            Ok(find_set_cover(system, *k).map(Witness::Indices))
        }
        Problem::Knapsack01 { a, b } => {
            cap("items", a.len(), limits.bool_vars)?;
            Ok(subset_sum(a, b).map(Witness::Indices))
        }
        Problem::KnapsackDecision { values, volumes, capacity, target } => {
            cap("items", values.len(), limits.bool_vars)?;
            Ok(knapsack_decision(values, volumes, *capacity, *target).map(Witness::Indices))
        }
        Problem::Partition { a } => {
            cap("items", a.len(), limits.bool_vars)?;
            let total: BigUint = a.iter().sum();
            if (&total % 2u32).is_zero() {
                Ok(subset_sum(a, &(total / 2u32)).map(Witness::Indices))
            } else {
                Ok(None)
            }
        }
        Problem::HamCircuit { digraph } => {
            cap("vertices", digraph.n(), limits.ham_vertices)?;
            Ok(find_ham_circuit(digraph).map(Witness::Order))
        }
        Problem::HamCycle { graph } => {
            cap("vertices", graph.n(), limits.ham_vertices)?;
            Ok(find_ham_circuit(&graph.to_digraph()).map(Witness::Order))
        }
        Problem::Tsp { cost, bound } => {
            cap("cities", cost.len(), limits.tsp_cities)?;
            let (best, tour) = tsp_optimum(cost);
            Ok((best <= *bound as i128).then_some(Witness::Order(tour)))
        }
        Problem::Ilp { ilp } => {
            cap("variables", ilp.vars(), limits.ilp_vars)?;
            if let Some(&u) = ilp.upper.iter().max() {
                if u > limits.ilp_box {
                    return Err(Error::TooLarge(format!("box bound {u} exceeds the oracle cap {}", limits.ilp_box)));
                }
            }
            find_ilp_point(ilp).map(|o| o.map(Witness::Point))
        }
    }
}

fn cap_system(s: &SetSystem, limits: &OracleLimits) -> Result<()> {
    cap("ground set size", s.universe(), limits.set_elements)?;
    cap("family size", s.m(), limits.set_elements)
}

/// Depth-first over variables in index order, false before true; a clause
/// is checked once its last variable is set.
pub fn solve_sat(f: &Cnf) -> Option<Vec<bool>> {
    let n = f.n();
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (j, c) in f.clauses().iter().enumerate() {
        let last = c.iter().map(|l| l.var).max().expect("clauses are non-empty");
        closing[last].push(j);
    }
    fn go(f: &Cnf, closing: &[Vec<usize>], a: &mut Vec<bool>) -> bool {
        let v = a.len();
        if v == f.n() {
            return true;
        }
        for value in [false, true] {
            a.push(value);
            let ok = closing[v + 1].iter().all(|&j| f.clauses()[j].iter().any(|l| l.eval(a)));
            if ok && go(f, closing, a) {
                return true;
            }
            a.pop();
        }
        false
    }
    let mut a = Vec::with_capacity(n);
    go(f, &closing, &mut a).then_some(a)
}

/// A clique on exactly `k` vertices (smallest lexicographically).
pub fn find_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, cur: &mut Vec<usize>, cand: &[usize]) -> bool {
        if cur.len() == k {
            return true;
        }
        for (i, &v) in cand.iter().enumerate() {
            if cur.len() + cand.len() - i < k {
                return false;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            cur.push(v);
            if go(g, k, cur, &next) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    let all: Vec<usize> = (0..g.n()).collect();
    go(g, k, &mut cur, &all).then_some(cur)
}

/// Bounded search tree: branch on the endpoints of the first uncovered edge.
pub fn find_vertex_cover(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, inside: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
        let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| !inside[u] && !inside[v]) else {
            return true;
        };
        if chosen.len() == k {
            return false;
        }
        for w in [u, v] {
            inside[w] = true;
            chosen.push(w);
            if go(g, k, inside, chosen) {
                return true;
            }
            chosen.pop();
            inside[w] = false;
        }
        false
    }
    let mut inside = vec![false; g.n()];
    let mut chosen = Vec::new();
    if go(g, k, &mut inside, &mut chosen) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

/// Smallest vertex cover, by trying `k = 0, 1, ...`.
pub fn min_vertex_cover(g: &Graph) -> Vec<usize> {
    (0..=g.n()).find_map(|k| find_vertex_cover(g, k)).expect("all vertices cover")
}

/// Backtracking in vertex order; a vertex never opens more than one new color.
pub fn find_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, c: &mut Vec<usize>, used: usize) -> bool {
        let v = c.len();
        if v == g.n() {
            return true;
        }
        for color in 0..k.min(used + 1) {
            if g.neighbors(v).iter().any(|&w| w < v && c[w] == color) {
                continue;
            }
            c.push(color);
            if go(g, k, c, used.max(color + 1)) {
                return true;
            }
            c.pop();
        }
        false
    }
    let mut c = Vec::with_capacity(g.n());
    go(g, k, &mut c, 0).then_some(c)
}

/// Branch on the uncovered element with the fewest usable sets.
pub fn find_exact_cover(s: &SetSystem) -> Option<Vec<usize>> {
    let sets_of = s.sets_of();
    fn go(s: &SetSystem, sets_of: &[Vec<usize>], covered: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
        let usable = |i: usize, covered: &[bool]| s.family()[i].iter().all(|&e| !covered[e]);
        let mut best: Option<(usize, Vec<usize>)> = None;
        for e in (0..s.universe()).filter(|&e| !covered[e]) {
            let opts: Vec<usize> = sets_of[e].iter().copied().filter(|&i| usable(i, covered)).collect();
            if best.as_ref().is_none_or(|(_, b)| opts.len() < b.len()) {
                let empty = opts.is_empty();
                best = Some((e, opts));
                if empty {
                    break;
                }
            }
        }
        let Some((_, opts)) = best else {
            return true;
        };
        for i in opts {
            for &e in &s.family()[i] {
                covered[e] = true;
            }
            chosen.push(i);
            if go(s, sets_of, covered, chosen) {
                return true;
            }
            chosen.pop();
            for &e in &s.family()[i] {
                covered[e] = false;
            }
        }
        false
    }
    let mut covered = vec![false; s.universe()];
    let mut chosen = Vec::new();
    if go(s, &sets_of, &mut covered, &mut chosen) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

/// Elements meeting every set exactly once: branch on the unhit set with
/// the fewest usable elements, where an element is usable while none of its
/// sets is hit yet.
pub fn find_representatives(s: &SetSystem) -> Option<Vec<usize>> {
    let sets_of = s.sets_of();
    fn go(s: &SetSystem, sets_of: &[Vec<usize>], hit: &mut Vec<bool>, chosen: &mut Vec<usize>) -> bool {
        let usable = |e: usize, hit: &[bool]| sets_of[e].iter().all(|&i| !hit[i]);
        let mut best: Option<Vec<usize>> = None;
        for i in (0..s.m()).filter(|&i| !hit[i]) {
            let opts: Vec<usize> = s.family()[i].iter().copied().filter(|&e| usable(e, hit)).collect();
            if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                let empty = opts.is_empty();
                best = Some(opts);
                if empty {
                    break;
                }
            }
        }
        let Some(opts) = best else {
            return true;
        };
        for e in opts {
            for &i in &sets_of[e] {
                hit[i] = true;
            }
            chosen.push(e);
            if go(s, sets_of, hit, chosen) {
                return true;
            }
            chosen.pop();
            for &i in &sets_of[e] {
                hit[i] = false;
            }
        }
        false
    }
    let mut hit = vec![false; s.m()];
    let mut chosen = Vec::new();
    if go(s, &sets_of, &mut hit, &mut chosen) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

/// At most `k` sets covering everything: branch on the sets containing the
/// first uncovered element.
pub fn find_set_cover(s: &SetSystem, k: usize) -> Option<Vec<usize>> {
    let sets_of = s.sets_of();
    fn go(s: &SetSystem, sets_of: &[Vec<usize>], k: usize, count: &mut Vec<usize>, chosen: &mut Vec<usize>) -> bool {
        let Some(e) = (0..s.universe()).find(|&e| count[e] == 0) else {
            return true;
        };
        if chosen.len() == k {
            return false;
        }
        for &i in &sets_of[e] {
            for &x in &s.family()[i] {
                count[x] += 1;
            }
            chosen.push(i);
            if go(s, sets_of, k, count, chosen) {
                return true;
            }
            chosen.pop();
            for &x in &s.family()[i] {
                count[x] -= 1;
            }
        }
        false
    }
    let mut count = vec![0; s.universe()];
    let mut chosen = Vec::new();
    if go(s, &sets_of, k, &mut count, &mut chosen) {
        chosen.sort_unstable();
        Some(chosen)
    } else {
        None
    }
}

/// Smallest cover size, or `None` if the family does not cover.
pub fn min_set_cover(s: &SetSystem) -> Option<Vec<usize>> {
    (0..=s.m()).find_map(|k| find_set_cover(s, k))
}

/// Indices of a subset summing to `target`, include-before-exclude.
pub fn subset_sum(a: &[BigUint], target: &BigUint) -> Option<Vec<usize>> {
    let n = a.len();
    let mut suffix = vec![BigUint::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] + &a[i];
    }
    fn go(a: &[BigUint], suffix: &[BigUint], i: usize, left: &BigUint, chosen: &mut Vec<usize>) -> bool {
        if left.is_zero() {
            return true;
        }
        if i == a.len() || &suffix[i] < left {
            return false;
        }
        if &a[i] <= left {
            chosen.push(i);
            if go(a, suffix, i + 1, &(left - &a[i]), chosen) {
                return true;
            }
            chosen.pop();
        }
        go(a, suffix, i + 1, left, chosen)
    }
    let mut chosen = Vec::new();
    go(a, &suffix, 0, target, &mut chosen).then_some(chosen)
}

pub fn knapsack_decision(values: &[u64], volumes: &[u64], capacity: u64, target: u64) -> Option<Vec<usize>> {
    let n = values.len();
    let mut suffix = vec![0u128; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + values[i] as u128;
    }
    #[allow(clippy::too_many_arguments)]
    fn go(values: &[u64], volumes: &[u64], suffix: &[u128], i: usize, room: u128, need: u128, chosen: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if i == values.len() || suffix[i] < need {
            return false;
        }
        if volumes[i] as u128 <= room {
            chosen.push(i);
            let need2 = need.saturating_sub(values[i] as u128);
            if go(values, volumes, suffix, i + 1, room - volumes[i] as u128, need2, chosen) {
                return true;
            }
            chosen.pop();
        }
        go(values, volumes, suffix, i + 1, room, need, chosen)
    }
    let mut chosen = Vec::new();
    go(values, volumes, &suffix, 0, capacity as u128, target as u128, &mut chosen).then_some(chosen)
}

/// Hamiltonian circuit starting at vertex 0. Failed states (visited set,
/// current vertex) are remembered, which collapses symmetric branches.
pub fn find_ham_circuit(g: &Digraph) -> Option<Vec<usize>> {
    let n = g.n();
    if !(2..=128).contains(&n) {
        return None;
    }
    let preds = g.transpose();
    struct Search<'a> {
        g: &'a Digraph,
        preds: &'a Digraph,
        n: usize,
        failed: HashSet<(u128, usize)>,
    }
    impl Search<'_> {
        fn feasible(&self, visited: u128, cur: usize) -> bool {
            (0..self.n).filter(|&w| visited >> w & 1 == 0).all(|w| {
                let has_in = self.preds.successors(w).iter().any(|&p| p == cur || visited >> p & 1 == 0);
                let has_out = self.g.successors(w).iter().any(|&s| s == 0 || visited >> s & 1 == 0);
                has_in && has_out
            })
        }

        fn go(&mut self, path: &mut Vec<usize>, visited: u128) -> bool {
            let cur = *path.last().expect("path starts at 0");
            if path.len() == self.n {
                return self.g.has_arc(cur, 0);
            }
            if self.failed.contains(&(visited, cur)) || !self.feasible(visited, cur) {
                return false;
            }
            let g = self.g;
            for &w in g.successors(cur) {
                if visited >> w & 1 == 1 {
                    continue;
                }
                path.push(w);
                if self.go(path, visited | 1 << w) {
                    return true;
                }
                path.pop();
            }
            self.failed.insert((visited, cur));
            false
        }
    }
    let mut s = Search { g, preds: &preds, n, failed: HashSet::new() };
    let mut path = vec![0];
    s.go(&mut path, 1).then_some(path)
}

/// Held-Karp over subsets; the tour starts at city 0. Ties go to the
/// smallest predecessor index.
pub fn tsp_optimum(cost: &[Vec<i64>]) -> (i128, Vec<usize>) {
    let n = cost.len();
    assert!((3..=24).contains(&n), "Held-Karp needs 3..=24 cities");
    let full = 1usize << (n - 1);
    // dp[mask][j]: cheapest path 0 -> ... -> j+1 visiting exactly mask (over cities 1..n).
    let mut dp = vec![vec![i128::MAX; n - 1]; full];
    let mut from = vec![vec![usize::MAX; n - 1]; full];
    for j in 0..n - 1 {
        dp[1 << j][j] = cost[0][j + 1] as i128;
    }
    for mask in 1..full {
        for j in 0..n - 1 {
            if mask >> j & 1 == 0 || dp[mask][j] == i128::MAX {
                continue;
            }
            let base = dp[mask][j];
            for t in 0..n - 1 {
                if mask >> t & 1 == 1 {
                    continue;
                }
                let next = mask | 1 << t;
                let c = base + cost[j + 1][t + 1] as i128;
                if c < dp[next][t] || (c == dp[next][t] && j < from[next][t]) {
                    dp[next][t] = c;
                    from[next][t] = j;
                }
            }
        }
    }
    let last_mask = full - 1;
    let (best, mut j) = (0..n - 1).map(|j| (dp[last_mask][j] + cost[j + 1][0] as i128, j)).min().expect("n >= 3");
    let mut tour = Vec::with_capacity(n);
    let mut mask = last_mask;
    while mask != 0 {
        tour.push(j + 1);
        let p = from[mask][j];
        mask &= !(1 << j);
        j = p;
    }
    tour.push(0);
    tour.reverse();
    (best, tour)
}

/// Depth-first over the box with per-row interval pruning in `i128`.
pub fn find_ilp_point(ilp: &Ilp) -> Result<Option<Vec<BigInt>>> {
    let to_i = |x: &BigInt| x.to_i128().ok_or_else(|| Error::TooLarge("ILP coefficient beyond 128 bits".into()));
    let nv = ilp.vars();
    let mut rows = Vec::with_capacity(ilp.rows.len());
    for r in &ilp.rows {
        let a: Vec<i128> = r.coeffs.iter().map(to_i).collect::<Result<_>>()?;
        rows.push((a, r.rel, to_i(&r.rhs)?));
    }
    let upper: Vec<i128> = ilp.upper.iter().map(|&u| u as i128).collect();
    // lo[r][i], hi[r][i]: range of the contribution of variables i.. of row r.
    let mut lo = vec![vec![0i128; nv + 1]; rows.len()];
    let mut hi = vec![vec![0i128; nv + 1]; rows.len()];
    for (r, (a, _, _)) in rows.iter().enumerate() {
        for i in (0..nv).rev() {
            let t = a[i] * upper[i];
            lo[r][i] = lo[r][i + 1] + t.min(0);
            hi[r][i] = hi[r][i + 1] + t.max(0);
        }
    }
    struct Ctx<'a> {
        rows: &'a [(Vec<i128>, Relation, i128)],
        upper: &'a [i128],
        lo: &'a [Vec<i128>],
        hi: &'a [Vec<i128>],
    }
    fn go(c: &Ctx, i: usize, partial: &mut Vec<i128>, x: &mut Vec<i128>) -> bool {
        for (r, (_, rel, rhs)) in c.rows.iter().enumerate() {
            let min = partial[r] + c.lo[r][i];
            let max = partial[r] + c.hi[r][i];
            let dead = match rel {
                Relation::Le => min > *rhs,
                Relation::Ge => max < *rhs,
                Relation::Eq => min > *rhs || max < *rhs,
            };
            if dead {
                return false;
            }
        }
        if i == c.upper.len() {
            return true;
        }
        for v in 0..=c.upper[i] {
            for (r, (a, _, _)) in c.rows.iter().enumerate() {
                partial[r] += a[i] * v;
            }
            x.push(v);
            if go(c, i + 1, partial, x) {
                return true;
            }
            x.pop();
            for (r, (a, _, _)) in c.rows.iter().enumerate() {
                partial[r] -= a[i] * v;
            }
        }
        false
    }
    let ctx = Ctx { rows: &rows, upper: &upper, lo: &lo, hi: &hi };
    let mut partial = vec![0i128; rows.len()];
    let mut x = Vec::with_capacity(nv);
    Ok(go(&ctx, 0, &mut partial, &mut x).then(|| x.into_iter().map(BigInt::from).collect()))
}
