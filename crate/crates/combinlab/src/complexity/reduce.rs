//! Polynomial reductions with witness maps in both directions.
//!
//! `forward` turns a verified source witness into a target witness and
//! `backward` does the converse. Each output also carries a legend naming
//! every target atom (variable, vertex, set, item or ILP variable), 1-based.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cnf::{Cnf, Lit};
use super::instance::{Ilp, IlpRow, Problem, Relation, SetSystem, Witness};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

pub type WitnessMap = Arc<dyn Fn(&Witness) -> Result<Witness> + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    SatTo3Sat,
    SatToClique,
    ThreeSatToColoring,
    CliqueToIs,
    IsToVc,
    ColoringToExactCover,
    ExactCoverToRepresentatives,
    ExactCoverToKnapsack01,
    Knapsack01ToPartition,
    VcToSetCover,
    VcToHamCircuit,
    HamCircuitToHamCycle,
    HamCycleToTsp,
    Knapsack01ToIlp,
    SetCoverToIlp,
    TspToIlp,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 16] = [
        ReductionKind::SatTo3Sat,
        ReductionKind::SatToClique,
        ReductionKind::ThreeSatToColoring,
        ReductionKind::CliqueToIs,
        ReductionKind::IsToVc,
        ReductionKind::ColoringToExactCover,
        ReductionKind::ExactCoverToRepresentatives,
        ReductionKind::ExactCoverToKnapsack01,
        ReductionKind::Knapsack01ToPartition,
        ReductionKind::VcToSetCover,
        ReductionKind::VcToHamCircuit,
        ReductionKind::HamCircuitToHamCycle,
        ReductionKind::HamCycleToTsp,
        ReductionKind::Knapsack01ToIlp,
        ReductionKind::SetCoverToIlp,
        ReductionKind::TspToIlp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::SatTo3Sat => "sat-to-3sat",
            ReductionKind::SatToClique => "sat-to-clique",
            ReductionKind::ThreeSatToColoring => "three-sat-to-coloring",
            ReductionKind::CliqueToIs => "clique-to-is",
            ReductionKind::IsToVc => "is-to-vc",
            ReductionKind::ColoringToExactCover => "coloring-to-exact-cover",
            ReductionKind::ExactCoverToRepresentatives => "exact-cover-to-representatives",
            ReductionKind::ExactCoverToKnapsack01 => "exact-cover-to-knapsack01",
            ReductionKind::Knapsack01ToPartition => "knapsack01-to-partition",
            ReductionKind::VcToSetCover => "vc-to-set-cover",
            ReductionKind::VcToHamCircuit => "vc-to-ham-circuit",
            ReductionKind::HamCircuitToHamCycle => "ham-circuit-to-ham-cycle",
            ReductionKind::HamCycleToTsp => "ham-cycle-to-tsp",
            ReductionKind::Knapsack01ToIlp => "knapsack01-to-ilp",
            ReductionKind::SetCoverToIlp => "set-cover-to-ilp",
            ReductionKind::TspToIlp => "tsp-to-ilp",
        }
    }

    /// Tag of the source problem, as in [`Problem::name`].
    pub fn source_problem(self) -> &'static str {
        match self {
            ReductionKind::SatTo3Sat | ReductionKind::SatToClique => "sat",
            ReductionKind::ThreeSatToColoring => "three_sat",
            ReductionKind::CliqueToIs => "clique",
            ReductionKind::IsToVc => "independent_set",
            ReductionKind::ColoringToExactCover => "coloring",
            ReductionKind::ExactCoverToRepresentatives | ReductionKind::ExactCoverToKnapsack01 => "exact_cover",
            ReductionKind::Knapsack01ToPartition | ReductionKind::Knapsack01ToIlp => "knapsack01",
            ReductionKind::VcToSetCover | ReductionKind::VcToHamCircuit => "vertex_cover",
            ReductionKind::HamCircuitToHamCycle => "ham_circuit",
            ReductionKind::HamCycleToTsp => "ham_cycle",
            ReductionKind::SetCoverToIlp => "set_cover",
            ReductionKind::TspToIlp => "tsp",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::invalid(format!("unknown reduction {s:?}")))
    }
}

#[derive(Clone)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub source: Problem,
    pub target: Problem,
    pub legend: Vec<String>,
    forward: WitnessMap,
    backward: WitnessMap,
}

impl fmt::Debug for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Reduction")
            .field("kind", &self.kind)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("legend", &self.legend)
            .finish_non_exhaustive()
    }
}

impl Reduction {
    fn new(
        kind: ReductionKind,
        source: Problem,
        target: Problem,
        legend: Vec<String>,
        forward: impl Fn(&Witness) -> Result<Witness> + Send + Sync + 'static,
        backward: impl Fn(&Witness) -> Result<Witness> + Send + Sync + 'static,
    ) -> Self {
        debug_assert!(target.validate().is_ok(), "{kind} built an ill-formed target");
        Reduction { kind, source, target, legend, forward: Arc::new(forward), backward: Arc::new(backward) }
    }

    /// Source witness to target witness.
    pub fn forward(&self, w: &Witness) -> Result<Witness> {
        (self.forward)(w)
    }

    /// Target witness to source witness.
    pub fn backward(&self, w: &Witness) -> Result<Witness> {
        (self.backward)(w)
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedWitness(msg.into())
}

fn mismatch(kind: ReductionKind, p: &Problem) -> Error {
    Error::invalid(format!("{kind} does not apply to a {} instance", p.name()))
}

fn assignment(w: &Witness, n: usize) -> Result<&[bool]> {
    match w {
        Witness::Assignment(a) if a.len() == n => Ok(a),
        Witness::Assignment(a) => Err(malformed(format!("assignment has {} values, expected {n}", a.len()))),
        other => Err(malformed(format!("expected an assignment, got {}", other.shape()))),
    }
}

fn indices<'a>(w: &'a Witness, shape: &str) -> Result<&'a [usize]> {
    match (w, shape) {
        (Witness::Vertices(v), "vertices") | (Witness::Indices(v), "indices") | (Witness::Order(v), "order") => Ok(v),
        (Witness::Colors(v), "colors") => Ok(v),
        (other, _) => Err(malformed(format!("expected {shape}, got {}", other.shape()))),
    }
}

fn point(w: &Witness, n: usize) -> Result<&[BigInt]> {
    match w {
        Witness::Point(x) if x.len() == n => Ok(x),
        Witness::Point(x) => Err(malformed(format!("point has {} coordinates, expected {n}", x.len()))),
        other => Err(malformed(format!("expected a point, got {}", other.shape()))),
    }
}

fn mask(idx: &[usize], n: usize) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &i in idx {
        if i >= n {
            return Err(malformed(format!("index {i} out of range 0..{n}")));
        }
        m[i] = true;
    }
    Ok(m)
}

fn lit_label(l: Lit) -> String {
    l.to_string()
}

/// Dispatch by kind; the instance tag must match the kind's source problem.
pub fn reduce(kind: ReductionKind, p: &Problem) -> Result<Reduction> {
    p.validate()?;
    match (kind, p) {
        (ReductionKind::SatTo3Sat, Problem::Sat { formula } | Problem::ThreeSat { formula }) => sat_to_3sat(formula),
        (ReductionKind::SatToClique, Problem::Sat { formula } | Problem::ThreeSat { formula }) => sat_to_clique(formula),
        (ReductionKind::ThreeSatToColoring, Problem::Sat { formula } | Problem::ThreeSat { formula }) => threesat_to_coloring(formula),
        (ReductionKind::CliqueToIs, Problem::Clique { graph, k }) => Ok(clique_to_is(graph, *k)),
        (ReductionKind::IsToVc, Problem::IndependentSet { graph, k }) => Ok(is_to_vc(graph, *k)),
        (ReductionKind::ColoringToExactCover, Problem::Coloring { graph, k }) => Ok(coloring_to_exact_cover(graph, *k)),
        (ReductionKind::ExactCoverToRepresentatives, Problem::ExactCover { system }) => Ok(exact_cover_to_representatives(system)),
        (ReductionKind::ExactCoverToKnapsack01, Problem::ExactCover { system }) => Ok(exact_cover_to_knapsack01(system)),
        (ReductionKind::Knapsack01ToPartition, Problem::Knapsack01 { a, b }) => Ok(knapsack01_to_partition(a, b)),
        (ReductionKind::VcToSetCover, Problem::VertexCover { graph, k }) => Ok(vc_to_set_cover(graph, *k)),
        (ReductionKind::VcToHamCircuit, Problem::VertexCover { graph, k }) => vc_to_ham_circuit(graph, *k),
        (ReductionKind::HamCircuitToHamCycle, Problem::HamCircuit { digraph }) => Ok(ham_circuit_to_ham_cycle(digraph)),
        (ReductionKind::HamCycleToTsp, Problem::HamCycle { graph }) => Ok(ham_cycle_to_tsp(graph)),
        (ReductionKind::Knapsack01ToIlp, Problem::Knapsack01 { a, b }) => Ok(knapsack01_to_ilp(a, b)),
        (ReductionKind::SetCoverToIlp, Problem::SetCover { system, k }) => Ok(set_cover_to_ilp(system, *k)),
        (ReductionKind::TspToIlp, Problem::Tsp { cost, bound }) => Ok(tsp_to_ilp(cost, *bound)),
        _ => Err(mismatch(kind, p)),
    }
}

/// How a fresh 3-SAT variable is set by the forward map.
#[derive(Clone, Copy)]
enum Fresh {
    /// Padding variable of a short clause; any value works.
    Pad,
    /// Chain variable of long clause `clause`: true iff the first `prefix`
    /// literals are all false, so the rest of the clause must be satisfied.
    Chain { clause: usize, prefix: usize },
}

/// Short clauses are padded with fresh variables in both polarities; long
/// clauses are split into a chain `(l1 | l2 | w1) & (~w1 | l3 | w2) & ... & (~w | l_{k-1} | l_k)`.
pub fn sat_to_3sat(f: &Cnf) -> Result<Reduction> {
    if f.clauses().is_empty() {
        return Err(Error::invalid("formula has no clauses"));
    }
    let n = f.n();
    let mut next = n;
    let mut fresh = Vec::new();
    let mut legend: Vec<String> = (1..=n).map(|v| format!("x{v}")).collect();
    let mut out: Vec<Vec<Lit>> = Vec::new();
    let mut new_var = |name: String, kind: Fresh, fresh: &mut Vec<Fresh>| {
        next += 1;
        legend.push(name);
        fresh.push(kind);
        next
    };
    for (j, c) in f.clauses().iter().enumerate() {
        match c.len() {
            1 => {
                let z = new_var(format!("z{}", j + 1), Fresh::Pad, &mut fresh);
                let w = new_var(format!("w{}", j + 1), Fresh::Pad, &mut fresh);
                for (sz, sw) in [(true, true), (true, false), (false, true), (false, false)] {
                    out.push(vec![c[0], Lit { var: z, pos: sz }, Lit { var: w, pos: sw }]);
                }
            }
            2 => {
                let w = new_var(format!("w{}", j + 1), Fresh::Pad, &mut fresh);
                out.push(vec![c[0], c[1], Lit::pos(w)]);
                out.push(vec![c[0], c[1], Lit::neg(w)]);
            }
            3 => out.push(c.clone()),
            len => {
                let ws: Vec<usize> = (1..=len - 3)
                    .map(|i| new_var(format!("w{}_{i}", j + 1), Fresh::Chain { clause: j, prefix: i + 1 }, &mut fresh))
                    .collect();
                out.push(vec![c[0], c[1], Lit::pos(ws[0])]);
                for i in 1..ws.len() {
                    out.push(vec![Lit::neg(ws[i - 1]), c[i + 1], Lit::pos(ws[i])]);
                }
                out.push(vec![Lit::neg(ws[len - 4]), c[len - 2], c[len - 1]]);
            }
        }
    }
    let target_n = next;
    let target = Cnf::new(target_n, out)?;
    let src = f.clone();
    let forward = move |w: &Witness| {
        let a = assignment(w, n)?;
        let mut ext = a.to_vec();
        for kind in &fresh {
            ext.push(match *kind {
                Fresh::Pad => false,
                Fresh::Chain { clause, prefix } => src.clauses()[clause][..prefix].iter().all(|l| !l.eval(a)),
            });
        }
        Ok(Witness::Assignment(ext))
    };
    let backward = move |w: &Witness| Ok(Witness::Assignment(assignment(w, target_n)?[..n].to_vec()));
    Ok(Reduction::new(
        ReductionKind::SatTo3Sat,
        Problem::Sat { formula: f.clone() },
        Problem::ThreeSat { formula: target },
        legend,
        forward,
        backward,
    ))
}

/// One vertex per literal occurrence; occurrences in different clauses are
/// adjacent unless complementary; `k` is the number of clauses.
pub fn sat_to_clique(f: &Cnf) -> Result<Reduction> {
    let n = f.n();
    let occ: Vec<(usize, Lit)> = f.clauses().iter().enumerate().flat_map(|(j, c)| c.iter().map(move |&l| (j, l))).collect();
    let mut edges = Vec::new();
    for a in 0..occ.len() {
        for b in a + 1..occ.len() {
            let ((ja, la), (jb, lb)) = (occ[a], occ[b]);
            if ja != jb && la != lb.negate() {
                edges.push((a, b));
            }
        }
    }
    let r = f.clauses().len();
    let graph = Graph::new(occ.len(), edges)?;
    let legend = occ.iter().map(|&(j, l)| format!("{}@D{}", lit_label(l), j + 1)).collect();
    let occ_f = occ.clone();
    let src = f.clone();
    let forward = move |w: &Witness| {
        let a = assignment(w, n)?;
        let mut pick = Vec::with_capacity(r);
        for j in 0..r {
            let v = (0..occ_f.len())
                .find(|&v| occ_f[v].0 == j && occ_f[v].1.eval(a))
                .ok_or_else(|| malformed(format!("assignment leaves clause {} false ({src})", j + 1)))?;
            pick.push(v);
        }
        Ok(Witness::Vertices(pick))
    };
    let total = occ.len();
    let backward = move |w: &Witness| {
        let vs = indices(w, "vertices")?;
        let mut a = vec![false; n];
        for &v in vs {
            if v >= total {
                return Err(malformed(format!("vertex {v} out of range")));
            }
            let l = occ[v].1;
            a[l.var - 1] = l.pos;
        }
        Ok(Witness::Assignment(a))
    };
    Ok(Reduction::new(
        ReductionKind::SatToClique,
        Problem::Sat { formula: f.clone() },
        Problem::Clique { graph, k: r },
        legend,
        forward,
        backward,
    ))
}

/// Vertices `x_i`, `~x_i`, `D_j`, `v_i` (numbered in that order); the `v`
/// form a clique, `v_i` sees every literal vertex of the other variables,
/// `x_i -- ~x_i`, and `D_j` sees every literal vertex not in clause `j`.
/// Colors `0..=n`; fewer than four variables are padded with unused ones.
pub fn threesat_to_coloring(f: &Cnf) -> Result<Reduction> {
    if !f.is_3cnf() {
        return Err(Error::invalid("3-coloring reduction needs every clause to have exactly three literals"));
    }
    let n0 = f.n();
    let n = n0.max(4);
    let r = f.clauses().len();
    let x = |i: usize| i; // i in 0..n is variable i+1
    let xbar = move |i: usize| n + i;
    let d = move |j: usize| 2 * n + j;
    let v = move |i: usize| 2 * n + r + i;
    let lit_vertex = move |l: Lit| if l.pos { x(l.var - 1) } else { xbar(l.var - 1) };
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((v(i), v(j)));
        }
        for j in 0..n {
            if i != j {
                edges.push((v(i), x(j)));
                edges.push((v(i), xbar(j)));
            }
        }
        edges.push((x(i), xbar(i)));
    }
    for (j, c) in f.clauses().iter().enumerate() {
        for i in 0..n {
            for l in [Lit::pos(i + 1), Lit::neg(i + 1)] {
                if !c.contains(&l) {
                    edges.push((lit_vertex(l), d(j)));
                }
            }
        }
    }
    let graph = Graph::new(3 * n + r, edges)?;
    let mut legend: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    legend.extend((1..=n).map(|i| format!("~x{i}")));
    legend.extend((1..=r).map(|j| format!("D{j}")));
    legend.extend((1..=n).map(|i| format!("v{i}")));
    let src = f.clone();
    let forward = move |w: &Witness| {
        let a = assignment(w, n0)?;
        let mut padded = a.to_vec();
        padded.resize(n, false);
        let mut c = vec![0; 3 * n + r];
        for i in 0..n {
            c[v(i)] = i;
            c[x(i)] = if padded[i] { i } else { n };
            c[xbar(i)] = if padded[i] { n } else { i };
        }
        for (j, clause) in src.clauses().iter().enumerate() {
            let l =
                clause.iter().find(|l| l.eval(&padded)).ok_or_else(|| malformed(format!("assignment leaves clause {} false", j + 1)))?;
            c[d(j)] = l.var - 1;
        }
        Ok(Witness::Colors(c))
    };
    let backward = move |w: &Witness| {
        let c = indices(w, "colors")?;
        if c.len() != 3 * n + r {
            return Err(malformed(format!("{} colors for {} vertices", c.len(), 3 * n + r)));
        }
        Ok(Witness::Assignment((0..n0).map(|i| c[x(i)] == c[v(i)]).collect()))
    };
    Ok(Reduction::new(
        ReductionKind::ThreeSatToColoring,
        Problem::ThreeSat { formula: f.clone() },
        Problem::Coloring { graph, k: n + 1 },
        legend,
        forward,
        backward,
    ))
}

fn vertex_legend(n: usize) -> Vec<String> {
    (1..=n).map(|v| format!("v{v}")).collect()
}

/// Same vertex set in the complement graph.
pub fn clique_to_is(g: &Graph, k: usize) -> Reduction {
    let id = |w: &Witness| Ok(Witness::Vertices(indices(w, "vertices")?.to_vec()));
    Reduction::new(
        ReductionKind::CliqueToIs,
        Problem::Clique { graph: g.clone(), k },
        Problem::IndependentSet { graph: g.complement(), k },
        vertex_legend(g.n()),
        id,
        id,
    )
}

/// The complement of an independent set of size `>= k` is a cover of size `<= n - k`.
pub fn is_to_vc(g: &Graph, k: usize) -> Reduction {
    let n = g.n();
    let flip = move |w: &Witness| {
        let m = mask(indices(w, "vertices")?, n)?;
        Ok(Witness::Vertices((0..n).filter(|&v| !m[v]).collect()))
    };
    Reduction::new(
        ReductionKind::IsToVc,
        Problem::IndependentSet { graph: g.clone(), k },
        Problem::VertexCover { graph: g.clone(), k: n - k },
        vertex_legend(n),
        flip,
        flip,
    )
}

/// Ground set: the vertices, then pairs `(i, e)` at `n + i*q + e`. Sets
/// `S(v,i) = {v} + {(i, e) : e incident to v}` at `v*k + i` and
/// `T(e,i) = {(i, e)}` at `n*k + i*q + e`.
pub fn coloring_to_exact_cover(g: &Graph, k: usize) -> Reduction {
    let (n, q) = (g.n(), g.m());
    let edges = g.edges().to_vec();
    let pair = move |i: usize, e: usize| n + i * q + e;
    let mut family = Vec::with_capacity(n * k + k * q);
    let mut legend = Vec::with_capacity(n * k + k * q);
    for u in 0..n {
        for i in 0..k {
            let mut s = vec![u];
            s.extend(edges.iter().enumerate().filter(|(_, &(a, b))| a == u || b == u).map(|(e, _)| pair(i, e)));
            family.push(s);
            legend.push(format!("S(v{},c{})", u + 1, i + 1));
        }
    }
    for i in 0..k {
        for e in 0..q {
            family.push(vec![pair(i, e)]);
            legend.push(format!("T(e{},c{})", e + 1, i + 1));
        }
    }
    let system = SetSystem::new(n + k * q, family).expect("indices are in range");
    let forward = move |w: &Witness| {
        let c = indices(w, "colors")?;
        if c.len() != n || c.iter().any(|&x| x >= k) {
            return Err(malformed("coloring has the wrong length or a color out of range"));
        }
        let mut chosen: Vec<usize> = (0..n).map(|u| u * k + c[u]).collect();
        for i in 0..k {
            for (e, &(a, b)) in edges.iter().enumerate() {
                if c[a] != i && c[b] != i {
                    chosen.push(n * k + i * q + e);
                }
            }
        }
        Ok(Witness::Indices(chosen))
    };
    let backward = move |w: &Witness| {
        let mut c = vec![usize::MAX; n];
        for &s in indices(w, "indices")? {
            if s < n * k {
                c[s / k] = s % k;
            }
        }
        if c.contains(&usize::MAX) {
            return Err(malformed("some vertex has no S set in the cover"));
        }
        Ok(Witness::Colors(c))
    };
    Reduction::new(
        ReductionKind::ColoringToExactCover,
        Problem::Coloring { graph: g.clone(), k },
        Problem::ExactCover { system },
        legend,
        forward,
        backward,
    )
}

fn set_legend(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("A{i}")).collect()
}

fn same_indices(w: &Witness) -> Result<Witness> {
    Ok(Witness::Indices(indices(w, "indices")?.to_vec()))
}

/// New ground set: the sets themselves; one new set `B(a) = {A_j : a in A_j}` per element.
pub fn exact_cover_to_representatives(s: &SetSystem) -> Reduction {
    let target = SetSystem::new(s.m(), s.sets_of()).expect("set indices are in range");
    Reduction::new(
        ReductionKind::ExactCoverToRepresentatives,
        Problem::ExactCover { system: s.clone() },
        Problem::Representatives { system: target },
        set_legend(s.m()),
        same_indices,
        same_indices,
    )
}

/// Row `i` of the incidence matrix read as a base-`(m+1)` number, first
/// element most significant; `b` is the all-ones row.
pub fn exact_cover_to_knapsack01(s: &SetSystem) -> Reduction {
    let (n, m) = (s.universe(), s.m());
    let base = BigUint::from(m as u64 + 1);
    let weight = |e: usize| base.pow((n - 1 - e) as u32);
    let a: Vec<BigUint> = s.family().iter().map(|set| set.iter().map(|&e| weight(e)).sum()).collect();
    let b: BigUint = (0..n).map(weight).sum();
    Reduction::new(
        ReductionKind::ExactCoverToKnapsack01,
        Problem::ExactCover { system: s.clone() },
        Problem::Knapsack01 { a, b },
        set_legend(m),
        same_indices,
        same_indices,
    )
}

/// Items `a_1..a_n, 2b, sum a`; the chosen items plus `sum a` balance the rest.
pub fn knapsack01_to_partition(a: &[BigUint], b: &BigUint) -> Reduction {
    let n = a.len();
    let total: BigUint = a.iter().sum();
    let mut items = a.to_vec();
    items.push(b * 2u32);
    items.push(total);
    let mut legend: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    legend.push("2b".into());
    legend.push("sum".into());
    let forward = move |w: &Witness| {
        let mut idx = indices(w, "indices")?.to_vec();
        if idx.iter().any(|&i| i >= n) {
            return Err(malformed("item index out of range"));
        }
        idx.push(n + 1);
        Ok(Witness::Indices(idx))
    };
    let backward = move |w: &Witness| {
        let side = mask(indices(w, "indices")?, n + 2)?;
        let keep = side[n + 1];
        // The side holding `sum a` carries the solution; if `2b` sits there too then b = 0.
        Ok(Witness::Indices((0..n).filter(|&i| side[i] == keep).collect()))
    };
    Reduction::new(
        ReductionKind::Knapsack01ToPartition,
        Problem::Knapsack01 { a: a.to_vec(), b: b.clone() },
        Problem::Partition { a: items },
        legend,
        forward,
        backward,
    )
}

/// Ground set: the edges; `X_v` = edges incident to `v`.
pub fn vc_to_set_cover(g: &Graph, k: usize) -> Reduction {
    let mut family = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        family[u].push(e);
        family[v].push(e);
    }
    let system = SetSystem::new(g.m(), family).expect("edge indices are in range");
    let legend = (1..=g.n()).map(|v| format!("X(v{v})")).collect();
    let to_idx = |w: &Witness| Ok(Witness::Indices(indices(w, "vertices")?.to_vec()));
    let to_vs = |w: &Witness| Ok(Witness::Vertices(indices(w, "indices")?.to_vec()));
    Reduction::new(
        ReductionKind::VcToSetCover,
        Problem::VertexCover { graph: g.clone(), k },
        Problem::SetCover { system, k },
        legend,
        to_idx,
        to_vs,
    )
}

/// Gadget digraph on `(u, e, d)` for every edge `e` incident to `u` and
/// `d` in {0, 1}, plus selector vertices `a_1..a_k`. Edge order is the
/// input order. Node `(u, e, d)` is `4e + 2s + d` where `s` says which
/// endpoint of `e` `u` is; `a_i` is `4q + i`.
///
/// `k` is lowered to the number of non-isolated vertices, since each
/// selector must start a distinct vertex's chain.
pub fn vc_to_ham_circuit(g: &Graph, k: usize) -> Result<Reduction> {
    let (n, q) = (g.n(), g.m());
    if k > n {
        return Err(Error::invalid(format!("k = {k} exceeds the {n} vertices")));
    }
    if q == 0 || k == 0 {
        return Err(Error::invalid("vertex-cover to Hamiltonian circuit needs at least one edge and k >= 1"));
    }
    let edges = g.edges().to_vec();
    let inc: Vec<Vec<usize>> = (0..n).map(|u| (0..q).filter(|&e| edges[e].0 == u || edges[e].1 == u).collect()).collect();
    let active: Vec<usize> = (0..n).filter(|&u| !inc[u].is_empty()).collect();
    let kk = k.min(active.len());
    let node = {
        let edges = edges.clone();
        move |u: usize, e: usize, d: usize| 4 * e + 2 * usize::from(edges[e].1 == u) + d
    };
    let a = move |i: usize| 4 * q + i;
    let mut arcs = Vec::new();
    for &u in &active {
        let first = inc[u][0];
        let last = *inc[u].last().expect("active");
        for i in 0..kk {
            arcs.push((a(i), node(u, first, 0)));
            arcs.push((node(u, last, 1), a(i)));
        }
        for w in inc[u].windows(2) {
            arcs.push((node(u, w[0], 1), node(u, w[1], 0)));
        }
        for &e in &inc[u] {
            arcs.push((node(u, e, 0), node(u, e, 1)));
        }
    }
    for (e, &(u, v)) in edges.iter().enumerate() {
        for d in 0..2 {
            arcs.push((node(u, e, d), node(v, e, d)));
            arcs.push((node(v, e, d), node(u, e, d)));
        }
    }
    let digraph = Digraph::new(4 * q + kk, arcs)?;
    let mut legend = vec![String::new(); 4 * q + kk];
    for (e, &(u, v)) in edges.iter().enumerate() {
        for (x, d) in [(u, 0), (u, 1), (v, 0), (v, 1)] {
            legend[node(x, e, d)] = format!("(v{},e{},{d})", x + 1, e + 1);
        }
    }
    for i in 0..kk {
        legend[a(i)] = format!("a{}", i + 1);
    }
    let (inc_f, active_f, node_f) = (inc.clone(), active.clone(), node.clone());
    let forward = move |w: &Witness| {
        let cover = mask(indices(w, "vertices")?, n)?;
        let mut chosen: Vec<usize> = active_f.iter().copied().filter(|&u| cover[u]).collect();
        if chosen.len() > kk {
            return Err(malformed(format!("cover has {} non-isolated vertices, more than {kk}", chosen.len())));
        }
        for &u in &active_f {
            if chosen.len() == kk {
                break;
            }
            if !cover[u] {
                chosen.push(u);
            }
        }
        chosen.sort_unstable();
        let inside = mask(&chosen, n)?;
        let mut order = Vec::with_capacity(4 * q + kk);
        for (i, &u) in chosen.iter().enumerate() {
            order.push(a(i));
            for &e in &inc_f[u] {
                let (x, y) = edges[e];
                let other = if x == u { y } else { x };
                order.push(node_f(u, e, 0));
                if !inside[other] {
                    order.push(node_f(other, e, 0));
                    order.push(node_f(other, e, 1));
                }
                order.push(node_f(u, e, 1));
            }
        }
        if order.len() != 4 * q + kk {
            return Err(malformed("vertex set is not a cover"));
        }
        Ok(Witness::Order(order))
    };
    let edges_b = g.edges().to_vec();
    let backward = move |w: &Witness| {
        let order = indices(w, "order")?;
        let len = order.len();
        if len != 4 * q + kk {
            return Err(malformed(format!("circuit has {len} vertices, expected {}", 4 * q + kk)));
        }
        let mut cover = Vec::with_capacity(kk);
        for (t, &x) in order.iter().enumerate() {
            if x >= 4 * q {
                let succ = order[(t + 1) % len];
                if succ >= 4 * q {
                    return Err(malformed("selector followed by a selector"));
                }
                let (e, side) = (succ / 4, succ / 2 % 2);
                cover.push(if side == 0 { edges_b[e].0 } else { edges_b[e].1 });
            }
        }
        cover.sort_unstable();
        if cover.windows(2).any(|w| w[0] == w[1]) {
            return Err(malformed("two selectors lead into the same vertex chain"));
        }
        Ok(Witness::Vertices(cover))
    };
    Ok(Reduction::new(
        ReductionKind::VcToHamCircuit,
        Problem::VertexCover { graph: g.clone(), k },
        Problem::HamCircuit { digraph },
        legend,
        forward,
        backward,
    ))
}

/// Vertex `u` becomes the path `u(1) - u(2) - u(3)` at `3u, 3u+1, 3u+2`;
/// arc `(u, v)` becomes the edge `u(3) - v(1)`.
pub fn ham_circuit_to_ham_cycle(d: &Digraph) -> Reduction {
    let p = d.n();
    let mut edges = Vec::with_capacity(2 * p + d.arcs().len());
    for u in 0..p {
        edges.push((3 * u, 3 * u + 1));
        edges.push((3 * u + 1, 3 * u + 2));
    }
    edges.extend(d.arcs().iter().map(|&(u, v)| (3 * u + 2, 3 * v)));
    let graph = Graph::new(3 * p, edges).expect("split graph is simple");
    let legend = (1..=p).flat_map(|u| (1..=3).map(move |t| format!("u{u}({t})"))).collect();
    let forward = move |w: &Witness| {
        let order = indices(w, "order")?;
        if order.iter().any(|&u| u >= p) {
            return Err(malformed("vertex out of range"));
        }
        Ok(Witness::Order(order.iter().flat_map(|&u| [3 * u, 3 * u + 1, 3 * u + 2]).collect()))
    };
    let backward = move |w: &Witness| {
        let cyc = indices(w, "order")?;
        let len = cyc.len();
        if len != 3 * p {
            return Err(malformed(format!("cycle has {len} vertices, expected {}", 3 * p)));
        }
        let start = cyc.iter().position(|&x| x == 0).ok_or_else(|| malformed("cycle misses vertex 0"))?;
        let step = if cyc[(start + 1) % len] == 1 { 1 } else { len - 1 };
        let walk: Vec<usize> = (0..len).map(|t| cyc[(start + t * step) % len]).collect();
        Ok(Witness::Order(walk.iter().step_by(3).map(|&x| x / 3).collect()))
    };
    Reduction::new(
        ReductionKind::HamCircuitToHamCycle,
        Problem::HamCircuit { digraph: d.clone() },
        Problem::HamCycle { graph },
        legend,
        forward,
        backward,
    )
}

/// Cost 1 on edges, 2 elsewhere, bound `p`. The matrix is metric.
pub fn ham_cycle_to_tsp(g: &Graph) -> Reduction {
    let p = g.n();
    let cost: Vec<Vec<i64>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| {
                    if i == j {
                        0
                    } else if g.has_edge(i, j) {
                        1
                    } else {
                        2
                    }
                })
                .collect()
        })
        .collect();
    let id = |w: &Witness| Ok(Witness::Order(indices(w, "order")?.to_vec()));
    Reduction::new(
        ReductionKind::HamCycleToTsp,
        Problem::HamCycle { graph: g.clone() },
        Problem::Tsp { cost, bound: p as i64 },
        (1..=p).map(|v| format!("city{v}")).collect(),
        id,
        id,
    )
}

fn zero_one_point(idx: &[usize], n: usize) -> Result<Witness> {
    let m = mask(idx, n)?;
    Ok(Witness::Point(m.into_iter().map(|b| BigInt::from(u8::from(b))).collect()))
}

fn ones_of(x: &[BigInt]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, v) in x.iter().enumerate() {
        if v.is_one() {
            out.push(i);
        } else if !v.is_zero() {
            return Err(malformed(format!("coordinate {i} is {v}, expected 0 or 1")));
        }
    }
    Ok(out)
}

/// One equality row `sum a_i x_i = b` over 0-1 variables.
pub fn knapsack01_to_ilp(a: &[BigUint], b: &BigUint) -> Reduction {
    let n = a.len();
    let ilp = Ilp {
        upper: vec![1; n],
        rows: vec![IlpRow { coeffs: a.iter().map(|x| BigInt::from(x.clone())).collect(), rel: Relation::Eq, rhs: BigInt::from(b.clone()) }],
    };
    let forward = move |w: &Witness| zero_one_point(indices(w, "indices")?, n);
    let backward = move |w: &Witness| Ok(Witness::Indices(ones_of(point(w, n)?)?));
    Reduction::new(
        ReductionKind::Knapsack01ToIlp,
        Problem::Knapsack01 { a: a.to_vec(), b: b.clone() },
        Problem::Ilp { ilp },
        (1..=n).map(|i| format!("x{i}")).collect(),
        forward,
        backward,
    )
}

/// Every element covered at least once, and exactly `min(k, m)` sets chosen
/// (a cover with fewer sets can always be padded).
pub fn set_cover_to_ilp(s: &SetSystem, k: usize) -> Reduction {
    let m = s.m();
    let kk = k.min(m);
    let one = BigInt::one();
    let mut rows: Vec<IlpRow> = s
        .sets_of()
        .into_iter()
        .map(|sets| {
            let mut coeffs = vec![BigInt::zero(); m];
            for i in sets {
                coeffs[i] = one.clone();
            }
            IlpRow { coeffs, rel: Relation::Ge, rhs: one.clone() }
        })
        .collect();
    rows.push(IlpRow { coeffs: vec![one.clone(); m], rel: Relation::Eq, rhs: BigInt::from(kk) });
    let ilp = Ilp { upper: vec![1; m], rows };
    let forward = move |w: &Witness| {
        let idx = indices(w, "indices")?;
        let mut chosen = mask(idx, m)?;
        let mut count = chosen.iter().filter(|&&c| c).count();
        for c in chosen.iter_mut() {
            if count >= kk {
                break;
            }
            if !*c {
                *c = true;
                count += 1;
            }
        }
        zero_one_point(&(0..m).filter(|&i| chosen[i]).collect::<Vec<_>>(), m)
    };
    let backward = move |w: &Witness| Ok(Witness::Indices(ones_of(point(w, m)?)?));
    Reduction::new(
        ReductionKind::SetCoverToIlp,
        Problem::SetCover { system: s.clone(), k },
        Problem::Ilp { ilp },
        (1..=m).map(|i| format!("x{i}")).collect(),
        forward,
        backward,
    )
}

/// Variables `x_ij` (i != j, row-major) then `u_0..u_{n-1}` with `u_0 = 0`
/// and `u_i <= n-1`. Rows: cost `<= L`, in- and out-degree 1, and the
/// ordering constraints `u_i - u_j + n x_ij <= n - 1` for `i, j >= 1`.
pub fn tsp_to_ilp(cost: &[Vec<i64>], bound: i64) -> Reduction {
    let n = cost.len();
    let xv = move |i: usize, j: usize| i * (n - 1) + if j < i { j } else { j - 1 };
    let uv = move |i: usize| n * (n - 1) + i;
    let nv = n * (n - 1) + n;
    let zero_row = || vec![BigInt::zero(); nv];
    let mut rows = Vec::new();
    let mut c = zero_row();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            c[xv(i, j)] = BigInt::from(cost[i][j]);
        }
    }
    rows.push(IlpRow { coeffs: c, rel: Relation::Le, rhs: BigInt::from(bound) });
    for v in 0..n {
        let mut out = zero_row();
        let mut inn = zero_row();
        for w in (0..n).filter(|&w| w != v) {
            out[xv(v, w)] = BigInt::one();
            inn[xv(w, v)] = BigInt::one();
        }
        rows.push(IlpRow { coeffs: out, rel: Relation::Eq, rhs: BigInt::one() });
        rows.push(IlpRow { coeffs: inn, rel: Relation::Eq, rhs: BigInt::one() });
    }
    for i in 1..n {
        for j in (1..n).filter(|&j| j != i) {
            let mut r = zero_row();
            r[uv(i)] = BigInt::one();
            r[uv(j)] = BigInt::from(-1);
            r[xv(i, j)] = BigInt::from(n);
            rows.push(IlpRow { coeffs: r, rel: Relation::Le, rhs: BigInt::from(n - 1) });
        }
    }
    let mut upper = vec![1u64; n * (n - 1)];
    upper.push(0);
    upper.extend(std::iter::repeat_n(n as u64 - 1, n - 1));
    let ilp = Ilp { upper, rows };
    let mut legend = vec![String::new(); nv];
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            legend[xv(i, j)] = format!("x({},{})", i + 1, j + 1);
        }
        legend[uv(i)] = format!("u{}", i + 1);
    }
    let forward = move |w: &Witness| {
        let order = indices(w, "order")?;
        let start = order.iter().position(|&v| v == 0).ok_or_else(|| malformed("tour misses city 1"))?;
        if order.len() != n || order.iter().any(|&v| v >= n) {
            return Err(malformed("tour is not a permutation of the cities"));
        }
        let tour: Vec<usize> = (0..n).map(|t| order[(start + t) % n]).collect();
        let mut x = vec![BigInt::zero(); nv];
        for t in 0..n {
            x[xv(tour[t], tour[(t + 1) % n])] = BigInt::one();
            x[uv(tour[t])] = BigInt::from(t);
        }
        Ok(Witness::Point(x))
    };
    let backward = move |w: &Witness| {
        let x = point(w, nv)?;
        let mut tour = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        while tour.len() < n {
            let i = *tour.last().expect("non-empty");
            let j = (0..n)
                .filter(|&j| j != i)
                .find(|&j| x[xv(i, j)].is_one())
                .ok_or_else(|| malformed(format!("city {} has no successor", i + 1)))?;
            if seen[j] {
                return Err(malformed("successor arcs close a subtour"));
            }
            seen[j] = true;
            tour.push(j);
        }
        Ok(Witness::Order(tour))
    };
    Reduction::new(ReductionKind::TspToIlp, Problem::Tsp { cost: cost.to_vec(), bound }, Problem::Ilp { ilp }, legend, forward, backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::brute::brute_force_decide;
    use crate::complexity::verify::verify_witness;

    fn check_round_trip(r: &Reduction) {
        let s = brute_force_decide(&r.source).unwrap();
        let t = brute_force_decide(&r.target).unwrap();
        assert_eq!(s.is_some(), t.is_some(), "{} on {:?}", r.kind, r.source);
        if let Some(w) = s {
            let fw = r.forward(&w).unwrap();
            assert!(verify_witness(&r.target, &fw).unwrap(), "{} forward", r.kind);
        }
        if let Some(w) = t {
            let bw = r.backward(&w).unwrap();
            assert!(verify_witness(&r.source, &bw).unwrap(), "{} backward", r.kind);
        }
    }

    #[test]
    fn unit_clause_becomes_four() {
        let f = Cnf::from_signed(1, &[vec![1]]).unwrap();
        let r = sat_to_3sat(&f).unwrap();
        let Problem::ThreeSat { formula } = &r.target else { panic!() };
        assert_eq!(formula.clauses().len(), 4);
        assert_eq!(formula.n(), 3);
        check_round_trip(&r);
    }

    #[test]
    fn four_literal_clause_uses_one_chain_variable() {
        let f = Cnf::from_signed(4, &[vec![1, 2, 3, 4]]).unwrap();
        let r = sat_to_3sat(&f).unwrap();
        let Problem::ThreeSat { formula } = &r.target else { panic!() };
        assert_eq!(formula.signed_clauses(), vec![vec![1, 2, 5], vec![-5, 3, 4]]);
        check_round_trip(&r);
    }

    #[test]
    fn clique_examples() {
        let f = Cnf::from_signed(2, &[vec![1, 2], vec![-1, 2]]).unwrap();
        let r = sat_to_clique(&f).unwrap();
        let Problem::Clique { graph, k } = &r.target else { panic!() };
        assert_eq!((graph.n(), *k), (4, 2));
        check_round_trip(&r);
        let f = Cnf::from_signed(1, &[vec![1], vec![-1]]).unwrap();
        let r = sat_to_clique(&f).unwrap();
        assert_eq!(brute_force_decide(&r.target).unwrap(), None);
    }

    #[test]
    fn exact_cover_digits() {
        let s = SetSystem::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        let r = exact_cover_to_knapsack01(&s);
        let Problem::Knapsack01 { a, b } = &r.target else { panic!() };
        let nums: Vec<u64> = a.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(nums, vec![4, 1, 5]);
        assert_eq!(*b, BigUint::from(5u32));
        check_round_trip(&r);
    }

    #[test]
    fn partition_example() {
        let a = vec![BigUint::from(1u32), BigUint::from(2u32)];
        let r = knapsack01_to_partition(&a, &BigUint::from(2u32));
        let Problem::Partition { a: items } = &r.target else { panic!() };
        let nums: Vec<u64> = items.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(nums, vec![1, 2, 4, 3]);
        let w = r.forward(&Witness::Indices(vec![1])).unwrap();
        assert_eq!(w, Witness::Indices(vec![1, 3]));
        assert!(verify_witness(&r.target, &w).unwrap());
    }

    #[test]
    fn ham_circuit_examples() {
        let k3 = Graph::complete(3);
        let r = vc_to_ham_circuit(&k3, 2).unwrap();
        assert_eq!(r.target_size(), 14);
        check_round_trip(&r);
        let r = vc_to_ham_circuit(&k3, 1).unwrap();
        assert_eq!(brute_force_decide(&r.target).unwrap(), None);
        let edge = Graph::new(2, vec![(0, 1)]).unwrap();
        check_round_trip(&vc_to_ham_circuit(&edge, 1).unwrap());
        assert!(vc_to_ham_circuit(&k3, 4).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ReductionKind::ALL {
            assert_eq!(k.name().parse::<ReductionKind>().unwrap(), k);
        }
        let f = Cnf::from_signed(1, &[vec![1]]).unwrap();
        assert!(reduce(ReductionKind::CliqueToIs, &Problem::Sat { formula: f }).is_err());
    }

    impl Reduction {
        fn target_size(&self) -> usize {
            match &self.target {
                Problem::HamCircuit { digraph } => digraph.n(),
                _ => 0,
            }
        }
    }
}
