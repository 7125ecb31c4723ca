//! Exhaustive small-instance families for checking reductions against the
//! oracles, plus the round-trip check itself.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::brute::{brute_force_decide_with, tsp_optimum, OracleLimits};
use super::cnf::{Cnf, Lit};
use super::instance::{Problem, SetSystem};
use super::reduce::{reduce, Reduction, ReductionKind};
use super::verify::verify_witness;
use crate::error::Result;
use crate::graph::{Digraph, Graph};

/// Every labeled simple graph on `n` vertices (`2^(n(n-1)/2)` of them).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() <= 20, "too many graphs to enumerate");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Graph::new(n, edges).expect("distinct pairs")
        })
        .collect()
}

/// Every loopless digraph on `n` vertices.
pub fn all_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    assert!(pairs.len() <= 20, "too many digraphs to enumerate");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let arcs = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            Digraph::new(n, arcs).expect("distinct pairs")
        })
        .collect()
}

/// Non-empty clauses over `x_1..x_n` with no repeated variable and no
/// complementary pair: `3^n - 1` of them.
pub fn plain_clauses(n: usize) -> Vec<Vec<Lit>> {
    let mut out = Vec::new();
    for code in 1..3usize.pow(n as u32) {
        let mut c = Vec::new();
        let mut x = code;
        for var in 1..=n {
            match x % 3 {
                1 => c.push(Lit::pos(var)),
                2 => c.push(Lit::neg(var)),
                _ => {}
            }
            x /= 3;
        }
        out.push(c);
    }
    out
}

/// Three-literal clauses over `x_1..x_n` as sorted multisets, repeats
/// allowed, no complementary pair. There are 38 for `n = 3`.
pub fn three_literal_clauses(n: usize) -> Vec<Vec<Lit>> {
    let lits: Vec<Lit> = (1..=n).flat_map(|v| [Lit::pos(v), Lit::neg(v)]).collect();
    let mut out = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                let t = [lits[a], lits[b], lits[c]];
                let clash = t.iter().any(|x| t.contains(&x.negate()));
                if !clash {
                    out.push(t.to_vec());
                }
            }
        }
    }
    out
}

/// Formulas over `n` variables made of `1..=max_r` distinct clauses drawn from `pool`.
pub fn formulas_from(pool: &[Vec<Lit>], n: usize, max_r: usize) -> Vec<Cnf> {
    let mut out = Vec::new();
    fn go(pool: &[Vec<Lit>], n: usize, start: usize, left: usize, cur: &mut Vec<Vec<Lit>>, out: &mut Vec<Cnf>) {
        if !cur.is_empty() {
            out.push(Cnf::new(n, cur.clone()).expect("pool clauses are well-formed"));
        }
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i].clone());
            go(pool, n, i + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    go(pool, n, 0, max_r, &mut Vec::new(), &mut out);
    out
}

/// Families of `m` subsets of `0..n`, as non-decreasing sequences of subset
/// masks (so each multiset of sets appears once).
pub fn set_systems(n: usize, m: usize) -> Vec<SetSystem> {
    let masks = 1usize << n;
    let mut out = Vec::new();
    fn go(n: usize, masks: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<SetSystem>) {
        if cur.len() == m {
            let family = cur.iter().map(|&mask| (0..n).filter(|&e| mask >> e & 1 == 1).collect()).collect();
            out.push(SetSystem::new(n, family).expect("elements in range"));
            return;
        }
        for s in start..masks {
            cur.push(s);
            go(n, masks, m, s, cur, out);
            cur.pop();
        }
    }
    go(n, masks, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Outcome of checking one reduction instance against the oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub source_yes: bool,
    pub target_yes: bool,
    /// Forward image of the source oracle's witness verifies (vacuous on "no").
    pub forward_ok: bool,
    /// Backward image of the target oracle's witness verifies (vacuous on "no").
    pub backward_ok: bool,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.source_yes == self.target_yes && self.forward_ok && self.backward_ok
    }
}

pub fn round_trip(r: &Reduction, limits: &OracleLimits) -> Result<RoundTrip> {
    let s = brute_force_decide_with(&r.source, limits)?;
    let t = brute_force_decide_with(&r.target, limits)?;
    let forward_ok = match &s {
        Some(w) => verify_witness(&r.target, &r.forward(w)?)?,
        None => true,
    };
    let backward_ok = match &t {
        Some(w) => verify_witness(&r.source, &r.backward(w)?)?,
        None => true,
    };
    Ok(RoundTrip { source_yes: s.is_some(), target_yes: t.is_some(), forward_ok, backward_ok })
}

fn nums(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

/// Knapsack instances: every `a` in `0..=10`^n for `n <= 3` with every
/// `b` in `0..=sum+1`, then seeded random ones with `n` in 4..=5.
fn knapsack_sources() -> Vec<Problem> {
    let mut out = Vec::new();
    for n in 1..=3u32 {
        for code in 0..11u64.pow(n) {
            let a: Vec<u64> = (0..n).map(|i| code / 11u64.pow(i) % 11).collect();
            let total: u64 = a.iter().sum();
            for b in 0..=total + 1 {
                out.push(Problem::Knapsack01 { a: nums(&a), b: BigUint::from(b) });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e);
    for _ in 0..2000 {
        let n = rng.gen_range(4..=5);
        let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=10)).collect();
        let b = rng.gen_range(0..=a.iter().sum::<u64>() + 1);
        out.push(Problem::Knapsack01 { a: nums(&a), b: BigUint::from(b) });
    }
    out
}

fn graphs_with_k(ns: std::ops::RangeInclusive<usize>, ks: impl Fn(usize) -> Vec<usize>) -> Vec<(Graph, usize)> {
    let mut out = Vec::new();
    for n in ns {
        for g in all_graphs(n) {
            for k in ks(n) {
                out.push((g.clone(), k));
            }
        }
    }
    out
}

/// Tours with `L` at the optimum and one below it: all 0/1/2/3 cost
/// patterns on 3 cities, then seeded random 4-city matrices.
fn tsp_sources() -> Vec<Problem> {
    let mut out = Vec::new();
    let mut push = |cost: Vec<Vec<i64>>| {
        let (best, _) = tsp_optimum(&cost);
        for bound in [best as i64, best as i64 - 1] {
            out.push(Problem::Tsp { cost: cost.clone(), bound });
        }
    };
    for code in 0..4usize.pow(6) {
        let mut cost = vec![vec![0i64; 3]; 3];
        let mut x = code;
        for (i, row) in cost.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                if i != j {
                    *c = (x % 4) as i64;
                    x /= 4;
                }
            }
        }
        push(cost);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7473);
    for _ in 0..300 {
        let cost = (0..4).map(|i| (0..4).map(|j| if i == j { 0 } else { rng.gen_range(1..=6) }).collect()).collect();
        push(cost);
    }
    out
}

/// The exhaustive (and, where noted, seeded random) source instances each
/// reduction is checked on.
pub fn reduction_sources(kind: ReductionKind) -> Vec<Problem> {
    let sat = || formulas_from(&plain_clauses(3), 3, 3);
    let up_to = |n: usize| (0..=n).collect::<Vec<_>>();
    match kind {
        ReductionKind::SatTo3Sat | ReductionKind::SatToClique => sat().into_iter().map(|formula| Problem::Sat { formula }).collect(),
        ReductionKind::ThreeSatToColoring => {
            formulas_from(&three_literal_clauses(3), 3, 3).into_iter().map(|formula| Problem::ThreeSat { formula }).collect()
        }
        ReductionKind::CliqueToIs => graphs_with_k(1..=5, up_to).into_iter().map(|(graph, k)| Problem::Clique { graph, k }).collect(),
        ReductionKind::IsToVc => graphs_with_k(1..=5, up_to).into_iter().map(|(graph, k)| Problem::IndependentSet { graph, k }).collect(),
        ReductionKind::VcToSetCover => {
            graphs_with_k(1..=5, up_to).into_iter().map(|(graph, k)| Problem::VertexCover { graph, k }).collect()
        }
        ReductionKind::VcToHamCircuit => graphs_with_k(2..=5, |n| (1..=n).collect())
            .into_iter()
            .filter(|(g, _)| g.m() > 0)
            .map(|(graph, k)| Problem::VertexCover { graph, k })
            .collect(),
        ReductionKind::ColoringToExactCover => {
            graphs_with_k(1..=5, |_| vec![1, 2, 3]).into_iter().map(|(graph, k)| Problem::Coloring { graph, k }).collect()
        }
        ReductionKind::ExactCoverToRepresentatives | ReductionKind::ExactCoverToKnapsack01 => {
            (1..=4).flat_map(|n| (1..=4).flat_map(move |m| set_systems(n, m))).map(|system| Problem::ExactCover { system }).collect()
        }
        ReductionKind::SetCoverToIlp => (1..=4)
            .flat_map(|n| (1..=4).flat_map(move |m| set_systems(n, m)))
            .filter(SetSystem::covers)
            .flat_map(|system| (0..=system.m()).map(move |k| Problem::SetCover { system: system.clone(), k }))
            .collect(),
        ReductionKind::Knapsack01ToPartition | ReductionKind::Knapsack01ToIlp => knapsack_sources(),
        ReductionKind::HamCircuitToHamCycle => (1..=4).flat_map(all_digraphs).map(|digraph| Problem::HamCircuit { digraph }).collect(),
        ReductionKind::HamCycleToTsp => (3..=5).flat_map(all_graphs).map(|graph| Problem::HamCycle { graph }).collect(),
        ReductionKind::TspToIlp => tsp_sources(),
    }
}

/// Instances checked and the ones where the round trip failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub kind: ReductionKind,
    pub instances: usize,
    pub failures: Vec<usize>,
}

/// Runs [`round_trip`] over [`reduction_sources`], spread over the
/// available cores; the outcome does not depend on the split.
pub fn check_reduction_suite(kind: ReductionKind, limits: &OracleLimits) -> Result<SuiteOutcome> {
    let sources = reduction_sources(kind);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = sources.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<usize>>> = std::thread::scope(|s| {
        let handles: Vec<_> = sources
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                s.spawn(move || {
                    let mut bad = Vec::new();
                    for (i, p) in part.iter().enumerate() {
                        let r = reduce(kind, p)?;
                        if !round_trip(&r, limits)?.holds() {
                            bad.push(c * chunk + i);
                        }
                    }
                    Ok(bad)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(SuiteOutcome { kind, instances: sources.len(), failures })
}

/// Clauses of one or two literals on distinct variables of `x_1..x_n`.
pub fn two_literal_clauses(n: usize) -> Vec<Vec<Lit>> {
    plain_clauses(n).into_iter().filter(|c| c.len() <= 2).collect()
}

/// Set of satisfying assignments as a bitmask over `0..2^n`, bit `i` of the
/// index being `x_{i+1}`.
fn truth_mask(clause: &[Lit], n: usize) -> u64 {
    (0..1u64 << n).filter(|a| clause.iter().any(|l| (a >> (l.var - 1) & 1 == 1) == l.pos)).fold(0, |m, a| m | 1 << a)
}

/// Formulas checked and the ones where the 2-SAT solver disagreed with
/// exhaustive evaluation or produced a bad assignment or certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoSatOutcome {
    pub formulas: usize,
    pub unsat: usize,
    pub failures: Vec<Vec<Vec<i64>>>,
}

impl TwoSatOutcome {
    fn check(&mut self, f: &Cnf, satisfiable: bool) -> Result<()> {
        use super::twosat::{certifies_unsat, twosat_solve, TwoSat};
        self.formulas += 1;
        let ok = match twosat_solve(f)? {
            TwoSat::Sat(a) => satisfiable && f.satisfied_by(&a),
            TwoSat::Unsat { var } => {
                self.unsat += 1;
                !satisfiable && certifies_unsat(f, var)?
            }
        };
        if !ok {
            self.failures.push(f.signed_clauses());
        }
        Ok(())
    }
}

/// Every set of at most `max_r` distinct clauses from [`two_literal_clauses`]
/// on `n <= 6` variables.
pub fn twosat_exhaustive(n: usize, max_r: usize) -> Result<TwoSatOutcome> {
    assert!(n <= 6);
    let pool = two_literal_clauses(n);
    let masks: Vec<u64> = pool.iter().map(|c| truth_mask(c, n)).collect();
    let mut out = TwoSatOutcome { formulas: 0, unsat: 0, failures: Vec::new() };
    let mut chosen = Vec::with_capacity(max_r);
    #[allow(clippy::too_many_arguments)]
    fn go(
        pool: &[Vec<Lit>],
        masks: &[u64],
        n: usize,
        start: usize,
        left: usize,
        sat: u64,
        chosen: &mut Vec<usize>,
        out: &mut TwoSatOutcome,
    ) -> Result<()> {
        let f = Cnf::new(n, chosen.iter().map(|&i| pool[i].clone()).collect()).expect("pool clauses are well-formed");
        out.check(&f, sat != 0)?;
        if left == 0 {
            return Ok(());
        }
        for i in start..pool.len() {
            chosen.push(i);
            go(pool, masks, n, i + 1, left - 1, sat & masks[i], chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    let all = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    go(&pool, &masks, n, 0, max_r, all, &mut chosen, &mut out)?;
    Ok(out)
}

/// `count` seeded random 2-CNF formulas with `1..=max_n` variables and up to
/// `2n` clauses, checked against exhaustive evaluation.
pub fn twosat_random(count: usize, max_n: usize, seed: u64) -> Result<TwoSatOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = TwoSatOutcome { formulas: 0, unsat: 0, failures: Vec::new() };
    for _ in 0..count {
        let n = rng.gen_range(1..=max_n);
        let r = rng.gen_range(1..=2 * n);
        let clauses: Vec<Vec<i64>> = (0..r)
            .map(|_| {
                let width = rng.gen_range(1..=2);
                (0..width)
                    .map(|_| {
                        let v = rng.gen_range(1..=n as i64);
                        if rng.gen() {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        let f = Cnf::from_signed(n, &clauses)?;
        let satisfiable = (0..1u32 << n).any(|a| {
            let assignment: Vec<bool> = (0..n).map(|i| a >> i & 1 == 1).collect();
            f.satisfied_by(&assignment)
        });
        out.check(&f, satisfiable)?;
    }
    Ok(out)
}
