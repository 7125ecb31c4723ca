//! Seeded instance generators writing the file formats of [`crate::io`].

use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::approx::{
    planted_hamiltonian_graph, random_graph, random_metric, random_set_system, tsp_gap_instance, vc_greedy_counterexample,
};
use crate::complexity::Cnf;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::io::{to_json, write_digraph, write_dimacs, write_graph, write_matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `G(n, p)`, graph text.
    Graph,
    /// Random digraph with arc probability `p`, graph text.
    Digraph,
    /// `G(n, p)` plus a planted Hamiltonian cycle.
    Hamiltonian,
    /// L1 distances of random points, integer grid.
    Metric,
    /// Gap instance of a planted Hamiltonian graph with `eps`, integer grid.
    Gap,
    /// Random 3-CNF with `n` variables and `m` clauses, DIMACS.
    Cnf,
    /// Random 2-CNF with `n` variables and `m` clauses, DIMACS.
    TwoCnf,
    /// Degree-greedy counterexample, graph text.
    Counterexample,
    /// Covering set system over `n` elements with `m` sets, JSON.
    SetSystem,
    /// Knapsack JSON with `n` items.
    Knapsack,
    /// Random permutation of `1..=n`.
    Permutation,
    /// Random bitonic sequence of length `n`.
    Bitonic,
}

impl Family {
    pub const ALL: [(&'static str, Family); 12] = [
        ("graph", Family::Graph),
        ("digraph", Family::Digraph),
        ("hamiltonian", Family::Hamiltonian),
        ("metric", Family::Metric),
        ("gap", Family::Gap),
        ("cnf", Family::Cnf),
        ("2cnf", Family::TwoCnf),
        ("counterexample", Family::Counterexample),
        ("set-system", Family::SetSystem),
        ("knapsack", Family::Knapsack),
        ("permutation", Family::Permutation),
        ("bitonic", Family::Bitonic),
    ];
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.iter().find(|(name, _)| *name == s).map(|&(_, f)| f).ok_or_else(|| Error::invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n: usize,
    /// Clause or set count; defaults depend on the family.
    pub m: Option<usize>,
    pub p: f64,
    pub eps: Ratio<i64>,
    pub seed: u64,
}

fn random_cnf(n: usize, m: usize, width: usize, rng: &mut ChaCha8Rng) -> Result<Cnf> {
    if n < width {
        return Err(Error::invalid(format!("{width}-literal clauses need at least {width} variables")));
    }
    let clauses: Vec<Vec<i64>> = (0..m)
        .map(|_| {
            let vars: Vec<usize> = (1..=n).collect::<Vec<_>>().choose_multiple(rng, width).copied().collect();
            vars.into_iter().map(|v| if rng.gen() { v as i64 } else { -(v as i64) }).collect()
        })
        .collect();
    Cnf::from_signed(n, &clauses)
}

/// File text for `family`; the same parameters always give the same bytes.
pub fn generate(family: Family, p: &GenParams) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.n;
    if !(0.0..=1.0).contains(&p.p) {
        return Err(Error::invalid("p must lie in [0, 1]"));
    }
    Ok(match family {
        Family::Graph => write_graph(&random_graph(n, p.p, &mut rng)),
        Family::Digraph => {
            let arcs = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v).filter(|_| rng.gen_bool(p.p)).collect();
            write_digraph(&Digraph::new(n, arcs)?)
        }
        Family::Hamiltonian => {
            if n < 3 {
                return Err(Error::invalid("a Hamiltonian cycle needs n >= 3"));
            }
            write_graph(&planted_hamiltonian_graph(n, p.p, p.seed))
        }
        Family::Metric => {
            if n < 3 {
                return Err(Error::invalid("metric instances need n >= 3"));
            }
            write_matrix(random_metric(n, 100, &mut rng).cost())
        }
        Family::Gap => {
            if n < 3 {
                return Err(Error::invalid("gap instances need n >= 3"));
            }
            write_matrix(&tsp_gap_instance(&planted_hamiltonian_graph(n, p.p, p.seed), p.eps)?)
        }
        Family::Cnf => write_dimacs(&random_cnf(n, p.m.unwrap_or(4 * n), 3, &mut rng)?),
        Family::TwoCnf => write_dimacs(&random_cnf(n, p.m.unwrap_or(2 * n), 2, &mut rng)?),
        Family::Counterexample => write_graph(&vc_greedy_counterexample(n)?),
        Family::SetSystem => {
            let m = p.m.unwrap_or(n.max(1));
            if m == 0 {
                return Err(Error::invalid("need at least one set"));
            }
            to_json(&random_set_system(n, m, &mut rng))
        }
        Family::Knapsack => {
            let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=1000)).collect();
            let volumes: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=100)).collect();
            let capacity = volumes.iter().sum::<u64>() / 2;
            to_json(&json!({ "values": values, "volumes": volumes, "capacity": capacity }))
        }
        Family::Permutation => {
            let mut v: Vec<usize> = (1..=n).collect();
            v.shuffle(&mut rng);
            v.iter().map(|x| format!("{x}\n")).collect()
        }
        Family::Bitonic => {
            if n == 0 {
                return Err(Error::invalid("need n >= 1"));
            }
            let peak = rng.gen_range(1..=n);
            let mut vals: Vec<i64> = Vec::with_capacity(n);
            let mut x = 0i64;
            for i in 1..=n {
                x += if i <= peak { rng.gen_range(1..=9) } else { -rng.gen_range(1..=9) };
                vals.push(x);
            }
            vals.iter().map(|x| format!("{x}\n")).collect()
        }
    })
}
