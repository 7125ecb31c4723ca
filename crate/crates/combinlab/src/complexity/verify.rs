//! Polynomial-time witness checks.
//!
//! A witness of the wrong shape, length or index range is an error; a
//! well-shaped witness that fails the property is `Ok(false)`.

use num_bigint::BigUint;

use super::instance::{Problem, Witness};
use crate::error::{Error, Result};

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedWitness(msg.into())
}

/// Distinct indices below `bound`, returned as a membership mask.
fn index_set(idx: &[usize], bound: usize, what: &str) -> Result<Vec<bool>> {
    let mut mask = vec![false; bound];
    for &i in idx {
        if i >= bound {
            return Err(malformed(format!("{what} {i} out of range 0..{bound}")));
        }
        if mask[i] {
            return Err(malformed(format!("{what} {i} repeated")));
        }
        mask[i] = true;
    }
    Ok(mask)
}

/// A permutation of `0..n`.
fn permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(malformed(format!("order has {} entries, expected {n}", order.len())));
    }
    index_set(order, n, "vertex").map(|_| ())
}

pub fn verify_witness(p: &Problem, w: &Witness) -> Result<bool> {
    p.validate()?;
    if w.shape() != p.witness_shape() {
        return Err(malformed(format!("{} expects a {} witness, got {}", p.name(), p.witness_shape(), w.shape())));
    }
    match (p, w) {
        (Problem::Sat { formula } | Problem::ThreeSat { formula }, Witness::Assignment(a)) => {
            if a.len() != formula.n() {
                return Err(malformed(format!("assignment has {} values for {} variables", a.len(), formula.n())));
            }
            Ok(formula.satisfied_by(a))
        }
        (Problem::Clique { graph, k }, Witness::Vertices(s)) => {
            index_set(s, graph.n(), "vertex")?;
            let pairwise = s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| graph.has_edge(u, v)));
            Ok(s.len() >= *k && pairwise)
        }
        (Problem::IndependentSet { graph, k }, Witness::Vertices(s)) => {
            index_set(s, graph.n(), "vertex")?;
            let pairwise = s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| !graph.has_edge(u, v)));
            Ok(s.len() >= *k && pairwise)
        }
        (Problem::VertexCover { graph, k }, Witness::Vertices(s)) => {
            let mask = index_set(s, graph.n(), "vertex")?;
            Ok(s.len() <= *k && graph.edges().iter().all(|&(u, v)| mask[u] || mask[v]))
        }
        (Problem::Coloring { graph, k }, Witness::Colors(c)) => {
            if c.len() != graph.n() {
                return Err(malformed(format!("{} colors for {} vertices", c.len(), graph.n())));
            }
            Ok(c.iter().all(|&x| x < *k) && graph.edges().iter().all(|&(u, v)| c[u] != c[v]))
        }
        (Problem::ExactCover { system }, Witness::Indices(idx)) => {
            index_set(idx, system.m(), "set")?;
            let mut count = vec![0usize; system.universe()];
            for &i in idx {
                for &e in &system.family()[i] {
                    count[e] += 1;
                }
            }
            Ok(count.iter().all(|&c| c == 1))
        }
        (Problem::Representatives { system }, Witness::Indices(idx)) => {
            let chosen = index_set(idx, system.universe(), "element")?;
            Ok(system.family().iter().all(|s| s.iter().filter(|&&e| chosen[e]).count() == 1))
        }
        (Problem::SetCover { system, k }, Witness::Indices(idx)) => {
            index_set(idx, system.m(), "set")?;
            let mut hit = vec![false; system.universe()];
            for &i in idx {
                for &e in &system.family()[i] {
                    hit[e] = true;
                }
            }
            Ok(idx.len() <= *k && hit.into_iter().all(|h| h))
        }
        (Problem::Knapsack01 { a, b }, Witness::Indices(idx)) => {
            index_set(idx, a.len(), "item")?;
            let s: BigUint = idx.iter().map(|&i| &a[i]).sum();
            Ok(&s == b)
        }
        (Problem::KnapsackDecision { values, volumes, capacity, target }, Witness::Indices(idx)) => {
            index_set(idx, values.len(), "item")?;
            let c: u128 = idx.iter().map(|&i| values[i] as u128).sum();
            let v: u128 = idx.iter().map(|&i| volumes[i] as u128).sum();
            Ok(v <= *capacity as u128 && c >= *target as u128)
        }
        (Problem::Partition { a }, Witness::Indices(idx)) => {
            let mask = index_set(idx, a.len(), "item")?;
            let inside: BigUint = idx.iter().map(|&i| &a[i]).sum();
            let outside: BigUint = (0..a.len()).filter(|&i| !mask[i]).map(|i| &a[i]).sum();
            Ok(inside == outside)
        }
        (Problem::HamCircuit { digraph }, Witness::Order(o)) => {
            permutation(o, digraph.n())?;
            let n = o.len();
            Ok(n >= 2 && (0..n).all(|i| digraph.has_arc(o[i], o[(i + 1) % n])))
        }
        (Problem::HamCycle { graph }, Witness::Order(o)) => {
            permutation(o, graph.n())?;
            let n = o.len();
            Ok((0..n).all(|i| graph.has_edge(o[i], o[(i + 1) % n])))
        }
        (Problem::Tsp { cost, bound }, Witness::Order(o)) => {
            permutation(o, cost.len())?;
            Ok(tour_cost(cost, o) <= *bound as i128)
        }
        (Problem::Ilp { ilp }, Witness::Point(x)) => {
            if x.len() != ilp.vars() {
                return Err(malformed(format!("point has {} coordinates for {} variables", x.len(), ilp.vars())));
            }
            Ok(ilp.feasible(x))
        }
        _ => unreachable!("shape checked above"),
    }
}

/// Closed tour cost, wrapping from the last city to the first.
pub fn tour_cost(cost: &[Vec<i64>], order: &[usize]) -> i128 {
    let n = order.len();
    (0..n).map(|i| cost[order[i]][order[(i + 1) % n]] as i128).sum()
}
