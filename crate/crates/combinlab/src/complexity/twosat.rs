//! 2-SAT through the implication graph and its strongly connected components.

use serde::{Deserialize, Serialize};

use super::cnf::{Cnf, Lit};
use crate::error::{Error, Result};
use crate::graph::{component_index, scc_kosaraju, Digraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoSat {
    Sat(Vec<bool>),
    /// `x_var` and its negation share a strongly connected component.
    Unsat {
        var: usize,
    },
}

/// Vertex of literal `l`: `2(var-1)` for the negation, `2(var-1)+1` for `x`.
/// With this numbering, unconstrained variables come out false.
pub fn lit_vertex(l: Lit) -> usize {
    2 * (l.var - 1) + usize::from(l.pos)
}

pub fn vertex_lit(v: usize) -> Lit {
    Lit { var: v / 2 + 1, pos: v % 2 == 1 }
}

/// Arcs `~a -> b` and `~b -> a` per clause `a | b`; a unit clause `a` is
/// read as `a | a`. Tautological clauses would only add loops and are skipped.
pub fn implication_graph(f: &Cnf) -> Result<Digraph> {
    let mut arcs = Vec::with_capacity(2 * f.clauses().len());
    for (j, c) in f.clauses().iter().enumerate() {
        let (a, b) = match c.as_slice() {
            [a] => (*a, *a),
            [a, b] => (*a, *b),
            _ => return Err(Error::invalid(format!("clause {} has {} literals; 2-SAT allows at most 2", j + 1, c.len()))),
        };
        for (x, y) in [(a.negate(), b), (b.negate(), a)] {
            if x != y {
                arcs.push((lit_vertex(x), lit_vertex(y)));
            }
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    Digraph::new(2 * f.n(), arcs)
}

/// `(a, b)` an arc implies `(~b, ~a)` an arc.
pub fn is_skew_symmetric(g: &Digraph) -> bool {
    g.arcs().iter().all(|&(a, b)| g.has_arc(b ^ 1, a ^ 1))
}

/// Components come in topological order; a literal is set true when its
/// component comes after its negation's, so no true literal implies a false one.
pub fn twosat_solve(f: &Cnf) -> Result<TwoSat> {
    let g = implication_graph(f)?;
    debug_assert!(is_skew_symmetric(&g));
    let comps = scc_kosaraju(&g);
    let idx = component_index(g.n(), &comps);
    let mut assignment = Vec::with_capacity(f.n());
    for var in 1..=f.n() {
        let (p, q) = (idx[lit_vertex(Lit::pos(var))], idx[lit_vertex(Lit::neg(var))]);
        if p == q {
            return Ok(TwoSat::Unsat { var });
        }
        assignment.push(p > q);
    }
    Ok(TwoSat::Sat(assignment))
}

/// Independent check of an unsatisfiability certificate.
pub fn certifies_unsat(f: &Cnf, var: usize) -> Result<bool> {
    if var == 0 || var > f.n() {
        return Ok(false);
    }
    let g = implication_graph(f)?;
    let comps = scc_kosaraju(&g);
    let (p, n) = (lit_vertex(Lit::pos(var)), lit_vertex(Lit::neg(var)));
    Ok(comps.iter().any(|c| c.contains(&p) && c.contains(&n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let f = Cnf::from_signed(2, &[vec![1, 2], vec![-1, 2]]).unwrap();
        match twosat_solve(&f).unwrap() {
            TwoSat::Sat(a) => {
                assert!(a[1]);
                assert!(f.satisfied_by(&a));
            }
            other => panic!("{other:?}"),
        }
        let f = Cnf::from_signed(2, &[vec![1, 2], vec![1, -2], vec![-1, 2], vec![-1, -2]]).unwrap();
        assert_eq!(twosat_solve(&f).unwrap(), TwoSat::Unsat { var: 1 });
        assert!(certifies_unsat(&f, 1).unwrap());
        let empty = Cnf::new(3, vec![]).unwrap();
        assert_eq!(twosat_solve(&empty).unwrap(), TwoSat::Sat(vec![false; 3]));
    }

    #[test]
    fn rejects_long_clauses() {
        let f = Cnf::from_signed(3, &[vec![1, 2, 3]]).unwrap();
        assert!(twosat_solve(&f).is_err());
    }

    #[test]
    fn unit_clause_forces() {
        let f = Cnf::from_signed(1, &[vec![-1]]).unwrap();
        assert_eq!(twosat_solve(&f).unwrap(), TwoSat::Sat(vec![false]));
        let f = Cnf::from_signed(1, &[vec![1], vec![-1]]).unwrap();
        assert_eq!(twosat_solve(&f).unwrap(), TwoSat::Unsat { var: 1 });
    }
}
