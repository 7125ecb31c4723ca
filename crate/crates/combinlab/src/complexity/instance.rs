//! Decision problems, their witnesses and well-formedness checks.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use super::cnf::Cnf;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

/// Big integers in JSON: plain numbers when they fit in 64 bits, decimal
/// strings otherwise. Both forms are accepted on input.
pub(crate) mod big {
    use num_bigint::{BigInt, BigUint};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        U(u64),
        I(i64),
        S(String),
    }

    impl Raw {
        fn into_int<E: serde::de::Error>(self) -> Result<BigInt, E> {
            match self {
                Raw::U(u) => Ok(BigInt::from(u)),
                Raw::I(i) => Ok(BigInt::from(i)),
                Raw::S(s) => s.trim().parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
            }
        }
    }

    #[derive(Serialize)]
    #[serde(untagged)]
    enum Out {
        I(i64),
        S(String),
    }

    fn out(x: &BigInt) -> Out {
        match i64::try_from(x) {
            Ok(v) => Out::I(v),
            Err(_) => Out::S(x.to_string()),
        }
    }

    fn to_uint<E: serde::de::Error>(x: BigInt) -> Result<BigUint, E> {
        x.to_biguint().ok_or_else(|| E::custom("negative value where a non-negative integer is required"))
    }

    pub mod uint {
        use super::*;
        pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
            out(&BigInt::from(x.clone())).serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
            to_uint(Raw::deserialize(d)?.into_int()?)
        }
    }

    pub mod uint_vec {
        use super::*;
        pub fn serialize<S: Serializer>(x: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            x.iter().map(|v| out(&BigInt::from(v.clone()))).collect::<Vec<_>>().serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
            Vec::<Raw>::deserialize(d)?.into_iter().map(|r| r.into_int().and_then(to_uint)).collect()
        }
    }

    pub mod int {
        use super::*;
        pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            out(x).serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            Raw::deserialize(d)?.into_int()
        }
    }

    pub mod int_vec {
        use super::*;
        pub fn serialize<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            x.iter().map(out).collect::<Vec<_>>().serialize(s)
        }
        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Raw>::deserialize(d)?.into_iter().map(|r| r.into_int()).collect()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SetSystemRepr {
    universe: usize,
    family: Vec<Vec<usize>>,
}

/// A ground set `0..universe` and a family of subsets, each stored sorted
/// without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetSystemRepr", into = "SetSystemRepr")]
pub struct SetSystem {
    universe: usize,
    family: Vec<Vec<usize>>,
}

impl TryFrom<SetSystemRepr> for SetSystem {
    type Error = Error;
    fn try_from(r: SetSystemRepr) -> Result<Self> {
        SetSystem::new(r.universe, r.family)
    }
}

impl From<SetSystem> for SetSystemRepr {
    fn from(s: SetSystem) -> Self {
        SetSystemRepr { universe: s.universe, family: s.family }
    }
}

impl SetSystem {
    pub fn new(universe: usize, family: Vec<Vec<usize>>) -> Result<Self> {
        let mut fam = Vec::with_capacity(family.len());
        for (i, mut s) in family.into_iter().enumerate() {
            if let Some(&e) = s.iter().find(|&&e| e >= universe) {
                return Err(Error::OutOfRange(format!("set {} has element {e} >= {universe}", i + 1)));
            }
            s.sort_unstable();
            let len = s.len();
            s.dedup();
            if s.len() != len {
                return Err(Error::invalid(format!("set {} repeats an element", i + 1)));
            }
            fam.push(s);
        }
        Ok(SetSystem { universe, family: fam })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }

    pub fn m(&self) -> usize {
        self.family.len()
    }

    pub fn covers(&self) -> bool {
        let mut hit = vec![false; self.universe];
        for s in &self.family {
            for &e in s {
                hit[e] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// `sets_of[e]`: indices of the sets containing `e`.
    pub fn sets_of(&self) -> Vec<Vec<usize>> {
        let mut b = vec![Vec::new(); self.universe];
        for (i, s) in self.family.iter().enumerate() {
            for &e in s {
                b[e].push(i);
            }
        }
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn holds(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpRow {
    #[serde(with = "big::int_vec")]
    pub coeffs: Vec<BigInt>,
    pub rel: Relation,
    #[serde(with = "big::int")]
    pub rhs: BigInt,
}

/// Integer program over `0 <= x_i <= upper[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ilp {
    pub upper: Vec<u64>,
    pub rows: Vec<IlpRow>,
}

impl Ilp {
    pub fn vars(&self) -> usize {
        self.upper.len()
    }

    pub fn feasible(&self, x: &[BigInt]) -> bool {
        x.len() == self.vars()
            && x.iter().zip(&self.upper).all(|(v, &u)| v >= &BigInt::from(0) && v <= &BigInt::from(u))
            && self.rows.iter().all(|r| {
                let lhs: BigInt = r.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                r.rel.holds(&lhs, &r.rhs)
            })
    }
}

/// Every decision problem handled by the reductions, verifiers and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum Problem {
    Sat {
        formula: Cnf,
    },
    ThreeSat {
        formula: Cnf,
    },
    /// Clique of at least `k` vertices.
    Clique {
        graph: Graph,
        k: usize,
    },
    /// Independent set of at least `k` vertices.
    IndependentSet {
        graph: Graph,
        k: usize,
    },
    /// Vertex cover of at most `k` vertices.
    VertexCover {
        graph: Graph,
        k: usize,
    },
    /// Proper coloring with colors `0..k`.
    Coloring {
        graph: Graph,
        k: usize,
    },
    ExactCover {
        system: SetSystem,
    },
    /// A set of ground elements meeting every listed set exactly once.
    Representatives {
        system: SetSystem,
    },
    /// At most `k` sets covering the ground set.
    SetCover {
        system: SetSystem,
        k: usize,
    },
    /// 0-1 solution of `sum a_i x_i = b`.
    Knapsack01 {
        #[serde(with = "big::uint_vec")]
        a: Vec<BigUint>,
        #[serde(with = "big::uint")]
        b: BigUint,
    },
    /// Items with total volume at most `capacity` and total value at least `target`.
    KnapsackDecision {
        values: Vec<u64>,
        volumes: Vec<u64>,
        capacity: u64,
        target: u64,
    },
    Partition {
        #[serde(with = "big::uint_vec")]
        a: Vec<BigUint>,
    },
    HamCircuit {
        digraph: Digraph,
    },
    HamCycle {
        graph: Graph,
    },
    /// Tour of total cost at most `bound`.
    Tsp {
        cost: Vec<Vec<i64>>,
        bound: i64,
    },
    Ilp {
        ilp: Ilp,
    },
}

/// Certificate shapes; which one a problem takes is fixed by its tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `assignment[i]` is the value of variable `i + 1`.
    Assignment(Vec<bool>),
    Vertices(Vec<usize>),
    /// Color per vertex.
    Colors(Vec<usize>),
    /// Chosen sets, items or ground elements.
    Indices(Vec<usize>),
    /// Vertices in circuit or tour order.
    Order(Vec<usize>),
    Point(#[serde(with = "big::int_vec")] Vec<BigInt>),
}

impl Witness {
    pub fn shape(&self) -> &'static str {
        match self {
            Witness::Assignment(_) => "assignment",
            Witness::Vertices(_) => "vertices",
            Witness::Colors(_) => "colors",
            Witness::Indices(_) => "indices",
            Witness::Order(_) => "order",
            Witness::Point(_) => "point",
        }
    }
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Sat { .. } => "sat",
            Problem::ThreeSat { .. } => "three_sat",
            Problem::Clique { .. } => "clique",
            Problem::IndependentSet { .. } => "independent_set",
            Problem::VertexCover { .. } => "vertex_cover",
            Problem::Coloring { .. } => "coloring",
            Problem::ExactCover { .. } => "exact_cover",
            Problem::Representatives { .. } => "representatives",
            Problem::SetCover { .. } => "set_cover",
            Problem::Knapsack01 { .. } => "knapsack01",
            Problem::KnapsackDecision { .. } => "knapsack_decision",
            Problem::Partition { .. } => "partition",
            Problem::HamCircuit { .. } => "ham_circuit",
            Problem::HamCycle { .. } => "ham_cycle",
            Problem::Tsp { .. } => "tsp",
            Problem::Ilp { .. } => "ilp",
        }
    }

    /// The witness shape this problem expects.
    pub fn witness_shape(&self) -> &'static str {
        match self {
            Problem::Sat { .. } | Problem::ThreeSat { .. } => "assignment",
            Problem::Clique { .. } | Problem::IndependentSet { .. } | Problem::VertexCover { .. } => "vertices",
            Problem::Coloring { .. } => "colors",
            Problem::ExactCover { .. }
            | Problem::Representatives { .. }
            | Problem::SetCover { .. }
            | Problem::Knapsack01 { .. }
            | Problem::KnapsackDecision { .. }
            | Problem::Partition { .. } => "indices",
            Problem::HamCircuit { .. } | Problem::HamCycle { .. } | Problem::Tsp { .. } => "order",
            Problem::Ilp { .. } => "point",
        }
    }

    /// Structural checks beyond what the field types enforce.
    pub fn validate(&self) -> Result<()> {
        match self {
            Problem::Sat { .. } => Ok(()),
            Problem::ThreeSat { formula } => {
                if formula.is_3cnf() {
                    Ok(())
                } else {
                    Err(Error::invalid("3-SAT formula has a clause without exactly three literals"))
                }
            }
            Problem::Clique { graph, k } | Problem::IndependentSet { graph, k } | Problem::VertexCover { graph, k } => {
                if *k > graph.n() {
                    Err(Error::invalid(format!("k = {k} exceeds the {} vertices", graph.n())))
                } else {
                    Ok(())
                }
            }
            Problem::Coloring { .. } | Problem::ExactCover { .. } | Problem::Representatives { .. } => Ok(()),
            Problem::SetCover { system, .. } => {
                if system.covers() {
                    Ok(())
                } else {
                    Err(Error::invalid("family does not cover the ground set"))
                }
            }
            Problem::Knapsack01 { .. } | Problem::Partition { .. } => Ok(()),
            Problem::KnapsackDecision { values, volumes, .. } => {
                if values.len() == volumes.len() {
                    Ok(())
                } else {
                    Err(Error::invalid("values and volumes differ in length"))
                }
            }
            Problem::HamCircuit { digraph } => {
                if digraph.n() == 0 {
                    Err(Error::invalid("empty digraph"))
                } else {
                    Ok(())
                }
            }
            Problem::HamCycle { graph } => {
                if graph.n() < 3 {
                    Err(Error::invalid("a Hamiltonian cycle needs at least 3 vertices"))
                } else {
                    Ok(())
                }
            }
            Problem::Tsp { cost, .. } => validate_tsp_matrix(cost),
            Problem::Ilp { ilp } => {
                for (i, r) in ilp.rows.iter().enumerate() {
                    if r.coeffs.len() != ilp.vars() {
                        return Err(Error::invalid(format!(
                            "row {} has {} coefficients for {} variables",
                            i + 1,
                            r.coeffs.len(),
                            ilp.vars()
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Square, at least 3 cities, zero diagonal, non-negative entries.
pub fn validate_tsp_matrix(cost: &[Vec<i64>]) -> Result<()> {
    let n = cost.len();
    if n < 3 {
        return Err(Error::invalid("a tour needs at least 3 cities"));
    }
    for (i, row) in cost.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        if row[i] != 0 {
            return Err(Error::invalid(format!("nonzero diagonal entry at city {}", i + 1)));
        }
        if row.iter().any(|&c| c < 0) {
            return Err(Error::invalid(format!("negative cost in row {}", i + 1)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_keeps_big_numbers() {
        let big: BigUint = BigUint::from(7u32).pow(40);
        let p = Problem::Knapsack01 { a: vec![BigUint::from(4u32), big.clone()], b: big };
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"problem\":\"knapsack01\""));
        assert!(s.contains("[4,\""));
        let back: Problem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn graph_and_set_system_validate_on_parse() {
        let bad = r#"{"problem":"clique","graph":{"n":2,"edges":[[0,0]]},"k":1}"#;
        assert!(serde_json::from_str::<Problem>(bad).is_err());
        let bad = r#"{"problem":"exact_cover","system":{"universe":2,"family":[[0,2]]}}"#;
        assert!(serde_json::from_str::<Problem>(bad).is_err());
        let ok = r#"{"problem":"set_cover","system":{"universe":2,"family":[[1,0]]},"k":1}"#;
        let p: Problem = serde_json::from_str(ok).unwrap();
        p.validate().unwrap();
    }

    #[test]
    fn tsp_matrix_checks() {
        assert!(validate_tsp_matrix(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(validate_tsp_matrix(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 1]]).is_err());
        assert!(validate_tsp_matrix(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).is_ok());
    }
}
