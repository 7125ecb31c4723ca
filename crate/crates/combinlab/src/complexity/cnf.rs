//! CNF formulas over variables `1..=n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Literal `x_var` (`pos`) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub pos: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, pos: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, pos: false }
    }

    pub fn negate(self) -> Self {
        Lit { var: self.var, pos: !self.pos }
    }

    /// DIMACS style: `3` is `x3`, `-3` is its negation. Zero is rejected.
    pub fn from_signed(x: i64) -> Result<Self> {
        if x == 0 {
            return Err(Error::invalid("literal 0"));
        }
        Ok(Lit { var: x.unsigned_abs() as usize, pos: x > 0 })
    }

    pub fn to_signed(self) -> i64 {
        if self.pos {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    /// Value under an assignment indexed `0..n` for variables `1..=n`.
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.pos
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pos {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "~x{}", self.var)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CnfRepr {
    n: usize,
    clauses: Vec<Vec<i64>>,
}

/// Conjunction of clauses. Clauses are never empty and only mention
/// variables `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CnfRepr", into = "CnfRepr")]
pub struct Cnf {
    n: usize,
    clauses: Vec<Vec<Lit>>,
}

impl TryFrom<CnfRepr> for Cnf {
    type Error = Error;
    fn try_from(r: CnfRepr) -> Result<Self> {
        Cnf::from_signed(r.n, &r.clauses)
    }
}

impl From<Cnf> for CnfRepr {
    fn from(f: Cnf) -> Self {
        CnfRepr { n: f.n, clauses: f.signed_clauses() }
    }
}

impl Cnf {
    pub fn new(n: usize, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::invalid(format!("clause {} is empty", j + 1)));
            }
            if let Some(l) = c.iter().find(|l| l.var == 0 || l.var > n) {
                return Err(Error::OutOfRange(format!("variable {} not in 1..={n}", l.var)));
            }
        }
        Ok(Cnf { n, clauses })
    }

    pub fn from_signed(n: usize, clauses: &[Vec<i64>]) -> Result<Self> {
        let clauses =
            clauses.iter().map(|c| c.iter().map(|&x| Lit::from_signed(x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        Cnf::new(n, clauses)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn signed_clauses(&self) -> Vec<Vec<i64>> {
        self.clauses.iter().map(|c| c.iter().map(|l| l.to_signed()).collect()).collect()
    }

    /// Every clause has exactly three literals.
    pub fn is_3cnf(&self) -> bool {
        self.clauses.iter().all(|c| c.len() == 3)
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.n, "assignment length");
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(assignment)))
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                write!(f, " & ")?;
            }
            write!(f, "(")?;
            for (i, l) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
