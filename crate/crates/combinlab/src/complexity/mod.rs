//! NP reductions with witness maps, witness verifiers, exhaustive decision
//! oracles and the polynomial 2-SAT solver.

pub mod brute;
pub mod cnf;
pub mod enumerate;
pub mod instance;
pub mod reduce;
pub mod twosat;
pub mod verify;

pub use brute::{brute_force_decide, brute_force_decide_with, OracleLimits};
pub use cnf::{Cnf, Lit};
pub use instance::{Ilp, IlpRow, Problem, Relation, SetSystem, Witness};
pub use reduce::{reduce, Reduction, ReductionKind};
pub use twosat::{twosat_solve, TwoSat};
pub use verify::verify_witness;
