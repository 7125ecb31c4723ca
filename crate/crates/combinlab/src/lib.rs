//! Combinatorial algorithms with exact cost accounting.
//!
//! Every comparison-, weighing- or question-based algorithm here runs against
//! an oracle that counts queries, so worst-case counts can be checked against
//! closed-form bounds. The NP side pairs every reduction with witness maps in
//! both directions, a verifier and an exhaustive decision oracle.

pub mod approx;
pub mod bench;
pub mod complexity;
pub mod dp;
pub mod error;
pub mod generate;
pub mod graph;
pub mod intmath;
pub mod io;
pub mod oracles;
pub mod paths;
pub mod search_games;
pub mod sorting;
pub mod tournament;

pub use error::{Error, Result};
