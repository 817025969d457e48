//! Solution-free sets of integers.
//!
//! Linear equations over `[n]`, the hypergraph of their non-trivial solutions,
//! closed-form extremal bounds for `px + qy = rz`, link hypergraphs with their
//! maximal independent sets, and exhaustive oracles that check all of it at
//! small `n`.

mod arith;
pub mod bounds;
pub mod equation;
pub mod error;
pub mod grid;
pub mod link;
pub mod mis;
pub mod oracle;
pub mod rate;
pub mod set;
pub mod solutions;

pub use equation::{parse_equation, partition_to_triple, CanonicalTriple, Classification, LinearEquation};
pub use error::{Error, Result};
pub use set::IntegerSet;
pub use solutions::{enumerate_solutions, is_free, solution_hypergraph, SolutionHypergraph};
pub use rate::RateExpr;
