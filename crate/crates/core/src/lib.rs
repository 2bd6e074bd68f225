//! Sparse associative arrays over pluggable value algebras.
//!
//! A graph's source and target incidence arrays `E_out`, `E_in` multiply to
//! `E_outᵀ ⊕.⊗ E_in`, whose nonzero pattern is the graph's adjacency
//! relation for every graph exactly when the algebra has no non-trivial
//! additive inverses, no zero divisors, and a zero that annihilates under
//! `⊗`. [`criteria`] checks those conditions and builds counterexample
//! graphs when they fail.

pub mod algebra;
pub mod array;
pub mod cli;
pub mod criteria;
pub mod graph;
pub mod io;
