//! Finite-model workbench for topological protomodular algebras.
//!
//! An algebra here has one (n+1)-ary operation `θ`, binary operations
//! `α₁..αₙ` and constants `e₁..eₙ`. The library checks the protomodular
//! identities and the right-cancellability conditions by exhaustive scan,
//! enumerates the topologies compatible with an algebra, builds the
//! uniformity generated by the coverings `C_H`, and searches small carriers
//! for structures with chosen properties.
//!
//! Every scan reports the lexicographically least counterexample, and
//! parallel scans return the same answer for any worker count.

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod example45;
pub mod fixtures;
pub mod limits;
mod parallel;
pub mod search;
pub mod topology;
pub mod uniformity;

pub use algebra::{FiniteAlgebra, OperationTable};
pub use checks::{CheckReport, Counterexample};
pub use error::{Error, Result};
pub use limits::Limits;
pub use parallel::with_workers;
pub use topology::FiniteTopology;
