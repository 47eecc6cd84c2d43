//! Commutants of `{S, T}`, exhaustive search for non-negative integer modular
//! invariants, and eigenspace decompositions of invariants.

mod commutant;
mod decompose;
mod search;

pub use commutant::{commutant, CommutantReport};
pub use decompose::{decompose, decompose_integral, EigenCluster};
pub use search::{
    enumerate_integer_invariants, theta_mask, InvariantMatrix, InvariantsReport, SearchConfig,
    BUDGET_ENV,
};
