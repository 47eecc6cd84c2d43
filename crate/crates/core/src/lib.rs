//! Genus-1 modular data of the su(N) level-k modular categories, simple-current
//! (Schellekens) algebras and their torus partition functions, and tools that
//! turn a non-trivial partition function into a reducibility certificate for
//! the genus-1 quantum representation.
//!
//! Everything that decides reducibility (conformal weights, twists, characters,
//! bihomomorphisms, partition functions) is computed in exact rational
//! arithmetic. The S and T matrices are complex doubles and only feed
//! verification, commutants and eigen-decompositions.

pub mod cli;
mod error;
pub mod intmat;
pub mod invariants;
pub mod liealg;
mod linalg;
pub mod modular;
pub mod schellekens;
pub mod simple_currents;

pub use error::{Error, Result};
pub use intmat::IntMatrix;
pub use liealg::{Alcove, Rational, Weight};
pub use modular::{ModularDatum, RationalPhase, RelationReport};
pub use schellekens::{ReducibilityReport, SchellekensAlgebra, TorusPartitionFunction};
pub use simple_currents::{EffectiveCenter, SimpleCurrent};
