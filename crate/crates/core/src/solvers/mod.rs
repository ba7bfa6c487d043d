//! Exact solvers used both in production checks and as independent ground
//! truth for the structural shortcuts in [`crate::blowup`].

pub mod clique;
pub mod cycle;
pub mod iso;

pub use clique::{independence_number, maximum_clique, Optimum};
pub use cycle::{cycles_of_length, for_each_cycle_of_length, has_cycle_of_length, CycleError, CycleWitness};
pub use iso::{are_isomorphic, canonical_small, is_isomorphism, IsoError, CANONICAL_SMALL_MAX};
