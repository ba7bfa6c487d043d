//! Ramsey critical `(C_n, K_6)` graphs: blow-ups of decorated quotients on
//! five cliques, the solvers needed to verify them, and the cyclic
//! separation arguments behind their classification.

pub mod bitset;
pub mod blowup;
pub mod enumerate;
pub mod format;
pub mod graph;
pub mod lemma_lab;
pub mod solvers;

pub use bitset::VertexSet;
pub use graph::{Graph, GraphError};
