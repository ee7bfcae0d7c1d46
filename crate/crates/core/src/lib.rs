//! Exact solving, verification and constructions for [k]-Roman domination
//! and independent [k]-Roman domination.

pub mod bounds;
pub mod families;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod reduction;
pub mod solvers;

pub use graph::{Graph, GraphBuilder, GraphError, VertexId};
pub use labeling::{KLabeling, VerifyReport};
