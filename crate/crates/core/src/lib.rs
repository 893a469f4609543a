//! Approximation and exact algorithms for graph problems parameterized by
//! hybrid structural measures: modulators to a base class, H-tree
//! decompositions and H-elimination decompositions.

pub mod bucket_ocean;
pub mod cli;
pub mod decomp;
pub mod domset;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod model;
pub mod problem;
pub mod solvers;
pub mod twh;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use problem::{Problem, ProblemInstance, Solution};
