pub mod audit;
pub mod error;
pub mod function;
pub mod generate;
pub mod hypergraph;
pub mod io;
pub mod kernel;
mod linalg;
pub mod operators;
pub mod spectral;
pub mod structure;
pub mod symmetry;

pub use error::{Error, Result};
pub use function::{HyperedgeFunction, VertexFunction};
pub use hypergraph::{build_hypergraph, Hyperedge, HyperedgeSpec, Hypergraph, HypergraphSpec};
