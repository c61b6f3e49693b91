//! Graph representations, a preferential-attachment generator, the five
//! benchmark kernels and brute-force reference oracles.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches
//! files, clocks or the command line lives in the `graphbench` crate.
//!
//! Kernels are generic over [`Graph`], so the same code runs against the
//! contiguous [`CsrGraph`] and the pointer-chasing [`AdjListGraph`].

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod coalesce;
mod error;
pub mod generator;
pub mod graph;
pub mod metric;
pub mod optimize;
pub mod oracles;
pub mod rng;
pub mod search;
pub mod spectral;

pub use error::KernelError;
pub use graph::{
    graphs_equal, validate_graph, AdjListGraph, BuildGraph, CsrGraph, EdgeTriple, Graph,
    GraphError, GraphSnapshot, ValidationReport, VertexId, Violation,
};
pub use rng::Prng;
