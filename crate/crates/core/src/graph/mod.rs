//! Undirected, weighted, vertex-colored graphs.
//!
//! Every undirected edge `{u, v}` with weight `w` is stored as two directed
//! entries `u -> v` and `v -> u` carrying the same weight. Vertex ids are
//! dense (`0..n`), colors and weights live in `[0, 1]`, and there are no
//! self-loops or parallel edges.

mod adjlist;
mod csr;
mod validate;

use alloc::vec::Vec;

pub use adjlist::{AdjListGraph, AdjNeighbors};
pub use csr::{CsrGraph, CsrNeighbors};
pub use validate::{validate_graph, ValidationReport, Violation};

/// Dense vertex index, `0 <= id < n`.
pub type VertexId = usize;

/// One undirected edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeTriple {
    pub u: VertexId,
    pub v: VertexId,
    pub w: f64,
}

impl EdgeTriple {
    pub const fn new(u: VertexId, v: VertexId, w: f64) -> Self {
        EdgeTriple { u, v, w }
    }

    /// The same edge with `u < v`.
    pub fn canonical(self) -> Self {
        if self.u <= self.v {
            self
        } else {
            EdgeTriple {
                u: self.v,
                v: self.u,
                w: self.w,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) appears more than once")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    EndpointOutOfRange { vertex: VertexId, n: usize },
    #[error("color {value} of vertex {vertex} is outside [0, 1]")]
    ColorOutOfRange { vertex: VertexId, value: f64 },
    #[error("weight {value} of edge ({u}, {v}) is outside [0, 1]")]
    WeightOutOfRange {
        u: VertexId,
        v: VertexId,
        value: f64,
    },
    #[error("expected {expected} colors, got {actual}")]
    ColorCountMismatch { expected: usize, actual: usize },
}

pub(crate) fn in_unit_interval(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

/// Read access shared by both representations.
pub trait Graph {
    type Neighbors<'a>: Iterator<Item = (VertexId, f64)>
    where
        Self: 'a;

    fn vertex_count(&self) -> usize;

    fn colors(&self) -> &[f64];

    fn color(&self, v: VertexId) -> f64 {
        self.colors()[v]
    }

    fn degree(&self, v: VertexId) -> usize;

    /// Directed entries out of `u`. Panics if `u` is out of range.
    fn neighbors(&self, u: VertexId) -> Self::Neighbors<'_>;

    /// Number of directed entries, twice the undirected edge count.
    fn directed_edge_count(&self) -> usize;

    fn edge_count(&self) -> usize {
        self.directed_edge_count() / 2
    }

    fn try_neighbors(&self, u: VertexId) -> Result<Self::Neighbors<'_>, GraphError> {
        let n = self.vertex_count();
        if u >= n {
            return Err(GraphError::EndpointOutOfRange { vertex: u, n });
        }
        Ok(self.neighbors(u))
    }

    /// Undirected edges with `u < v`, sorted by `(u, v)`.
    fn edges(&self) -> Vec<EdgeTriple> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            out.extend(
                self.neighbors(u)
                    .filter(|&(v, _)| u < v)
                    .map(|(v, w)| EdgeTriple::new(u, v, w)),
            );
        }
        out.sort_unstable_by_key(|e| (e.u, e.v));
        out
    }

    fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }
}

/// Construction from an abstract edge set.
pub trait BuildGraph: Graph + Sized {
    fn build(n: usize, colors: Vec<f64>, edges: &[EdgeTriple]) -> Result<Self, GraphError>;

    /// Rebuilds `other` in this representation.
    fn from_graph<G: Graph>(other: &G) -> Self {
        Self::build(
            other.vertex_count(),
            other.colors().to_vec(),
            &other.edges(),
        )
        .expect("source graph is well-formed")
    }
}

/// Checks every input invariant and returns the edges with `u < v`, sorted
/// by `(u, v)`.
pub(crate) fn canonicalize(
    n: usize,
    colors: &[f64],
    edges: &[EdgeTriple],
) -> Result<Vec<EdgeTriple>, GraphError> {
    if colors.len() != n {
        return Err(GraphError::ColorCountMismatch {
            expected: n,
            actual: colors.len(),
        });
    }
    if let Some((vertex, &value)) = colors
        .iter()
        .enumerate()
        .find(|(_, c)| !in_unit_interval(**c))
    {
        return Err(GraphError::ColorOutOfRange { vertex, value });
    }
    let mut canon = Vec::with_capacity(edges.len());
    for e in edges {
        for vertex in [e.u, e.v] {
            if vertex >= n {
                return Err(GraphError::EndpointOutOfRange { vertex, n });
            }
        }
        if e.u == e.v {
            return Err(GraphError::SelfLoop(e.u));
        }
        if !in_unit_interval(e.w) {
            return Err(GraphError::WeightOutOfRange {
                u: e.u,
                v: e.v,
                value: e.w,
            });
        }
        canon.push(e.canonical());
    }
    canon.sort_unstable_by_key(|e| (e.u, e.v));
    if let Some(pair) = canon
        .windows(2)
        .find(|p| (p[0].u, p[0].v) == (p[1].u, p[1].v))
    {
        return Err(GraphError::DuplicateEdge {
            u: pair[0].u,
            v: pair[0].v,
        });
    }
    Ok(canon)
}

fn sorted_entries<G: Graph>(g: &G, u: VertexId, buf: &mut Vec<(VertexId, u64)>) {
    buf.clear();
    buf.extend(g.neighbors(u).map(|(v, w)| (v, w.to_bits())));
    buf.sort_unstable();
}

/// Exact, representation-agnostic equality: same vertex count, bitwise
/// equal colors and bitwise equal edge-triple sets.
pub fn graphs_equal<A: Graph, B: Graph>(a: &A, b: &B) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.directed_edge_count() != b.directed_edge_count() {
        return false;
    }
    let same_colors = a
        .colors()
        .iter()
        .zip(b.colors())
        .all(|(x, y)| x.to_bits() == y.to_bits());
    if !same_colors {
        return false;
    }
    let (mut ea, mut eb) = (Vec::new(), Vec::new());
    (0..n).all(|u| {
        sorted_entries(a, u, &mut ea);
        sorted_entries(b, u, &mut eb);
        ea == eb
    })
}

/// Immutable deep copy of a graph's full state.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSnapshot {
    colors: Vec<f64>,
    edges: Vec<EdgeTriple>,
}

impl GraphSnapshot {
    pub fn capture<G: Graph>(g: &G) -> Self {
        GraphSnapshot {
            colors: g.colors().to_vec(),
            edges: g.edges(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[f64] {
        &self.colors
    }

    /// Canonical undirected edges, `u < v`, sorted.
    pub fn edges(&self) -> &[EdgeTriple] {
        &self.edges
    }

    pub fn restore<G: BuildGraph>(&self) -> G {
        G::build(self.colors.len(), self.colors.clone(), &self.edges)
            .expect("snapshot was taken from a well-formed graph")
    }
}
