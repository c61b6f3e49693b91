use alloc::vec;
use alloc::vec::Vec;
use core::iter::Copied;
use core::iter::Zip;
use core::slice::Iter;

use super::{canonicalize, BuildGraph, EdgeTriple, Graph, GraphError, VertexId};

/// Compressed sparse row storage of the directed expansion.
///
/// The neighbors of `u` are `targets[offsets[u]..offsets[u + 1]]`, with the
/// matching weights at the same positions in `weights`. `offsets` has one
/// trailing entry so the last vertex has a boundary too. Graphs built
/// through [`BuildGraph::build`] keep each slice sorted by neighbor id.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrGraph {
    colors: Vec<f64>,
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Vec<f64>,
}

pub type CsrNeighbors<'a> = Zip<Copied<Iter<'a, VertexId>>, Copied<Iter<'a, f64>>>;

impl CsrGraph {
    /// Assembles a graph from raw arrays without checking anything.
    ///
    /// Intended for loading and for exercising [`CsrGraph::validate`];
    /// the [`Graph`] accessors may panic on malformed arrays.
    pub fn from_raw_parts(
        colors: Vec<f64>,
        offsets: Vec<usize>,
        targets: Vec<VertexId>,
        weights: Vec<f64>,
    ) -> Self {
        CsrGraph {
            colors,
            offsets,
            targets,
            weights,
        }
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl Graph for CsrGraph {
    type Neighbors<'a> = CsrNeighbors<'a>;

    fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    fn colors(&self) -> &[f64] {
        &self.colors
    }

    #[inline]
    fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    fn neighbors(&self, u: VertexId) -> CsrNeighbors<'_> {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    fn directed_edge_count(&self) -> usize {
        self.targets.len()
    }
}

impl BuildGraph for CsrGraph {
    fn build(n: usize, colors: Vec<f64>, edges: &[EdgeTriple]) -> Result<Self, GraphError> {
        let canon = canonicalize(n, &colors, edges)?;

        let mut offsets = vec![0usize; n + 1];
        for e in &canon {
            offsets[e.u + 1] += 1;
            offsets[e.v + 1] += 1;
        }
        for i in 1..=n {
            offsets[i] += offsets[i - 1];
        }

        // Walking the sorted edge set fills every slice in ascending order:
        // for vertex x, all (a, x) with a < x precede all (x, b).
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * canon.len()];
        let mut weights = vec![0.0; 2 * canon.len()];
        for e in &canon {
            for (from, to) in [(e.u, e.v), (e.v, e.u)] {
                let at = cursor[from];
                targets[at] = to;
                weights[at] = e.w;
                cursor[from] += 1;
            }
        }

        debug_assert_eq!(offsets[n], targets.len());
        Ok(CsrGraph {
            colors,
            offsets,
            targets,
            weights,
        })
    }
}
