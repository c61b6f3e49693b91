use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{canonicalize, BuildGraph, EdgeTriple, Graph, GraphError, VertexId};

#[derive(Debug)]
struct Node {
    target: VertexId,
    weight: f64,
    next: Link,
}

type Link = Option<Box<Node>>;

/// Per-vertex singly linked neighbor lists.
///
/// Every neighbor record is its own heap allocation and is reached by
/// following the previous record's `next` pointer, so walking a
/// neighborhood chases pointers instead of scanning a contiguous block.
pub struct AdjListGraph {
    colors: Vec<f64>,
    heads: Vec<Link>,
    degrees: Vec<usize>,
    directed_edges: usize,
}

impl AdjListGraph {
    fn empty(colors: Vec<f64>) -> Self {
        let n = colors.len();
        let mut heads = Vec::with_capacity(n);
        heads.resize_with(n, || None);
        AdjListGraph {
            colors,
            heads,
            degrees: alloc::vec![0; n],
            directed_edges: 0,
        }
    }

    fn push_front(&mut self, from: VertexId, target: VertexId, weight: f64) {
        let next = self.heads[from].take();
        self.heads[from] = Some(Box::new(Node {
            target,
            weight,
            next,
        }));
        self.degrees[from] += 1;
        self.directed_edges += 1;
    }
}

/// Walks one linked neighbor list.
#[derive(Debug, Clone)]
pub struct AdjNeighbors<'a> {
    cur: Option<&'a Node>,
}

impl Iterator for AdjNeighbors<'_> {
    type Item = (VertexId, f64);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        let node = self.cur?;
        self.cur = node.next.as_deref();
        Some((node.target, node.weight))
    }
}

impl Graph for AdjListGraph {
    type Neighbors<'a> = AdjNeighbors<'a>;

    fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    fn colors(&self) -> &[f64] {
        &self.colors
    }

    fn degree(&self, v: VertexId) -> usize {
        self.degrees[v]
    }

    #[inline]
    fn neighbors(&self, u: VertexId) -> AdjNeighbors<'_> {
        AdjNeighbors {
            cur: self.heads[u].as_deref(),
        }
    }

    fn directed_edge_count(&self) -> usize {
        self.directed_edges
    }
}

impl BuildGraph for AdjListGraph {
    /// Neighbors appear in the insertion order of the canonical edge set,
    /// which is ascending neighbor id for every vertex.
    fn build(n: usize, colors: Vec<f64>, edges: &[EdgeTriple]) -> Result<Self, GraphError> {
        let canon = canonicalize(n, &colors, edges)?;
        let mut g = AdjListGraph::empty(colors);
        // Prepending in reverse edge order leaves each list in forward order.
        for e in canon.iter().rev() {
            g.push_front(e.v, e.u, e.w);
            g.push_front(e.u, e.v, e.w);
        }
        Ok(g)
    }
}

impl Clone for AdjListGraph {
    fn clone(&self) -> Self {
        let mut g = AdjListGraph::empty(self.colors.clone());
        let mut buf = Vec::new();
        for u in 0..self.vertex_count() {
            buf.clear();
            buf.extend(self.neighbors(u));
            for &(v, w) in buf.iter().rev() {
                g.push_front(u, v, w);
            }
        }
        g
    }
}

impl core::fmt::Debug for AdjListGraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("AdjListGraph")
            .field("vertices", &self.vertex_count())
            .field("directed_edges", &self.directed_edges)
            .finish()
    }
}

// The default recursive drop would overflow the stack on hub vertices.
impl Drop for AdjListGraph {
    fn drop(&mut self) {
        for head in &mut self.heads {
            let mut link = head.take();
            while let Some(mut node) = link {
                link = node.next.take();
            }
        }
    }
}
