//! Brute-force reference implementations.
//!
//! Everything here is dense and exhaustive and reads graphs only through
//! the graph types. Nothing from the kernel modules is used, so an oracle
//! agreeing with a kernel is evidence rather than tautology.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};
use crate::KernelError;

/// Largest vertex count any oracle accepts.
pub const ORACLE_LIMIT: usize = 4096;

fn guard(n: usize) -> Result<(), KernelError> {
    if n > ORACLE_LIMIT {
        Err(KernelError::SizeGuard {
            n,
            limit: ORACLE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Dense weighted adjacency matrix, row-major. Absent entries are 0; a
/// separate presence mask keeps zero-weight edges distinguishable.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    weights: Vec<f64>,
    present: Vec<bool>,
}

impl DenseMatrix {
    pub fn from_graph<G: Graph>(g: &G) -> Result<Self, KernelError> {
        let n = g.vertex_count();
        guard(n)?;
        let mut weights = vec![0.0; n * n];
        let mut present = vec![false; n * n];
        for i in 0..n {
            for (j, w) in g.neighbors(i) {
                weights[i * n + j] = w;
                present[i * n + j] = true;
            }
        }
        Ok(DenseMatrix {
            n,
            weights,
            present,
        })
    }

    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            weights: vec![0.0; n * n],
            present: vec![false; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.present[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                self.has_edge(i, j) == self.has_edge(j, i)
                    && self.get(i, j).to_bits() == self.get(j, i).to_bits()
            })
        })
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }
}

/// O(n²) Dijkstra: repeatedly settle the unsettled vertex with the smallest
/// `(distance, id)` and relax every row entry.
pub fn oracle_dijkstra<G: Graph>(g: &G, source: VertexId) -> Result<Vec<f64>, KernelError> {
    let m = DenseMatrix::from_graph(g)?;
    let n = m.size();
    assert!(source < n, "source out of range");
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[source] = 0.0;
    loop {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && best.is_none_or(|b| dist[v] < dist[b]) {
                best = Some(v);
            }
        }
        let Some(u) = best else { break };
        done[u] = true;
        for v in 0..n {
            if m.has_edge(u, v) && !done[v] && dist[u] + m.get(u, v) < dist[v] {
                dist[v] = dist[u] + m.get(u, v);
            }
        }
    }
    Ok(dist)
}

/// Dense matrix-vector product, summing every row in column order.
pub fn oracle_power_step(m: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), m.size(), "dimension mismatch");
    (0..m.size())
        .map(|i| {
            let mut acc = 0.0;
            for (j, xj) in x.iter().enumerate() {
                acc += m.get(i, j) * xj;
            }
            acc
        })
        .collect()
}

/// One normalized power-iteration step.
pub fn oracle_normalized_step(m: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    let mut y = oracle_power_step(m, x);
    let norm: f64 = y.iter().map(|v| if *v < 0.0 { -*v } else { *v }).sum();
    for v in &mut y {
        *v /= norm;
    }
    y
}

/// Clustering coefficient by testing every ordered pair of distinct
/// neighbors against the adjacency matrix.
pub fn oracle_cc<G: Graph>(g: &G, u: VertexId) -> Result<f64, KernelError> {
    Ok(oracle_cc_matrix(&DenseMatrix::from_graph(g)?, u))
}

/// [`oracle_cc`] against a prebuilt matrix, for checking many samples.
pub fn oracle_cc_matrix(m: &DenseMatrix, u: VertexId) -> f64 {
    let nbrs: Vec<usize> = (0..m.size()).filter(|&v| m.has_edge(u, v)).collect();
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for &a in &nbrs {
        for &b in &nbrs {
            if a != b && m.has_edge(a, b) {
                links += 1;
            }
        }
    }
    links as f64 / (k * (k - 1)) as f64
}

/// Vertices with color above `alpha` and the directed pairs among them.
pub fn oracle_filter<G: Graph>(g: &G, alpha: f64) -> (Vec<VertexId>, Vec<(VertexId, VertexId)>) {
    let keep: Vec<bool> = g.colors().iter().map(|&c| c > alpha).collect();
    let vertices = (0..g.vertex_count()).filter(|&v| keep[v]).collect();
    let mut edges = Vec::new();
    for e in g.edges() {
        if keep[e.u] && keep[e.v] {
            edges.push((e.u, e.v));
            edges.push((e.v, e.u));
        }
    }
    (vertices, edges)
}

fn oracle_entropy(p: f64) -> f64 {
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * libm::log2(p);
    }
    if p < 1.0 {
        h -= (1.0 - p) * libm::log2(1.0 - p);
    }
    h
}

/// Sum of group entropies, with internal and boundary counts taken from
/// scratch over the full directed edge list.
pub fn oracle_objective(groups: &[Vec<VertexId>], edges: &[(VertexId, VertexId)]) -> f64 {
    let mut total = 0.0;
    for group in groups {
        let (mut internal, mut external) = (0usize, 0usize);
        for &(a, b) in edges {
            match (group.contains(&a), group.contains(&b)) {
                (true, true) => internal += 1,
                (true, false) | (false, true) => external += 1,
                _ => {}
            }
        }
        let d = if internal + external == 0 {
            0.0
        } else {
            internal as f64 / (internal + external) as f64
        };
        total += oracle_entropy(d);
    }
    total
}
