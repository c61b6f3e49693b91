//! Kernel 4: clustering coefficients of randomly sampled vertices.
//!
//! Every undirected edge counts as two directed entries, so for a vertex
//! with neighborhood `S` the coefficient is the number of directed entries
//! between members of `S` divided by `|S|·(|S| - 1)`. Vertices of degree
//! 0 or 1 get 0.

use alloc::vec::Vec;

use crate::graph::{Graph, GraphError, VertexId};
use crate::{KernelError, Prng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricParams {
    pub samples: usize,
    pub seed: u64,
}

/// `(vertex, coefficient)` pairs in draw order; repeats allowed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoefficientTable {
    pub entries: Vec<(VertexId, f64)>,
}

pub fn clustering_coefficient<G: Graph>(g: &G, u: VertexId) -> Result<f64, KernelError> {
    let n = g.vertex_count();
    if u >= n {
        return Err(GraphError::EndpointOutOfRange { vertex: u, n }.into());
    }
    let mut scratch = Vec::new();
    Ok(coefficient_with(g, u, &mut scratch))
}

/// Neighborhood kept as a sorted id array and probed by binary search.
fn coefficient_with<G: Graph>(g: &G, u: VertexId, members: &mut Vec<VertexId>) -> f64 {
    members.clear();
    members.extend(g.neighbors(u).map(|(v, _)| v));
    members.sort_unstable();
    let k = members.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for &v in members.iter() {
        links += g
            .neighbors(v)
            .filter(|(t, _)| members.binary_search(t).is_ok())
            .count();
    }
    links as f64 / (k * (k - 1)) as f64
}

pub fn run_k4<G: Graph>(g: &G, params: &MetricParams) -> Result<CoefficientTable, KernelError> {
    let n = g.vertex_count();
    if n == 0 && params.samples > 0 {
        return Err(KernelError::InvalidParams(
            "cannot sample vertices of an empty graph",
        ));
    }
    let mut rng = Prng::new(params.seed);
    let mut scratch = Vec::new();
    let mut entries = Vec::with_capacity(params.samples);
    for _ in 0..params.samples {
        let u = rng.uniform_int(n)?;
        entries.push((u, coefficient_with(g, u, &mut scratch)));
    }
    Ok(CoefficientTable { entries })
}
