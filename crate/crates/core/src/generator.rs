//! Sequential preferential-attachment generator for scale-free graphs.
//!
//! Generation starts from a clique of `clique_size` hub vertices. Each later
//! vertex draws a target degree uniformly from `1..=2·avg_degree` and picks
//! each neighbor from the endpoint list, which holds one entry per edge
//! endpoint so a vertex is chosen with probability proportional to its
//! current degree.
//!
//! PRNG draw order is part of the contract:
//! 1. clique edge weights, edges in lexicographic `(u, v)` order;
//! 2. clique vertex colors, in id order;
//! 3. per new vertex `u`: its color, its target degree, then for each
//!    attachment the endpoint index (plus any resamples) and the weight.
//!
//! A sampled endpoint equal to `u`, or one `u` is already attached to, is
//! resampled up to [`MAX_RESAMPLES`] times; if every retry fails the
//! attachment is skipped and nothing is appended to the endpoint list.

use alloc::vec::Vec;

use crate::graph::{BuildGraph, EdgeTriple, VertexId};
use crate::{KernelError, Prng};

pub const MAX_RESAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorParams {
    pub vertices: usize,
    pub avg_degree: usize,
    pub clique_size: usize,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn check(&self) -> Result<(), KernelError> {
        if self.clique_size < 2 {
            return Err(KernelError::InvalidParams("clique size must be at least 2"));
        }
        if self.vertices < self.clique_size {
            return Err(KernelError::InvalidParams("vertex count below clique size"));
        }
        if self.avg_degree < 1 {
            return Err(KernelError::InvalidParams(
                "average degree must be at least 1",
            ));
        }
        Ok(())
    }
}

/// Raw generator output, before it is loaded into a representation.
#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub colors: Vec<f64>,
    /// Edges in creation order; the vertex created later is `v` for
    /// attachments, `u < v` for clique edges.
    pub edges: Vec<EdgeTriple>,
    /// One entry per endpoint of every accepted edge.
    pub endpoints: Vec<VertexId>,
    pub attempted_attachments: usize,
    pub skipped_attachments: usize,
}

impl GeneratedGraph {
    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn build<G: BuildGraph>(&self) -> G {
        G::build(self.colors.len(), self.colors.clone(), &self.edges)
            .expect("generator emits well-formed graphs")
    }

    /// Fraction of attachments dropped by the resample policy.
    pub fn skip_rate(&self) -> f64 {
        if self.attempted_attachments == 0 {
            0.0
        } else {
            self.skipped_attachments as f64 / self.attempted_attachments as f64
        }
    }
}

pub fn generate(params: &GeneratorParams) -> Result<GeneratedGraph, KernelError> {
    params.check()?;
    let n = params.vertices;
    let c = params.clique_size;
    let mut rng = Prng::new(params.seed);

    let clique_edges = c * (c - 1) / 2;
    let expected_edges = clique_edges + (n - c) * (params.avg_degree + 1);
    let mut edges = Vec::with_capacity(expected_edges);
    let mut endpoints = Vec::with_capacity(2 * expected_edges);
    let mut colors = Vec::with_capacity(n);

    for u in 0..c {
        for v in u + 1..c {
            edges.push(EdgeTriple::new(u, v, rng.uniform_real()));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    for _ in 0..c {
        colors.push(rng.uniform_real());
    }

    let mut attempted = 0;
    let mut skipped = 0;
    let mut attached: Vec<VertexId> = Vec::with_capacity(2 * params.avg_degree);
    for u in c..n {
        colors.push(rng.uniform_real());
        let degree = rng.uniform_int(2 * params.avg_degree)? + 1;
        attached.clear();
        for _ in 0..degree {
            attempted += 1;
            let mut target = None;
            for _ in 0..=MAX_RESAMPLES {
                let v = endpoints[rng.uniform_int(endpoints.len())?];
                if v != u && !attached.contains(&v) {
                    target = Some(v);
                    break;
                }
            }
            let Some(v) = target else {
                skipped += 1;
                continue;
            };
            edges.push(EdgeTriple::new(v, u, rng.uniform_real()));
            endpoints.push(u);
            endpoints.push(v);
            attached.push(v);
        }
    }

    Ok(GeneratedGraph {
        colors,
        edges,
        endpoints,
        attempted_attachments: attempted,
        skipped_attachments: skipped,
    })
}
