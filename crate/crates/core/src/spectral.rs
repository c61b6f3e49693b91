//! Kernel 2: dominant eigenvector by power iteration.
//!
//! The iterate starts uniform, is multiplied by the weighted adjacency
//! matrix through the graph's own neighbor lists (never a dense matrix) and
//! is renormalized to unit L1 norm. Iteration stops after `max_iters`
//! steps or once the relative L1 change drops to `epsilon` or below.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::KernelError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub epsilon: f64,
    pub max_iters: usize,
}

impl SpectralParams {
    pub fn check(&self) -> Result<(), KernelError> {
        if self.epsilon > 0.0 {
            Ok(())
        } else {
            Err(KernelError::InvalidParams("epsilon must be positive"))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    /// Final L1-normalized iterate.
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Relative change of the last step; infinite when no step ran.
    pub theta: f64,
    /// Weighted degree of every vertex. Computed as part of the kernel's
    /// work but not consumed by the iteration.
    pub row_sums: Vec<f64>,
}

pub fn row_sums<G: Graph>(g: &G) -> Vec<f64> {
    (0..g.vertex_count())
        .map(|i| g.neighbors(i).map(|(_, w)| w).sum())
        .collect()
}

/// `y[i] = sum of w * x[j]` over the entries `i -> j`, accumulated in
/// neighbor order.
pub fn matvec<G: Graph>(g: &G, x: &[f64]) -> Result<Vec<f64>, KernelError> {
    let mut y = vec![0.0; g.vertex_count()];
    matvec_into(g, x, &mut y)?;
    Ok(y)
}

fn matvec_into<G: Graph>(g: &G, x: &[f64], y: &mut [f64]) -> Result<(), KernelError> {
    let n = g.vertex_count();
    if x.len() != n {
        return Err(KernelError::DimensionMismatch {
            expected: n,
            actual: x.len(),
        });
    }
    for (i, yi) in y.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (j, w) in g.neighbors(i) {
            acc += w * x[j];
        }
        *yi = acc;
    }
    Ok(())
}

pub fn l1_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| if *v < 0.0 { -*v } else { *v }).sum()
}

pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| if x > y { x - y } else { y - x })
        .sum()
}

pub fn run_k2<G: Graph>(g: &G, params: &SpectralParams) -> Result<SpectralResult, KernelError> {
    run_k2_observed(g, params, |_, _, _| {})
}

/// Like [`run_k2`], calling `observe(iteration, previous, next)` after every
/// normalized step.
pub fn run_k2_observed<G: Graph>(
    g: &G,
    params: &SpectralParams,
    mut observe: impl FnMut(usize, &[f64], &[f64]),
) -> Result<SpectralResult, KernelError> {
    params.check()?;
    let n = g.vertex_count();
    let row_sums = row_sums(g);

    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    let mut theta = f64::INFINITY;
    while iterations < params.max_iters && theta > params.epsilon {
        matvec_into(g, &x, &mut next)?;
        let norm = l1_norm(&next);
        if norm == 0.0 {
            return Err(KernelError::ZeroVector {
                iteration: iterations + 1,
            });
        }
        for v in next.iter_mut() {
            *v /= norm;
        }
        theta = l1_distance(&next, &x) / l1_norm(&x);
        iterations += 1;
        observe(iterations, &x, &next);
        core::mem::swap(&mut x, &mut next);
    }

    Ok(SpectralResult {
        x,
        iterations,
        theta,
        row_sums,
    })
}
