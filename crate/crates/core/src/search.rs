//! Kernel 1: single-source shortest paths by expanding an ordered frontier.
//!
//! The frontier holds discovered-but-unsettled vertices keyed by their
//! current path length. Once a vertex is extracted its length is final and
//! it is never queued again.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, GraphError, VertexId};
use crate::KernelError;

const ABSENT: usize = usize::MAX;

/// Shortest path lengths from one source; unreachable vertices hold
/// `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathWeights(pub Vec<f64>);

impl PathWeights {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn is_reachable(&self, v: VertexId) -> bool {
        self.0[v].is_finite()
    }
}

/// Indexed binary min-heap over vertex ids with decrease-key.
///
/// Ordering is by `(key, id)`, so equal keys pop smallest id first.
#[derive(Debug, Clone)]
pub struct FrontierQueue {
    heap: Vec<VertexId>,
    keys: Vec<f64>,
    pos: Vec<usize>,
}

impl FrontierQueue {
    pub fn new(vertex_count: usize) -> Self {
        FrontierQueue {
            heap: Vec::new(),
            keys: vec![f64::INFINITY; vertex_count],
            pos: vec![ABSENT; vertex_count],
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos[v] != ABSENT
    }

    pub fn key(&self, v: VertexId) -> Option<f64> {
        self.contains(v).then(|| self.keys[v])
    }

    /// Adds `v`, or lowers its key if it is already queued with a larger one.
    pub fn insert(&mut self, v: VertexId, key: f64) {
        if self.contains(v) {
            self.decrease_key(v, key);
            return;
        }
        self.keys[v] = key;
        self.pos[v] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1);
    }

    /// Lowers the key of a queued vertex; larger keys are ignored.
    pub fn decrease_key(&mut self, v: VertexId, key: f64) {
        debug_assert!(self.contains(v));
        if key < self.keys[v] {
            self.keys[v] = key;
            self.sift_up(self.pos[v]);
        }
    }

    pub fn extract_min(&mut self) -> Result<VertexId, KernelError> {
        let top = *self.heap.first().ok_or(KernelError::EmptyQueue)?;
        let last = self.heap.pop().expect("non-empty");
        self.pos[top] = ABSENT;
        if last != top {
            self.heap[0] = last;
            self.pos[last] = 0;
            self.sift_down(0);
        }
        Ok(top)
    }

    #[inline]
    fn less(&self, a: VertexId, b: VertexId) -> bool {
        let (ka, kb) = (self.keys[a], self.keys[b]);
        ka < kb || (ka == kb && a < b)
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i]] = i;
        self.pos[self.heap[j]] = j;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.less(self.heap[i], self.heap[parent]) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        let len = self.heap.len();
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < len && self.less(self.heap[l], self.heap[best]) {
                best = l;
            }
            if r < len && self.less(self.heap[r], self.heap[best]) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }
}

/// Lowers `lengths[v]` to `lengths[u] + w` when that is strictly shorter.
#[inline]
pub fn relax(lengths: &mut [f64], u: VertexId, v: VertexId, w: f64) -> bool {
    let candidate = lengths[u] + w;
    if candidate < lengths[v] {
        lengths[v] = candidate;
        true
    } else {
        false
    }
}

pub fn run_k1<G: Graph>(g: &G, source: VertexId) -> Result<PathWeights, KernelError> {
    let n = g.vertex_count();
    if source >= n {
        return Err(GraphError::EndpointOutOfRange { vertex: source, n }.into());
    }
    let mut lengths = vec![f64::INFINITY; n];
    let mut settled = vec![false; n];
    let mut queue = FrontierQueue::new(n);

    lengths[source] = 0.0;
    queue.insert(source, 0.0);
    while let Ok(u) = queue.extract_min() {
        settled[u] = true;
        for (v, w) in g.neighbors(u) {
            if relax(&mut lengths, u, v, w) && !settled[v] {
                queue.insert(v, lengths[v]);
            }
        }
    }
    Ok(PathWeights(lengths))
}
