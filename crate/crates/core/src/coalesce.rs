//! Kernel 3: repeated neighborhood coalescing.
//!
//! Each step picks a live vertex uniformly at random, merges it together
//! with all its neighbors into one mega-vertex whose color is their mean,
//! and rewires every edge leaving the merged set to the mega-vertex. Edges
//! inside the set disappear; parallel edges produced by rewiring collapse
//! to one edge carrying the largest weight.
//!
//! Ids stay dense after every step: the mega-vertex takes the smallest id of
//! the merged set and the remaining vertices close up the gaps in order.
//! Internally the kernel keeps stable slots and a Fenwick tree of live
//! slots, which yields the same ids without renumbering on every step.
//!
//! The input graph is never touched. Work happens on a private adjacency
//! copy, and the pre-run snapshot in the result restores the original.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{BuildGraph, CsrGraph, EdgeTriple, Graph, GraphSnapshot, VertexId};
use crate::{KernelError, Prng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoalesceParams {
    pub gamma: f64,
    pub seed: u64,
}

impl CoalesceParams {
    pub fn check(&self) -> Result<(), KernelError> {
        if (0.0..=1.0).contains(&self.gamma) {
            Ok(())
        } else {
            Err(KernelError::InvalidParams("gamma must lie in [0, 1]"))
        }
    }

    /// Number of coalescing steps requested for a graph of `n` vertices.
    pub fn steps_for(&self, n: usize) -> usize {
        (self.gamma * n as f64) as usize
    }
}

#[derive(Debug, Clone)]
pub struct CoalesceResult<G> {
    pub coalesced: G,
    pub steps_performed: usize,
    pub original: GraphSnapshot,
}

/// What one coalescing step did.
#[derive(Debug, Clone, PartialEq)]
pub struct CoalesceStep {
    /// Dense id of the randomly selected vertex before the step.
    pub selected: VertexId,
    /// Dense id of the mega-vertex after the step.
    pub mega_vertex: VertexId,
    /// Colors of the merged vertices, in ascending id order.
    pub member_colors: Vec<f64>,
    pub mega_color: f64,
    pub vertices_before: usize,
    pub vertices_after: usize,
}

/// Order-statistics over live slots.
#[derive(Debug, Clone)]
struct Fenwick {
    tree: Vec<usize>,
}

impl Fenwick {
    fn all_live(n: usize) -> Self {
        let mut tree = vec![0; n + 1];
        for i in 1..=n {
            tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= n {
                tree[parent] += tree[i];
            }
        }
        Fenwick { tree }
    }

    fn remove(&mut self, slot: usize) {
        let mut i = slot + 1;
        while i < self.tree.len() {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Live slots strictly before `slot`.
    fn rank(&self, slot: usize) -> usize {
        let mut i = slot;
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i &= i - 1;
        }
        sum
    }

    /// Slot holding the `k`-th live vertex, zero-based.
    fn select(&self, mut k: usize) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = if n == 0 {
            0
        } else {
            1 << (usize::BITS - 1 - n.leading_zeros())
        };
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= k {
                k -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        pos
    }
}

/// Mutable adjacency copy the kernel operates on.
#[derive(Debug, Clone)]
pub struct WorkingGraph {
    colors: Vec<f64>,
    adj: Vec<BTreeMap<usize, f64>>,
    live: Vec<bool>,
    index: Fenwick,
    live_count: usize,
    in_set: Vec<bool>,
}

impl WorkingGraph {
    pub fn from_graph<G: Graph>(g: &G) -> Self {
        let n = g.vertex_count();
        let adj = (0..n).map(|u| g.neighbors(u).collect()).collect();
        WorkingGraph {
            colors: g.colors().to_vec(),
            adj,
            live: vec![true; n],
            index: Fenwick::all_live(n),
            live_count: n,
            in_set: vec![false; n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.live_count
    }

    fn dense_ids(&self) -> Vec<usize> {
        let mut ids = vec![usize::MAX; self.live.len()];
        let mut next = 0;
        for (slot, &alive) in self.live.iter().enumerate() {
            if alive {
                ids[slot] = next;
                next += 1;
            }
        }
        ids
    }

    /// The current state as a CSR graph, assembled without any checks so
    /// that [`CsrGraph::validate`] sees exactly what the kernel holds.
    pub fn to_raw_csr(&self) -> CsrGraph {
        let ids = self.dense_ids();
        let mut colors = Vec::with_capacity(self.live_count);
        let mut offsets = Vec::with_capacity(self.live_count + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for slot in (0..self.live.len()).filter(|&s| self.live[s]) {
            colors.push(self.colors[slot]);
            for (&to, &w) in &self.adj[slot] {
                targets.push(ids[to]);
                weights.push(w);
            }
            offsets.push(targets.len());
        }
        CsrGraph::from_raw_parts(colors, offsets, targets, weights)
    }

    pub fn build<G: BuildGraph>(&self) -> G {
        let ids = self.dense_ids();
        let mut colors = Vec::with_capacity(self.live_count);
        let mut edges = Vec::new();
        for slot in (0..self.live.len()).filter(|&s| self.live[s]) {
            colors.push(self.colors[slot]);
            edges.extend(
                self.adj[slot]
                    .iter()
                    .filter(|(&to, _)| slot < to)
                    .map(|(&to, &w)| EdgeTriple::new(ids[slot], ids[to], w)),
            );
        }
        G::build(colors.len(), colors, &edges).expect("coalescing preserves well-formedness")
    }

    /// Merges the `k`-th live vertex with its neighborhood.
    fn coalesce(&mut self, k: usize) -> CoalesceStep {
        let vertices_before = self.live_count;
        let u = self.index.select(k);

        let mut members: Vec<usize> = self.adj[u].keys().copied().collect();
        let at = members.partition_point(|&m| m < u);
        members.insert(at, u);
        let mega = members[0];

        let member_colors: Vec<f64> = members.iter().map(|&m| self.colors[m]).collect();
        let mega_color = member_colors.iter().sum::<f64>() / members.len() as f64;

        for &m in &members {
            self.in_set[m] = true;
        }
        let mut rewired: BTreeMap<usize, f64> = BTreeMap::new();
        for &m in &members {
            for (to, w) in core::mem::take(&mut self.adj[m]) {
                if self.in_set[to] {
                    continue;
                }
                rewired
                    .entry(to)
                    .and_modify(|cur| {
                        if w > *cur {
                            *cur = w;
                        }
                    })
                    .or_insert(w);
            }
        }
        for (&outside, &w) in &rewired {
            let list = &mut self.adj[outside];
            if list.len() <= members.len() {
                let in_set = &self.in_set;
                list.retain(|to, _| !in_set[*to]);
            } else {
                for m in &members {
                    list.remove(m);
                }
            }
            list.insert(mega, w);
        }
        for &m in &members {
            self.in_set[m] = false;
            if m != mega {
                self.live[m] = false;
                self.index.remove(m);
            }
        }
        self.adj[mega] = rewired;
        self.colors[mega] = mega_color;
        self.live_count -= members.len() - 1;

        CoalesceStep {
            selected: k,
            mega_vertex: self.index.rank(mega),
            member_colors,
            mega_color,
            vertices_before,
            vertices_after: self.live_count,
        }
    }
}

pub fn run_k3<G: Graph + BuildGraph>(
    g: &G,
    params: &CoalesceParams,
) -> Result<CoalesceResult<G>, KernelError> {
    run_k3_observed(g, params, |_, _| {})
}

/// Like [`run_k3`], calling `observe` after every step with the step record
/// and the working graph.
pub fn run_k3_observed<G: Graph + BuildGraph>(
    g: &G,
    params: &CoalesceParams,
    mut observe: impl FnMut(&CoalesceStep, &WorkingGraph),
) -> Result<CoalesceResult<G>, KernelError> {
    params.check()?;
    let original = GraphSnapshot::capture(g);
    let mut work = WorkingGraph::from_graph(g);
    let mut rng = Prng::new(params.seed);

    let steps = params.steps_for(g.vertex_count());
    let mut performed = 0;
    while performed < steps && work.vertex_count() > 1 {
        let k = rng.uniform_int(work.vertex_count())?;
        let step = work.coalesce(k);
        performed += 1;
        observe(&step, &work);
    }

    Ok(CoalesceResult {
        coalesced: work.build(),
        steps_performed: performed,
        original,
    })
}
