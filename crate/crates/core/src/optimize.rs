//! Kernel 5: greedy group splitting under an entropy-of-density objective.
//!
//! Vertices whose color exceeds `alpha` form the working set `V'`, and the
//! directed entries between them form `E'`. A group's density is the share
//! of its incident directed entries that stay inside the group,
//! `internal / (internal + external)`, or 0 for a group without incident
//! entries. The objective of a partition is the sum of the binary entropies
//! of its group densities and is minimized.
//!
//! Starting from the single group `V'`, each outer iteration takes the group
//! of lowest density and walks its members in ascending id order, moving a
//! member into a fresh group whenever that strictly lowers the objective.
//! A pass that moves nobody ends the kernel.
//!
//! Group densities are maintained incrementally: moving `v` only changes the
//! counts of its old and new group, by amounts read off `v`'s neighbors.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};
use crate::KernelError;

const NOT_KEPT: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeParams {
    pub alpha: f64,
    pub max_iters: usize,
}

impl OptimizeParams {
    pub fn check(&self) -> Result<(), KernelError> {
        if (0.0..=1.0).contains(&self.alpha) {
            Ok(())
        } else {
            Err(KernelError::InvalidParams("alpha must lie in [0, 1]"))
        }
    }
}

/// The color-filtered induced subgraph `(V', E')`.
///
/// Vertices keep their original ids in the public API; internally they are
/// renumbered densely in ascending original-id order.
#[derive(Debug, Clone)]
pub struct FilteredGraph {
    vertices: Vec<VertexId>,
    local: Vec<usize>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl FilteredGraph {
    /// Original ids of `V'`, ascending.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.local.get(v).is_some_and(|&l| l != NOT_KEPT)
    }

    /// Size of `E'` counted as directed entries.
    pub fn directed_edge_count(&self) -> usize {
        self.targets.len()
    }

    /// Directed entries of `E'` as original-id pairs.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertices.len()).flat_map(move |l| {
            self.local_neighbors(l)
                .iter()
                .map(move |&t| (self.vertices[l], self.vertices[t]))
        })
    }

    fn local_neighbors(&self, l: usize) -> &[usize] {
        &self.targets[self.offsets[l]..self.offsets[l + 1]]
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }
}

pub fn filter_subgraph<G: Graph>(g: &G, alpha: f64) -> FilteredGraph {
    let n = g.vertex_count();
    let mut local = vec![NOT_KEPT; n];
    let mut vertices = Vec::new();
    for (v, &c) in g.colors().iter().enumerate() {
        if c > alpha {
            local[v] = vertices.len();
            vertices.push(v);
        }
    }
    let mut offsets = Vec::with_capacity(vertices.len() + 1);
    let mut targets = Vec::new();
    offsets.push(0);
    for &v in &vertices {
        targets.extend(
            g.neighbors(v)
                .map(|(t, _)| local[t])
                .filter(|&l| l != NOT_KEPT),
        );
        offsets.push(targets.len());
    }
    FilteredGraph {
        vertices,
        local,
        offsets,
        targets,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DensityStats {
    /// Directed entries with both endpoints in the group.
    pub internal: usize,
    /// Directed entries with exactly one endpoint in the group.
    pub external: usize,
}

impl DensityStats {
    pub fn density(&self) -> f64 {
        let total = self.internal + self.external;
        if total == 0 {
            0.0
        } else {
            self.internal as f64 / total as f64
        }
    }

    fn entropy(&self) -> f64 {
        binary_entropy(self.density())
    }
}

/// Counts for `group`, given as original vertex ids inside `V'`.
pub fn density(group: &[VertexId], sub: &FilteredGraph) -> DensityStats {
    let mut member = vec![false; sub.len()];
    for &v in group {
        member[sub.local[v]] = true;
    }
    let mut stats = DensityStats::default();
    for &v in group {
        for &t in sub.local_neighbors(sub.local[v]) {
            if member[t] {
                stats.internal += 1;
            } else {
                // E' is symmetric: the reverse entry t -> v is a boundary
                // entry too.
                stats.external += 2;
            }
        }
    }
    stats
}

/// Binary entropy in bits with `0 · log2 0 = 0`.
pub fn entropy(p: f64) -> Result<f64, KernelError> {
    if (0.0..=1.0).contains(&p) {
        Ok(binary_entropy(p))
    } else {
        Err(KernelError::DomainError(p))
    }
}

fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * libm::log2(x) } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Disjoint vertex groups, each sorted by original id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub groups: Vec<Vec<VertexId>>,
}

impl Partition {
    pub fn k(&self) -> usize {
        self.groups.len()
    }

    /// Groups ordered by their smallest member.
    pub fn canonical(mut self) -> Self {
        for g in &mut self.groups {
            g.sort_unstable();
        }
        self.groups.retain(|g| !g.is_empty());
        self.groups.sort_unstable_by_key(|g| g[0]);
        self
    }
}

pub fn objective(partition: &Partition, sub: &FilteredGraph) -> f64 {
    partition
        .groups
        .iter()
        .map(|g| density(g, sub).entropy())
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    pub k: usize,
    pub partition: Partition,
    pub objective: f64,
    pub accepted_moves: usize,
    pub outer_iterations: usize,
}

/// One accepted move, reported to observers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceptedMove {
    pub vertex: VertexId,
    pub objective_before: f64,
    pub objective_after: f64,
}

pub fn run_k5<G: Graph>(g: &G, params: &OptimizeParams) -> Result<OptimizeResult, KernelError> {
    run_k5_observed(g, params, |_, _| {})
}

/// Like [`run_k5`], calling `observe` with every accepted move and the
/// partition right after it.
pub fn run_k5_observed<G: Graph>(
    g: &G,
    params: &OptimizeParams,
    observe: impl FnMut(&AcceptedMove, &SplitView<'_>),
) -> Result<OptimizeResult, KernelError> {
    params.check()?;
    let sub = filter_subgraph(g, params.alpha);
    let start = if sub.vertices().is_empty() {
        Partition::default()
    } else {
        Partition {
            groups: vec![sub.vertices().to_vec()],
        }
    };
    Ok(split_from(&sub, start, params.max_iters, observe))
}

#[derive(Debug, Clone)]
struct Group {
    members: Vec<usize>,
    stats: DensityStats,
}

impl Group {
    /// Ordering key for picking the sparsest group.
    fn key(&self) -> (f64, usize) {
        (self.stats.density(), self.members[0])
    }
}

/// Read access to the splitter state handed to observers.
pub struct SplitView<'a>(&'a Splitter<'a>);

impl SplitView<'_> {
    /// Current partition, including the group being grown.
    pub fn partition(&self) -> Partition {
        self.0.partition()
    }
}

impl core::fmt::Debug for SplitView<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SplitView")
            .field("groups", &self.0.groups.len())
            .finish()
    }
}

struct Splitter<'a> {
    sub: &'a FilteredGraph,
    group_of: Vec<usize>,
    groups: Vec<Group>,
}

impl Splitter<'_> {
    fn partition(&self) -> Partition {
        let mut groups: Vec<Vec<VertexId>> = vec![Vec::new(); self.groups.len()];
        for (l, &gid) in self.group_of.iter().enumerate() {
            if gid != NOT_KEPT {
                groups[gid].push(self.sub.vertices[l]);
            }
        }
        Partition { groups }.canonical()
    }

    fn objective(&self) -> f64 {
        self.groups.iter().map(|g| g.stats.entropy()).sum()
    }

    /// Neighbors of `v` in groups `a` and `b`, and its degree in `E'`.
    fn neighbor_split(&self, v: usize, a: usize, b: usize) -> (usize, usize, usize) {
        let nbrs = self.sub.local_neighbors(v);
        let (mut in_a, mut in_b) = (0, 0);
        for &t in nbrs {
            let gid = self.group_of[t];
            if gid == a {
                in_a += 1;
            } else if gid == b {
                in_b += 1;
            }
        }
        (in_a, in_b, nbrs.len())
    }
}

fn moved_stats(
    from: DensityStats,
    to: DensityStats,
    in_from: usize,
    in_to: usize,
    degree: usize,
) -> (DensityStats, DensityStats) {
    let from_after = DensityStats {
        internal: from.internal - 2 * in_from,
        external: from.external + 2 * in_from - 2 * (degree - in_from),
    };
    let to_after = DensityStats {
        internal: to.internal + 2 * in_to,
        external: to.external + 2 * (degree - in_to) - 2 * in_to,
    };
    (from_after, to_after)
}

/// The splitting loop, starting from an arbitrary partition of `V'`.
pub fn split_from(
    sub: &FilteredGraph,
    initial: Partition,
    max_iters: usize,
    mut observe: impl FnMut(&AcceptedMove, &SplitView<'_>),
) -> OptimizeResult {
    let mut group_of = vec![NOT_KEPT; sub.len()];
    let mut groups = Vec::new();
    for members in initial.canonical().groups {
        let stats = density(&members, sub);
        let local: Vec<usize> = members.iter().map(|&v| sub.local[v]).collect();
        for &l in &local {
            group_of[l] = groups.len();
        }
        groups.push(Group {
            members: local,
            stats,
        });
    }
    let mut s = Splitter {
        sub,
        group_of,
        groups,
    };
    let mut accepted_moves = 0;
    let mut outer_iterations = 0;

    while outer_iterations < max_iters && !s.groups.is_empty() {
        outer_iterations += 1;
        let a = (0..s.groups.len())
            .min_by(|&x, &y| {
                let (kx, ky) = (s.groups[x].key(), s.groups[y].key());
                kx.0.total_cmp(&ky.0).then(kx.1.cmp(&ky.1))
            })
            .expect("non-empty");
        let b = s.groups.len();
        s.groups.push(Group {
            members: Vec::new(),
            stats: DensityStats::default(),
        });

        let others: f64 = s
            .groups
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != a && i != b)
            .map(|(_, g)| g.stats.entropy())
            .sum();

        let candidates = s.groups[a].members.clone();
        for v in candidates {
            let (in_a, in_b, degree) = s.neighbor_split(v, a, b);
            let (sa, sb) = (s.groups[a].stats, s.groups[b].stats);
            let (na, nb) = moved_stats(sa, sb, in_a, in_b, degree);
            let current = others + sa.entropy() + sb.entropy();
            let candidate = others + na.entropy() + nb.entropy();
            if candidate < current {
                s.group_of[v] = b;
                s.groups[a].stats = na;
                s.groups[b].stats = nb;
                s.groups[b].members.push(v);
                accepted_moves += 1;
                let event = AcceptedMove {
                    vertex: sub.vertices[v],
                    objective_before: current,
                    objective_after: candidate,
                };
                observe(&event, &SplitView(&s));
            }
        }

        if s.groups[b].members.is_empty() {
            s.groups.pop();
            break;
        }
        let group_of = &s.group_of;
        s.groups[a].members.retain(|&m| group_of[m] == a);
        if s.groups[a].members.is_empty() {
            let moved = s.groups.swap_remove(a);
            debug_assert!(moved.members.is_empty());
            for &m in &s.groups[a].members {
                s.group_of[m] = a;
            }
        }
    }

    let objective = s.objective();
    let partition = s.partition();
    OptimizeResult {
        k: partition.k(),
        partition,
        objective,
        accepted_moves,
        outer_iterations,
    }
}
