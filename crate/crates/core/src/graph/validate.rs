use alloc::vec::Vec;
use core::fmt;

use super::{in_unit_interval, AdjListGraph, CsrGraph, Graph, VertexId};

/// A single broken invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `offsets` does not have `n + 1` entries.
    OffsetLength {
        expected: usize,
        actual: usize,
    },
    FirstOffsetNonZero(usize),
    /// `offsets[n]` differs from the length of the edge list.
    OffsetMismatch {
        last_offset: usize,
        edge_list_len: usize,
    },
    DecreasingOffsets {
        vertex: VertexId,
    },
    WeightCountMismatch {
        targets: usize,
        weights: usize,
    },
    OddDirectedCount(usize),
    ColorOutOfRange {
        vertex: VertexId,
        value: f64,
    },
    EndpointOutOfRange {
        from: VertexId,
        to: VertexId,
    },
    SelfLoop(VertexId),
    DuplicateEntry {
        from: VertexId,
        to: VertexId,
    },
    /// `from -> to` exists but no `to -> from` with the same weight does.
    AsymmetricEdge {
        from: VertexId,
        to: VertexId,
    },
    WeightOutOfRange {
        from: VertexId,
        to: VertexId,
        value: f64,
    },
}

/// Every violated invariant found in a graph; empty iff the graph is
/// well-formed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn contains(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(pred)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v:?}")?;
        }
        Ok(())
    }
}

/// Checks shared by every representation, reading through [`Graph`] only.
pub(super) fn check_entries<G: Graph>(g: &G, report: &mut ValidationReport) {
    let n = g.vertex_count();
    for (vertex, &value) in g.colors().iter().enumerate() {
        if !in_unit_interval(value) {
            report
                .violations
                .push(Violation::ColorOutOfRange { vertex, value });
        }
    }

    let mut entries: Vec<(VertexId, VertexId, u64)> = Vec::with_capacity(g.directed_edge_count());
    for from in 0..n {
        for (to, w) in g.neighbors(from) {
            if to >= n {
                report
                    .violations
                    .push(Violation::EndpointOutOfRange { from, to });
                continue;
            }
            if to == from {
                report.violations.push(Violation::SelfLoop(from));
            }
            if !in_unit_interval(w) {
                report
                    .violations
                    .push(Violation::WeightOutOfRange { from, to, value: w });
            }
            entries.push((from, to, w.to_bits()));
        }
    }
    if !g.directed_edge_count().is_multiple_of(2) {
        report
            .violations
            .push(Violation::OddDirectedCount(g.directed_edge_count()));
    }

    entries.sort_unstable();
    for pair in entries.windows(2) {
        if (pair[0].0, pair[0].1) == (pair[1].0, pair[1].1) {
            report.violations.push(Violation::DuplicateEntry {
                from: pair[0].0,
                to: pair[0].1,
            });
        }
    }
    for &(from, to, w) in &entries {
        if from != to && entries.binary_search(&(to, from, w)).is_err() {
            report
                .violations
                .push(Violation::AsymmetricEdge { from, to });
        }
    }
}

/// Abstract-graph checks for any representation, read through [`Graph`].
pub fn validate_graph<G: Graph>(g: &G) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_entries(g, &mut report);
    report
}

impl CsrGraph {
    /// Structural checks on the raw arrays, then the abstract-graph checks.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.vertex_count();
        let offsets = self.offsets();
        let len = self.targets().len();

        if offsets.len() != n + 1 {
            report.violations.push(Violation::OffsetLength {
                expected: n + 1,
                actual: offsets.len(),
            });
            return report;
        }
        if offsets[0] != 0 {
            report
                .violations
                .push(Violation::FirstOffsetNonZero(offsets[0]));
        }
        if offsets[n] != len {
            report.violations.push(Violation::OffsetMismatch {
                last_offset: offsets[n],
                edge_list_len: len,
            });
        }
        for (vertex, pair) in offsets.windows(2).enumerate() {
            if pair[0] > pair[1] {
                report
                    .violations
                    .push(Violation::DecreasingOffsets { vertex });
            }
        }
        if self.weights().len() != len {
            report.violations.push(Violation::WeightCountMismatch {
                targets: len,
                weights: self.weights().len(),
            });
        }
        // Slicing is only safe once the offsets are consistent.
        if !report.is_ok() {
            return report;
        }
        check_entries(self, &mut report);
        report
    }
}

impl AdjListGraph {
    pub fn validate(&self) -> ValidationReport {
        validate_graph(self)
    }
}
