//! Canonical text rendering of kernel results. Checksums are taken over
//! these strings, so any two equal results render identically.

use std::fmt::Write as _;

use graphbench_core::metric::CoefficientTable;
use graphbench_core::optimize::OptimizeResult;
use graphbench_core::search::PathWeights;
use graphbench_core::spectral::SpectralResult;
use graphbench_core::Graph;

use crate::format::{fmt_real, serialize};

/// `v W[v]` per vertex; unreachable vertices show `inf`.
pub fn render_k1(w: &PathWeights) -> String {
    let mut out = String::new();
    for (v, x) in w.as_slice().iter().enumerate() {
        let _ = writeln!(out, "{v} {}", fmt_real(*x));
    }
    out
}

/// `i x[i]` per vertex, then `theta` and `iterations`.
pub fn render_k2(r: &SpectralResult) -> String {
    let mut out = String::new();
    for (i, x) in r.x.iter().enumerate() {
        let _ = writeln!(out, "{i} {}", fmt_real(*x));
    }
    let _ = writeln!(out, "theta {}", fmt_real(r.theta));
    let _ = writeln!(out, "iterations {}", r.iterations);
    out
}

/// The coalesced graph in file format.
pub fn render_k3<G: Graph>(coalesced: &G) -> String {
    serialize(coalesced)
}

/// `u cc` per sample, in draw order.
pub fn render_k4(t: &CoefficientTable) -> String {
    let mut out = String::new();
    for (u, cc) in &t.entries {
        let _ = writeln!(out, "{u} {}", fmt_real(*cc));
    }
    out
}

/// `k`, then one line of sorted member ids per group, groups ordered by
/// their smallest member.
pub fn render_k5(r: &OptimizeResult) -> String {
    let mut out = format!("{}\n", r.k);
    for group in &r.partition.clone().canonical().groups {
        let ids: Vec<String> = group.iter().map(ToString::to_string).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}
