//! Run orchestration: load once, build the representation, warm up, time
//! repetitions, checksum the result, and optionally check it against the
//! brute-force oracles.

use std::fmt;
use std::hint::black_box;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use graphbench_core::coalesce::{run_k3, run_k3_observed, CoalesceParams, CoalesceResult};
use graphbench_core::metric::{run_k4, CoefficientTable, MetricParams};
use graphbench_core::optimize::{run_k5, OptimizeParams, OptimizeResult};
use graphbench_core::oracles::{self, DenseMatrix};
use graphbench_core::search::{run_k1, PathWeights};
use graphbench_core::spectral::{matvec, run_k2, run_k2_observed, SpectralParams, SpectralResult};
use graphbench_core::{
    graphs_equal, validate_graph, AdjListGraph, BuildGraph, CsrGraph, Graph, KernelError, Prng,
    ValidationReport,
};

use crate::format::{self, ParseError};
use crate::results;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Per-iterate agreement required between the spectral kernel and the
/// dense oracle, in L1.
pub const SPECTRAL_TOLERANCE: f64 = 1e-12;
/// Mega-vertex color conservation tolerance.
pub const CONSERVATION_TOLERANCE: f64 = 1e-12;
/// Incremental vs from-scratch objective tolerance.
pub const OBJECTIVE_TOLERANCE: f64 = 1e-9;
/// Intermediate coalescing states are validated up to this size.
pub const STEP_VALIDATION_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum KernelId {
    K1,
    K2,
    K3,
    K4,
    K5,
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as u8 + 1;
        write!(f, "k{n}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Repr {
    Csr,
    Adj,
}

/// Parameters of one kernel. Serialized without a tag; the field names
/// tell the kernels apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelParams {
    K1 { source: usize },
    K2 { epsilon: f64, max_iters: usize },
    K3 { gamma: f64, seed: u64 },
    K4 { samples: usize, seed: u64 },
    K5 { alpha: f64, max_iters: usize },
}

impl KernelParams {
    pub fn kernel(&self) -> KernelId {
        match self {
            KernelParams::K1 { .. } => KernelId::K1,
            KernelParams::K2 { .. } => KernelId::K2,
            KernelParams::K3 { .. } => KernelId::K3,
            KernelParams::K4 { .. } => KernelId::K4,
            KernelParams::K5 { .. } => KernelId::K5,
        }
    }

    pub fn seeds(&self) -> Vec<u64> {
        match *self {
            KernelParams::K3 { seed, .. } | KernelParams::K4 { seed, .. } => vec![seed],
            _ => Vec::new(),
        }
    }

    fn check(&self, n: usize) -> Result<(), KernelError> {
        match *self {
            KernelParams::K1 { source } if source >= n => {
                Err(KernelError::InvalidParams("source vertex out of range"))
            }
            KernelParams::K2 { epsilon, max_iters } => {
                SpectralParams { epsilon, max_iters }.check()
            }
            KernelParams::K3 { gamma, seed } => CoalesceParams { gamma, seed }.check(),
            KernelParams::K5 { alpha, max_iters } => OptimizeParams { alpha, max_iters }.check(),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub graph: PathBuf,
    pub repr: Repr,
    pub params: KernelParams,
    pub reps: usize,
    pub warmup: usize,
    pub verify: bool,
    /// Test hook: perturbs the result after the timed runs so verification
    /// has something to catch.
    pub inject_fault: bool,
}

impl RunConfig {
    pub fn new(graph: impl Into<PathBuf>, repr: Repr, params: KernelParams) -> Self {
        RunConfig {
            graph: graph.into(),
            repr,
            params,
            reps: 1,
            warmup: 0,
            verify: false,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub max_degree: usize,
}

impl GraphStats {
    pub fn of<G: Graph>(g: &G) -> Self {
        let n = g.vertex_count();
        let mean_degree = if n == 0 {
            0.0
        } else {
            g.directed_edge_count() as f64 / n as f64
        };
        GraphStats {
            vertices: n,
            edges: g.edge_count(),
            mean_degree,
            max_degree: g.max_degree(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingSummary {
    pub min_ns: u64,
    pub mean_ns: f64,
    pub max_ns: u64,
}

impl TimingSummary {
    pub fn of(timings: &[u64]) -> Self {
        let min_ns = timings.iter().copied().min().unwrap_or(0);
        let max_ns = timings.iter().copied().max().unwrap_or(0);
        let mean_ns = if timings.is_empty() {
            0.0
        } else {
            timings.iter().map(|&t| t as f64).sum::<f64>() / timings.len() as f64
        };
        // Guards against rounding pushing the mean outside [min, max].
        let mean_ns = mean_ns.clamp(min_ns as f64, max_ns as f64);
        TimingSummary {
            min_ns,
            mean_ns,
            max_ns,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verification {
    Skipped,
    Passed,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub kernel: KernelId,
    pub parameters: KernelParams,
    pub graph: GraphStats,
    pub representation: Repr,
    pub reps: usize,
    pub warmup: usize,
    pub timings_ns: Vec<u64>,
    pub summary: TimingSummary,
    /// FNV-1a of the canonical result rendering, as `0x` + 16 hex digits.
    pub checksum: String,
    pub verification: Verification,
    pub version: String,
    pub seeds: Vec<u64>,
}

/// Report JSON with lexicographically sorted keys and one trailing newline.
pub fn emit_report(report: &KernelReport) -> String {
    // serde_json's default map is ordered, so going through `Value` sorts
    // the keys at every level.
    let value = serde_json::to_value(report).expect("report is always serializable");
    let mut out = serde_json::to_string_pretty(&value).expect("value is always serializable");
    out.push('\n');
    out
}

pub fn format_checksum(c: u64) -> String {
    format!("{c:#018x}")
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("graph failed validation:\n{0}")]
    Validation(ValidationReport),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("invalid configuration: {0}")]
    Config(&'static str),
}

pub fn load_graph(path: &Path) -> Result<CsrGraph, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })?;
    let g: CsrGraph = format::parse(&text).map_err(|source| HarnessError::Parse {
        path: path.to_owned(),
        source,
    })?;
    let report = g.validate();
    if !report.is_ok() {
        return Err(HarnessError::Validation(report));
    }
    Ok(g)
}

/// Everything one run produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: KernelReport,
    /// Canonical rendering of the last repetition's result.
    pub result_text: String,
    /// Why verification failed or was skipped.
    pub note: Option<String>,
}

pub fn run(config: &RunConfig) -> Result<RunOutcome, HarnessError> {
    if config.reps == 0 {
        return Err(HarnessError::Config("reps must be at least 1"));
    }
    let csr = load_graph(&config.graph)?;
    config.params.check(csr.vertex_count())?;
    match config.repr {
        Repr::Csr => execute(&csr, config),
        Repr::Adj => {
            let adj = AdjListGraph::from_graph(&csr);
            drop(csr);
            execute(&adj, config)
        }
    }
}

/// Raw output of one kernel invocation.
#[derive(Debug, Clone)]
pub enum KernelOutput<G> {
    K1(PathWeights),
    K2(SpectralResult),
    K3(CoalesceResult<G>),
    K4(CoefficientTable),
    K5(OptimizeResult),
}

pub fn run_kernel<G: Graph + BuildGraph>(
    g: &G,
    params: &KernelParams,
) -> Result<KernelOutput<G>, KernelError> {
    Ok(match *params {
        KernelParams::K1 { source } => KernelOutput::K1(run_k1(g, source)?),
        KernelParams::K2 { epsilon, max_iters } => {
            KernelOutput::K2(run_k2(g, &SpectralParams { epsilon, max_iters })?)
        }
        KernelParams::K3 { gamma, seed } => {
            KernelOutput::K3(run_k3(g, &CoalesceParams { gamma, seed })?)
        }
        KernelParams::K4 { samples, seed } => {
            KernelOutput::K4(run_k4(g, &MetricParams { samples, seed })?)
        }
        KernelParams::K5 { alpha, max_iters } => {
            KernelOutput::K5(run_k5(g, &OptimizeParams { alpha, max_iters })?)
        }
    })
}

pub fn render<G: Graph>(out: &KernelOutput<G>) -> String {
    match out {
        KernelOutput::K1(w) => results::render_k1(w),
        KernelOutput::K2(r) => results::render_k2(r),
        KernelOutput::K3(r) => results::render_k3(&r.coalesced),
        KernelOutput::K4(t) => results::render_k4(t),
        KernelOutput::K5(r) => results::render_k5(r),
    }
}

fn execute<G: Graph + BuildGraph>(g: &G, config: &RunConfig) -> Result<RunOutcome, HarnessError> {
    let mut timings = Vec::with_capacity(config.reps);
    let mut last = None;
    for rep in 0..config.warmup + config.reps {
        let start = Instant::now();
        let out = run_kernel(g, &config.params)?;
        let elapsed = start.elapsed();
        let out = black_box(out);
        if rep >= config.warmup {
            timings.push(u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX));
        }
        last = Some(out);
    }
    let mut out = last.expect("at least one repetition ran");
    if config.inject_fault {
        corrupt(g, &mut out);
    }

    let result_text = render(&out);
    let (verification, note) = if config.verify {
        match verify(g, &config.params, &out) {
            Verdict::Passed => (Verification::Passed, None),
            Verdict::Failed(why) => (Verification::Failed, Some(why)),
            Verdict::Skipped(why) => (Verification::Skipped, Some(why)),
        }
    } else {
        (Verification::Skipped, None)
    };

    let report = KernelReport {
        kernel: config.params.kernel(),
        parameters: config.params,
        graph: GraphStats::of(g),
        representation: config.repr,
        reps: config.reps,
        warmup: config.warmup,
        summary: TimingSummary::of(&timings),
        timings_ns: timings,
        checksum: format_checksum(format::checksum(result_text.as_bytes())),
        verification,
        version: VERSION.to_owned(),
        seeds: config.params.seeds(),
    };
    Ok(RunOutcome {
        report,
        result_text,
        note,
    })
}

/// Damages a result in a way every verifier must notice.
pub fn corrupt<G: Graph + BuildGraph>(g: &G, out: &mut KernelOutput<G>) {
    match out {
        KernelOutput::K1(w) => {
            if let Some(x) = w.0.first_mut() {
                *x += 1.0;
            }
        }
        KernelOutput::K2(r) => {
            if let Some(x) = r.x.first_mut() {
                *x += 1e-6;
            }
        }
        KernelOutput::K3(r) => {
            let c = &r.coalesced;
            let mut colors = c.colors().to_vec();
            if let Some(x) = colors.first_mut() {
                *x = if *x > 0.5 { 0.0 } else { 1.0 };
            }
            r.coalesced = G::build(c.vertex_count(), colors, &c.edges())
                .expect("recoloring keeps the graph well-formed");
        }
        KernelOutput::K4(t) => match t.entries.first_mut() {
            Some(e) => e.1 = if e.1 > 0.5 { 0.0 } else { 1.0 },
            None => t.entries.push((g.vertex_count(), 0.5)),
        },
        KernelOutput::K5(r) => r.objective += 1.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Passed,
    Failed(String),
    Skipped(String),
}

fn check(ok: bool, why: impl FnOnce() -> String) -> Result<(), Verdict> {
    if ok {
        Ok(())
    } else {
        Err(Verdict::Failed(why()))
    }
}

fn oracle<T>(r: Result<T, KernelError>) -> Result<T, Verdict> {
    r.map_err(|e| match e {
        KernelError::SizeGuard { .. } => Verdict::Skipped(e.to_string()),
        other => Verdict::Failed(other.to_string()),
    })
}

/// Compares a kernel result with the brute-force oracles.
pub fn verify<G: Graph + BuildGraph>(
    g: &G,
    params: &KernelParams,
    out: &KernelOutput<G>,
) -> Verdict {
    let r = match (params, out) {
        (&KernelParams::K1 { source }, KernelOutput::K1(w)) => verify_k1(g, source, w),
        (&KernelParams::K2 { epsilon, max_iters }, KernelOutput::K2(r)) => {
            verify_k2(g, &SpectralParams { epsilon, max_iters }, r)
        }
        (&KernelParams::K3 { gamma, seed }, KernelOutput::K3(r)) => {
            verify_k3(g, &CoalesceParams { gamma, seed }, r)
        }
        (&KernelParams::K4 { samples, seed }, KernelOutput::K4(t)) => {
            verify_k4(g, &MetricParams { samples, seed }, t)
        }
        (&KernelParams::K5 { alpha, .. }, KernelOutput::K5(r)) => verify_k5(g, alpha, r),
        _ => Err(Verdict::Failed(
            "result does not match the kernel parameters".into(),
        )),
    };
    r.err().unwrap_or(Verdict::Passed)
}

fn verify_k1<G: Graph>(g: &G, source: usize, w: &PathWeights) -> Result<(), Verdict> {
    let expect = oracle(oracles::oracle_dijkstra(g, source))?;
    check(w.0.len() == expect.len(), || {
        "path weight count differs".into()
    })?;
    for (v, (a, b)) in w.0.iter().zip(&expect).enumerate() {
        check(a.to_bits() == b.to_bits(), || {
            format!("vertex {v}: kernel {a}, oracle {b}")
        })?;
    }
    Ok(())
}

fn l1_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn verify_k2<G: Graph>(g: &G, params: &SpectralParams, r: &SpectralResult) -> Result<(), Verdict> {
    let m = oracle(DenseMatrix::from_graph(g))?;
    let mut worst = (0usize, 0.0f64);
    let again = run_k2_observed(g, params, |i, prev, next| {
        let gap = l1_gap(&oracles::oracle_normalized_step(&m, prev), next);
        if gap > worst.1 {
            worst = (i, gap);
        }
    })
    .map_err(|e| Verdict::Failed(e.to_string()))?;
    check(worst.1 <= SPECTRAL_TOLERANCE, || {
        format!("iterate {} is {:e} from the dense step", worst.0, worst.1)
    })?;
    check(
        r.x.len() == again.x.len() && r.iterations == again.iterations,
        || "iteration count or dimension differs on replay".into(),
    )?;
    let gap = l1_gap(&r.x, &again.x);
    check(gap <= SPECTRAL_TOLERANCE, || {
        format!("final iterate differs by {gap:e} on replay")
    })?;
    if r.theta <= params.epsilon {
        let (lambda, res) = residual(g, &r.x);
        check(res <= 1e3 * params.epsilon, || {
            format!("residual {res:e} too large for eigenvalue estimate {lambda}")
        })?;
    }
    Ok(())
}

/// `(λ, ‖Ax − λx‖₁)` with `λ = ‖Ax‖₁`.
pub fn residual<G: Graph>(g: &G, x: &[f64]) -> (f64, f64) {
    let ax = matvec(g, x).expect("dimension matches graph");
    let lambda: f64 = ax.iter().map(|v| v.abs()).sum();
    let res = ax.iter().zip(x).map(|(a, b)| (a - lambda * b).abs()).sum();
    (lambda, res)
}

fn verify_k3<G: Graph + BuildGraph>(
    g: &G,
    params: &CoalesceParams,
    r: &CoalesceResult<G>,
) -> Result<(), Verdict> {
    let restored: G = r.original.restore();
    check(graphs_equal(&restored, g), || {
        "snapshot does not restore the input".into()
    })?;
    let report = validate_graph(&r.coalesced);
    check(report.is_ok(), || {
        format!("coalesced graph is malformed: {report}")
    })?;

    let validate_steps = g.vertex_count() <= STEP_VALIDATION_LIMIT;
    let mut problem: Option<String> = None;
    let again = run_k3_observed(g, params, |step, work| {
        if problem.is_some() {
            return;
        }
        let k = step.member_colors.len();
        let sum: f64 = step.member_colors.iter().sum();
        if step.vertices_before - step.vertices_after != k - 1 {
            problem = Some(format!(
                "vertex count dropped by {} for a set of {k}",
                step.vertices_before - step.vertices_after
            ));
        } else if (step.mega_color * k as f64 - sum).abs() > CONSERVATION_TOLERANCE {
            problem = Some(format!(
                "mega-vertex color {} does not conserve {sum}",
                step.mega_color
            ));
        } else if validate_steps {
            let report = work.to_raw_csr().validate();
            if !report.is_ok() {
                problem = Some(format!("intermediate graph is malformed: {report}"));
            }
        }
    })
    .map_err(|e| Verdict::Failed(e.to_string()))?;
    if let Some(p) = problem {
        return Err(Verdict::Failed(p));
    }
    check(again.steps_performed == r.steps_performed, || {
        "step count differs on replay".into()
    })?;
    check(graphs_equal(&again.coalesced, &r.coalesced), || {
        "coalesced graph differs on replay".into()
    })
}

fn verify_k4<G: Graph>(g: &G, params: &MetricParams, t: &CoefficientTable) -> Result<(), Verdict> {
    let m = oracle(DenseMatrix::from_graph(g))?;
    let n = g.vertex_count();
    check(t.entries.len() == params.samples, || {
        "sample count differs".into()
    })?;
    let mut rng = Prng::new(params.seed);
    for &(u, cc) in &t.entries {
        let drawn = rng
            .uniform_int(n)
            .map_err(|e| Verdict::Failed(e.to_string()))?;
        check(u == drawn, || {
            format!("sampled vertex {u}, expected {drawn}")
        })?;
        let expect = oracles::oracle_cc_matrix(&m, u);
        check(cc.to_bits() == expect.to_bits(), || {
            format!("vertex {u}: kernel {cc}, oracle {expect}")
        })?;
    }
    Ok(())
}

fn verify_k5<G: Graph>(g: &G, alpha: f64, r: &OptimizeResult) -> Result<(), Verdict> {
    oracle(if g.vertex_count() > oracles::ORACLE_LIMIT {
        Err(KernelError::SizeGuard {
            n: g.vertex_count(),
            limit: oracles::ORACLE_LIMIT,
        })
    } else {
        Ok(())
    })?;
    let (vertices, edges) = oracles::oracle_filter(g, alpha);
    check(r.k == r.partition.groups.len(), || {
        "k differs from the group count".into()
    })?;
    let mut all: Vec<usize> = r.partition.groups.iter().flatten().copied().collect();
    all.sort_unstable();
    check(all == vertices, || {
        "groups are not a partition of the filtered vertices".into()
    })?;
    check(r.partition.groups.iter().all(|g| !g.is_empty()), || {
        "empty group".into()
    })?;
    let expect = oracles::oracle_objective(&r.partition.groups, &edges);
    check((expect - r.objective).abs() <= OBJECTIVE_TOLERANCE, || {
        format!("objective {} differs from oracle {expect}", r.objective)
    })
}
