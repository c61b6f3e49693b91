//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails, including by exceeding its time limit.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use graphbench::format::{checksum, parse, serialize};
use graphbench::harness::{emit_report, residual, run, KernelParams, Repr, RunConfig};
use graphbench_core::coalesce::{run_k3_observed, CoalesceParams};
use graphbench_core::generator::{generate, GeneratorParams};
use graphbench_core::metric::{run_k4, MetricParams};
use graphbench_core::optimize::{
    filter_subgraph, run_k5, run_k5_observed, split_from, OptimizeParams, Partition, SplitView,
};
use graphbench_core::oracles::{self, DenseMatrix};
use graphbench_core::search::run_k1;
use graphbench_core::spectral::{run_k2_observed, SpectralParams};
use graphbench_core::{graphs_equal, AdjListGraph, BuildGraph, CsrGraph, EdgeTriple, Graph, Prng};
use serde_json::Value;
use tempfile::TempDir;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gen(n: usize, d: usize, c: usize, seed: u64) -> CsrGraph {
    generate(&GeneratorParams {
        vertices: n,
        avg_degree: d,
        clique_size: c,
        seed,
    })
    .expect("valid generator parameters")
    .build()
}

/// A varied family of generated graphs with sizes drawn from `sizes`.
fn family(count: usize, sizes: &[usize], salt: u64) -> Vec<CsrGraph> {
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            let d = 1 + i % 6;
            let c = 3 + i % 4;
            gen(n, d, c, salt.wrapping_mul(1000).wrapping_add(i as u64))
        })
        .collect()
}

fn bits(x: &[f64]) -> Vec<u64> {
    x.iter().map(|v| v.to_bits()).collect()
}

fn l1_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn c1_generator_statistics() -> Outcome {
    let n = 100_000;
    let params = GeneratorParams {
        vertices: n,
        avg_degree: 8,
        clique_size: 5,
        seed: 42,
    };
    let generated = generate(&params).map_err(|e| e.to_string())?;
    let g: CsrGraph = generated.build();

    let m = g.edge_count() as f64;
    let expect_m = 10.0 + (n - 5) as f64 * 8.5;
    let m_err = (m - expect_m).abs() / expect_m;
    ensure(m_err <= 0.02, || {
        format!("edge count {m} is {:.3}% from {expect_m}", 100.0 * m_err)
    })?;

    let skip = generated.skip_rate();
    ensure(skip < 0.01, || format!("skip rate {skip}"))?;

    let mean = 2.0 * m / n as f64;
    ensure((mean - 17.0).abs() / 17.0 <= 0.05, || {
        format!("mean degree {mean}")
    })?;
    let max = g.max_degree();
    ensure(max as f64 > 10.0 * mean, || {
        format!("max degree {max} vs mean {mean}")
    })?;

    let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let cutoff = degrees[n / 100 - 1];
    ensure((0..5).any(|v| g.degree(v) >= cutoff), || {
        "no clique vertex in the top 1%".into()
    })?;

    Ok(format!(
        "m={m} ({:.3}% off), skip={skip:.2e}, mean={mean:.3}, max={max}",
        100.0 * m_err
    ))
}

fn cli(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_graphbench"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())
}

fn cli_generate(path: &Path, n: usize, seed: u64) -> Result<Vec<u8>, String> {
    let out = cli(&[
        "generate",
        "--vertices",
        &n.to_string(),
        "--avg-degree",
        "8",
        "--clique-size",
        "5",
        "--seed",
        &seed.to_string(),
        "--out",
        &path.to_string_lossy(),
    ])?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    std::fs::read(path).map_err(|e| e.to_string())
}

fn c2_generator_determinism() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for (n, seed) in [(20_000, 42u64), (5_000, 0), (1_000, u64::MAX)] {
        let a = cli_generate(&dir.path().join("a.txt"), n, seed)?;
        let b = cli_generate(&dir.path().join("b.txt"), n, seed)?;
        ensure(a == b, || format!("n={n} seed={seed}: files differ"))?;
        let c = cli_generate(&dir.path().join("c.txt"), n, seed.wrapping_add(1))?;
        ensure(checksum(&a) != checksum(&c), || {
            format!("n={n}: seed change kept the checksum")
        })?;
        compared += 1;
    }
    Ok(format!(
        "{compared} size/seed pairs byte-identical, seed changes detected"
    ))
}

fn c3_k1_oracle() -> Outcome {
    let graphs = family(50, &[64, 256, 512], 3);
    let mut rng = Prng::new(3);
    let mut checked = 0;
    for (i, g) in graphs.iter().enumerate() {
        let adj = AdjListGraph::from_graph(g);
        for _ in 0..5 {
            let s = rng
                .uniform_int(g.vertex_count())
                .map_err(|e| e.to_string())?;
            let expect = bits(&oracles::oracle_dijkstra(g, s).map_err(|e| e.to_string())?);
            let csr = bits(run_k1(g, s).map_err(|e| e.to_string())?.as_slice());
            let lst = bits(run_k1(&adj, s).map_err(|e| e.to_string())?.as_slice());
            ensure(csr == expect && lst == expect, || {
                format!("graph {i}, source {s}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, source) pairs bitwise equal"))
}

fn c4_k2_convergence() -> Outcome {
    let params = SpectralParams {
        epsilon: 1e-9,
        max_iters: 10_000,
    };
    let graphs = family(12, &[64, 128, 256, 512], 4);
    let mut worst_gap: f64 = 0.0;
    let mut worst_res: f64 = 0.0;
    let mut max_iters = 0;
    for (i, g) in graphs.iter().enumerate() {
        let reach = run_k1(g, 0).map_err(|e| e.to_string())?;
        ensure((0..g.vertex_count()).all(|v| reach.is_reachable(v)), || {
            format!("graph {i} disconnected")
        })?;
        let m = DenseMatrix::from_graph(g).map_err(|e| e.to_string())?;
        let r = run_k2_observed(g, &params, |_, prev, next| {
            worst_gap = worst_gap.max(l1_gap(&oracles::oracle_normalized_step(&m, prev), next));
        })
        .map_err(|e| e.to_string())?;
        let (_, res) = residual(g, &r.x);
        worst_res = worst_res.max(res);
        max_iters = max_iters.max(r.iterations);
        ensure(res <= 1e3 * params.epsilon, || {
            format!(
                "graph {i}: residual {res:e} after {} iterations",
                r.iterations
            )
        })?;
    }
    ensure(worst_gap <= 1e-12, || {
        format!("iterate drift {worst_gap:e}")
    })?;
    Ok(format!(
        "{} graphs, max residual {worst_res:.2e}, max iterate drift {worst_gap:.2e}, max iterations {max_iters}",
        graphs.len()
    ))
}

fn c5_k3_restore_conserve() -> Outcome {
    let graphs = family(20, &[64, 200, 512], 5);
    let mut steps = 0;
    for (i, g) in graphs.iter().enumerate() {
        let gamma = if i % 2 == 0 { 0.1 } else { 0.5 };
        let params = CoalesceParams {
            gamma,
            seed: i as u64,
        };
        let mut problem = None;
        let r = run_k3_observed(g, &params, |step, work| {
            if problem.is_some() {
                return;
            }
            let k = step.member_colors.len();
            let sum: f64 = step.member_colors.iter().sum();
            if step.vertices_before - step.vertices_after != k - 1 {
                problem = Some("vertex count did not drop by |S| - 1");
            } else if (step.mega_color * k as f64 - sum).abs() > 1e-12 {
                problem = Some("mega-vertex color not conserved");
            } else if !work.to_raw_csr().validate().is_ok() {
                problem = Some("intermediate graph invalid");
            }
        })
        .map_err(|e| e.to_string())?;
        if let Some(p) = problem {
            return Err(format!("graph {i}: {p}"));
        }
        steps += r.steps_performed;
        let restored: CsrGraph = r.original.restore();
        ensure(graphs_equal(&restored, g), || {
            format!("graph {i}: restore differs")
        })?;
        ensure(r.coalesced.validate().is_ok(), || {
            format!("graph {i}: coalesced invalid")
        })?;
    }
    Ok(format!("20 graphs, {steps} coalescing steps checked"))
}

fn complete(n: usize) -> CsrGraph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push(EdgeTriple::new(u, v, 0.5));
        }
    }
    CsrGraph::build(n, vec![0.5; n], &e).expect("complete graph")
}

fn c6_k4_oracle() -> Outcome {
    let graphs = family(20, &[64, 256, 512], 6);
    let mut samples = 0;
    for (i, g) in graphs.iter().enumerate() {
        let m = DenseMatrix::from_graph(g).map_err(|e| e.to_string())?;
        let n = g.vertex_count();
        let t = run_k4(
            g,
            &MetricParams {
                samples: n,
                seed: i as u64,
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(t.entries.len() == n, || {
            format!("graph {i}: {} samples", t.entries.len())
        })?;
        for &(u, cc) in &t.entries {
            let expect = oracles::oracle_cc_matrix(&m, u);
            ensure(cc.to_bits() == expect.to_bits(), || {
                format!("graph {i}, vertex {u}: {cc} vs {expect}")
            })?;
            ensure((0.0..=1.0).contains(&cc), || {
                format!("coefficient {cc} out of range")
            })?;
        }
        samples += n;
    }

    let k8 = run_k4(
        &complete(8),
        &MetricParams {
            samples: 64,
            seed: 1,
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(k8.entries.iter().all(|&(_, cc)| cc == 1.0), || {
        "K8 coefficient below 1".into()
    })?;

    for leaves in [2, 5, 30] {
        let e: Vec<_> = (1..=leaves).map(|v| EdgeTriple::new(0, v, 0.5)).collect();
        let star =
            CsrGraph::build(leaves + 1, vec![0.5; leaves + 1], &e).map_err(|e| e.to_string())?;
        let t = run_k4(
            &star,
            &MetricParams {
                samples: 200,
                seed: 7,
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(t.entries.iter().any(|&(u, _)| u == 0), || {
            "star center never sampled".into()
        })?;
        ensure(t.entries.iter().all(|&(_, cc)| cc == 0.0), || {
            "star coefficient non-zero".into()
        })?;
    }
    Ok(format!("{samples} samples exact, K8 all 1, star centers 0"))
}

/// Checks every accepted move of one optimizer run against the oracles.
struct MoveAudit<'a> {
    vertices: &'a [usize],
    edges: &'a [(usize, usize)],
    last: f64,
    moves: usize,
    problem: Option<String>,
}

impl MoveAudit<'_> {
    fn observe(&mut self, before: f64, after: f64, view: &SplitView<'_>) {
        if self.problem.is_some() {
            return;
        }
        self.moves += 1;
        let p = view.partition();
        let mut all: Vec<usize> = p.groups.iter().flatten().copied().collect();
        all.sort_unstable();
        let oracle = oracles::oracle_objective(&p.groups, self.edges);
        if all != self.vertices {
            self.problem = Some("partition invalid after a move".into());
        } else if !(after < before && after < self.last) {
            self.problem = Some(format!("objective did not decrease: {before} -> {after}"));
        } else if (oracle - after).abs() > 1e-9 {
            self.problem = Some(format!("objective {after} vs oracle {oracle}"));
        }
        self.last = after;
    }
}

fn c7_k5_invariants() -> Outcome {
    let graphs = family(20, &[32, 64, 128, 256], 7);
    let mut runs = 0;
    let mut moves = 0;
    for (i, g) in graphs.iter().enumerate() {
        for alpha in [0.0, 0.5] {
            let params = OptimizeParams {
                alpha,
                max_iters: 20,
            };
            let (vertices, edges) = oracles::oracle_filter(g, alpha);
            let sub = filter_subgraph(g, alpha);

            let mut audit = MoveAudit {
                vertices: &vertices,
                edges: &edges,
                last: f64::INFINITY,
                moves: 0,
                problem: None,
            };
            let r = run_k5_observed(g, &params, |mv, view| {
                audit.observe(mv.objective_before, mv.objective_after, view)
            })
            .map_err(|e| e.to_string())?;
            check_result(i, &r.partition, r.k, r.objective, &vertices, &edges)?;
            if let Some(p) = audit.problem {
                return Err(format!("graph {i}, alpha {alpha}: {p}"));
            }
            moves += audit.moves;

            // The same engine from a scattered start, where moves do happen.
            let mut rng = Prng::new(i as u64);
            let mut parts = vec![Vec::new(); 4];
            for &v in &vertices {
                parts[rng.uniform_int(4).map_err(|e| e.to_string())?].push(v);
            }
            let start = Partition { groups: parts };
            let mut audit = MoveAudit {
                vertices: &vertices,
                edges: &edges,
                last: f64::INFINITY,
                moves: 0,
                problem: None,
            };
            let r = split_from(&sub, start, params.max_iters, |mv, view| {
                audit.observe(mv.objective_before, mv.objective_after, view)
            });
            check_result(i, &r.partition, r.k, r.objective, &vertices, &edges)?;
            if let Some(p) = audit.problem {
                return Err(format!("graph {i}, alpha {alpha}, scattered start: {p}"));
            }
            moves += audit.moves;
            runs += 2;
        }
    }

    let k4 = run_k5(
        &complete(4),
        &OptimizeParams {
            alpha: 0.0,
            max_iters: 1,
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(k4.k == 1, || format!("K4 gave k = {}", k4.k))?;
    let none = run_k5(
        &graphs[0],
        &OptimizeParams {
            alpha: 1.0,
            max_iters: 20,
        },
    )
    .map_err(|e| e.to_string())?;
    ensure(none.k == 0 && none.partition.groups.is_empty(), || {
        "alpha = 1 left vertices".into()
    })?;
    Ok(format!(
        "{runs} runs, {moves} accepted moves audited, K4 k=1, alpha=1 k=0"
    ))
}

fn check_result(
    i: usize,
    p: &Partition,
    k: usize,
    objective: f64,
    vertices: &[usize],
    edges: &[(usize, usize)],
) -> Result<(), String> {
    ensure(k == p.groups.len(), || {
        format!("graph {i}: k {k} vs {} groups", p.groups.len())
    })?;
    let mut all: Vec<usize> = p.groups.iter().flatten().copied().collect();
    all.sort_unstable();
    ensure(all == vertices, || {
        format!("graph {i}: final partition invalid")
    })?;
    let oracle = oracles::oracle_objective(&p.groups, edges);
    ensure((oracle - objective).abs() <= 1e-9, || {
        format!("graph {i}: final objective {objective} vs {oracle}")
    })
}

fn run_checksum(path: &Path, repr: Repr, params: KernelParams) -> Result<String, String> {
    let outcome = run(&RunConfig::new(path, repr, params)).map_err(|e| e.to_string())?;
    Ok(outcome.report.checksum)
}

fn c8_cross_representation() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let graphs = family(10, &[64, 256, 512], 8);
    let mut compared = 0;
    for (i, g) in graphs.iter().enumerate() {
        let path = dir.path().join(format!("g{i}.txt"));
        std::fs::write(&path, serialize(g)).map_err(|e| e.to_string())?;
        let seed = 100 + i as u64;
        let all = [
            KernelParams::K1 {
                source: i % g.vertex_count(),
            },
            KernelParams::K2 {
                epsilon: 1e-9,
                max_iters: 10_000,
            },
            KernelParams::K4 { samples: 256, seed },
            KernelParams::K5 {
                alpha: 0.25,
                max_iters: 20,
            },
            KernelParams::K3 { gamma: 0.3, seed },
        ];
        for params in all {
            let a = run_checksum(&path, Repr::Csr, params)?;
            let b = run_checksum(&path, Repr::Adj, params)?;
            ensure(a == b, || {
                format!("graph {i}, {}: {a} vs {b}", params.kernel())
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "{compared} kernel/graph checksums equal across representations"
    ))
}

fn random_graph(rng: &mut Prng, n: usize, edges: usize, color: Option<f64>) -> CsrGraph {
    let colors: Vec<f64> = (0..n)
        .map(|_| color.unwrap_or_else(|| rng.uniform_real()))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut list = Vec::new();
    for _ in 0..edges {
        let u = rng.uniform_int(n).unwrap();
        let v = rng.uniform_int(n).unwrap();
        if u != v && seen.insert((u.min(v), u.max(v))) {
            list.push(EdgeTriple::new(u, v, rng.uniform_real()));
        }
    }
    CsrGraph::build(n, colors, &list).expect("random graph")
}

fn c9_format_round_trip() -> Outcome {
    let mut rng = Prng::new(9);
    let mut graphs = vec![
        CsrGraph::build(1, vec![0.5], &[]).expect("single vertex"),
        CsrGraph::build(1, vec![0.0], &[]).expect("single vertex"),
        // Two components and isolated vertices.
        CsrGraph::build(
            7,
            vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7],
            &[
                EdgeTriple::new(0, 1, 0.25),
                EdgeTriple::new(1, 2, 1.0),
                EdgeTriple::new(4, 5, 0.0),
            ],
        )
        .expect("disconnected graph"),
        random_graph(&mut rng, 40, 30, Some(0.5)),
        random_graph(&mut rng, 60, 0, Some(1.0)),
        CsrGraph::build(
            2,
            vec![5e-324, 1.0],
            &[EdgeTriple::new(0, 1, f64::MIN_POSITIVE)],
        )
        .expect("tiny values"),
    ];
    while graphs.len() < 30 {
        let n = 1 + rng.uniform_int(300).unwrap();
        let m = rng.uniform_int(4 * n).unwrap();
        graphs.push(random_graph(&mut rng, n, m, None));
    }
    while graphs.len() < 50 {
        let i = graphs.len() as u64;
        graphs.push(gen(50 + 20 * i as usize, 1 + (i % 5) as usize, 3, i));
    }
    for (i, g) in graphs.iter().enumerate() {
        let text = serialize(g);
        let csr: CsrGraph = parse(&text).map_err(|e| format!("graph {i}: {e}"))?;
        let adj: AdjListGraph = parse(&text).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(graphs_equal(&csr, g) && graphs_equal(&adj, g), || {
            format!("graph {i} changed")
        })?;
        ensure(serialize(&adj) == text, || {
            format!("graph {i}: re-serialization differs")
        })?;
    }
    Ok(format!("{} graphs round-tripped bit-exactly", graphs.len()))
}

fn expect_keys(v: &Value, keys: &[&str], at: &str) -> Result<(), String> {
    let obj = v
        .as_object()
        .ok_or_else(|| format!("{at} is not an object"))?;
    let mut got: Vec<&str> = obj.keys().map(String::as_str).collect();
    let mut want = keys.to_vec();
    got.sort_unstable();
    want.sort_unstable();
    ensure(got == want, || {
        format!("{at} keys {got:?}, expected {want:?}")
    })
}

fn check_schema(json: &str, reps: usize) -> Result<Value, String> {
    ensure(json.ends_with("}\n") && !json.ends_with("\n\n"), || {
        "bad trailing newline".into()
    })?;
    let v: Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    expect_keys(
        &v,
        &[
            "checksum",
            "graph",
            "kernel",
            "parameters",
            "representation",
            "reps",
            "seeds",
            "summary",
            "timings_ns",
            "verification",
            "version",
            "warmup",
        ],
        "report",
    )?;
    expect_keys(
        &v["graph"],
        &["edges", "max_degree", "mean_degree", "vertices"],
        "graph",
    )?;
    expect_keys(&v["summary"], &["max_ns", "mean_ns", "min_ns"], "summary")?;
    let params: Vec<&str> = match v["kernel"].as_str() {
        Some("k1") => vec!["source"],
        Some("k2") => vec!["epsilon", "max_iters"],
        Some("k3") => vec!["gamma", "seed"],
        Some("k4") => vec!["samples", "seed"],
        Some("k5") => vec!["alpha", "max_iters"],
        other => return Err(format!("unknown kernel {other:?}")),
    };
    expect_keys(&v["parameters"], &params, "parameters")?;

    let checksum = v["checksum"].as_str().unwrap_or("");
    ensure(
        checksum.len() == 18
            && checksum.starts_with("0x")
            && checksum[2..].bytes().all(|b| b.is_ascii_hexdigit()),
        || format!("checksum {checksum:?}"),
    )?;
    ensure(
        matches!(v["representation"].as_str(), Some("csr" | "adj")),
        || "representation".into(),
    )?;
    ensure(
        matches!(
            v["verification"].as_str(),
            Some("skipped" | "passed" | "failed")
        ),
        || "verification".into(),
    )?;
    ensure(v["version"].is_string() && v["seeds"].is_array(), || {
        "version/seeds".into()
    })?;
    ensure(v["reps"].as_u64() == Some(reps as u64), || "reps".into())?;
    ensure(v["warmup"].is_u64(), || "warmup".into())?;
    let timings = v["timings_ns"].as_array().ok_or("timings_ns")?;
    ensure(
        timings.len() == reps && timings.iter().all(Value::is_u64),
        || "timings_ns".into(),
    )?;
    let (min, mean, max) = (
        v["summary"]["min_ns"].as_u64().ok_or("min_ns")? as f64,
        v["summary"]["mean_ns"].as_f64().ok_or("mean_ns")?,
        v["summary"]["max_ns"].as_u64().ok_or("max_ns")? as f64,
    );
    ensure(min <= mean && mean <= max, || "summary order".into())?;
    for key in ["edges", "max_degree", "vertices"] {
        ensure(v["graph"][key].is_u64(), || format!("graph.{key}"))?;
    }
    ensure(v["graph"]["mean_degree"].is_number(), || {
        "graph.mean_degree".into()
    })?;
    Ok(v)
}

fn c10_harness_contract() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let path: PathBuf = dir.path().join("g256.txt");
    std::fs::write(&path, serialize(&gen(256, 4, 5, 10))).map_err(|e| e.to_string())?;
    let all = [
        KernelParams::K1 { source: 17 },
        KernelParams::K2 {
            epsilon: 1e-9,
            max_iters: 10_000,
        },
        KernelParams::K4 {
            samples: 256,
            seed: 10,
        },
        KernelParams::K5 {
            alpha: 0.5,
            max_iters: 20,
        },
    ];
    for (i, params) in all.into_iter().enumerate() {
        let reps = 2 + i;
        let repr = if i % 2 == 0 { Repr::Csr } else { Repr::Adj };
        let mut cfg = RunConfig::new(&path, repr, params);
        cfg.reps = reps;
        cfg.warmup = 1;
        cfg.verify = true;
        let outcome = run(&cfg).map_err(|e| e.to_string())?;
        let v = check_schema(&emit_report(&outcome.report), reps)?;
        ensure(v["verification"] == "passed", || {
            format!("{}: {:?}", params.kernel(), outcome.note)
        })?;
    }

    // Through the CLI: report file, rep count, and the corrupted-result hook.
    let report = dir.path().join("r.json");
    let graph = path.to_string_lossy().into_owned();
    let base = [
        "run",
        "--kernel",
        "k2",
        "--epsilon",
        "1e-9",
        "--max-iters",
        "10000",
        "--graph",
        &graph,
        "--verify",
        "--reps",
        "3",
    ];
    let mut args = base.to_vec();
    let report_arg = report.to_string_lossy().into_owned();
    args.extend(["--report", &report_arg]);
    let out = cli(&args)?;
    ensure(out.status.code() == Some(0), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    check_schema(
        &std::fs::read_to_string(&report).map_err(|e| e.to_string())?,
        3,
    )?;

    let mut exits = Vec::new();
    for kernel in [
        vec!["--kernel", "k1", "--source", "3"],
        vec![
            "--kernel",
            "k2",
            "--epsilon",
            "1e-9",
            "--max-iters",
            "10000",
        ],
        vec!["--kernel", "k4", "--samples", "50", "--seed", "2"],
        vec!["--kernel", "k5", "--alpha", "0.5", "--max-iters", "20"],
    ] {
        let mut args = vec!["run", "--graph", &graph, "--verify", "--inject-fault"];
        args.extend(kernel);
        let out = cli(&args)?;
        let json = String::from_utf8_lossy(&out.stdout).into_owned();
        let v = check_schema(&json, 1)?;
        ensure(v["verification"] == "failed", || {
            "corrupted result was not flagged".into()
        })?;
        exits.push(out.status.code());
    }
    ensure(exits.iter().all(|c| *c == Some(3)), || {
        format!("fault exit codes {exits:?}")
    })?;
    Ok("schema ok, rep counts match, verify passes, corrupted results exit 3".into())
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 10] = [
    (1, "generator statistics", 5, c1_generator_statistics),
    (2, "generator determinism", 10, c2_generator_determinism),
    (3, "k1 oracle equivalence", 30, c3_k1_oracle),
    (4, "k2 convergence", 30, c4_k2_convergence),
    (
        5,
        "k3 restoration and conservation",
        20,
        c5_k3_restore_conserve,
    ),
    (6, "k4 oracle equivalence", 20, c6_k4_oracle),
    (7, "k5 invariants", 60, c7_k5_invariants),
    (
        8,
        "cross-representation equality",
        30,
        c8_cross_representation,
    ),
    (9, "format round trip", 10, c9_format_round_trip),
    (10, "harness contract", 20, c10_harness_contract),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (id, name, limit, check) in CRITERIA {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(limit) => Err(format!(
                "took {:.2} s, limit {limit} s ({detail})",
                took.as_secs_f64()
            )),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {id:>2} {status} {name} [{:.2} s / {limit} s]: {detail}",
            took.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
