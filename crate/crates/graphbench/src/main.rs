use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use graphbench::harness::{self, load_graph, GraphStats, Verification};
use graphbench::{checksum, serialize, HarnessError, KernelId, KernelParams, Repr, RunConfig};
use graphbench_core::generator::{generate, GeneratorParams};
use graphbench_core::{CsrGraph, Graph, KernelError};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "graphbench",
    version,
    about = "Scale-free graph generator and kernel benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a scale-free graph file.
    Generate {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        avg_degree: usize,
        #[arg(long)]
        clique_size: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time a kernel on a graph file.
    Run(RunArgs),
    /// Run a kernel once and check it against the oracles.
    ValidateRun(RunArgs),
    /// Check a graph file.
    Validate {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Print graph statistics.
    Info {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    kernel: KernelId,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "csr")]
    repr: Repr,

    #[arg(long)]
    source: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Write the coalesced graph here (k3).
    #[arg(long)]
    out_coalesced: Option<PathBuf>,

    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    warmup: usize,
    #[arg(long)]
    verify: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the rendered result here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = match e {
            HarnessError::Config(_) | HarnessError::Kernel(KernelError::InvalidParams(_)) => {
                EXIT_USAGE
            }
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn need<T>(value: Option<T>, flag: &str, kernel: KernelId) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("--{flag} is required for {kernel}")))
}

impl RunArgs {
    fn params(&self) -> Result<KernelParams, Failure> {
        let k = self.kernel;
        Ok(match k {
            KernelId::K1 => KernelParams::K1 {
                source: need(self.source, "source", k)?,
            },
            KernelId::K2 => KernelParams::K2 {
                epsilon: need(self.epsilon, "epsilon", k)?,
                max_iters: need(self.max_iters, "max-iters", k)?,
            },
            KernelId::K3 => KernelParams::K3 {
                gamma: need(self.gamma, "gamma", k)?,
                seed: need(self.seed, "seed", k)?,
            },
            KernelId::K4 => KernelParams::K4 {
                samples: need(self.samples, "samples", k)?,
                seed: need(self.seed, "seed", k)?,
            },
            KernelId::K5 => KernelParams::K5 {
                alpha: need(self.alpha, "alpha", k)?,
                max_iters: need(self.max_iters, "max-iters", k)?,
            },
        })
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn cmd_generate(params: GeneratorParams, out: &Path) -> Result<(), Failure> {
    let generated = generate(&params).map_err(|e| Failure::usage(e.to_string()))?;
    let g: CsrGraph = generated.build();
    let text = serialize(&g);
    write(out, &text)?;
    eprintln!(
        "wrote {} vertices, {} edges, checksum {}",
        g.vertex_count(),
        generated.edges.len(),
        harness::format_checksum(checksum(text.as_bytes()))
    );
    Ok(())
}

fn cmd_run(args: &RunArgs, force_verify: bool) -> Result<(), Failure> {
    let params = args.params()?;
    if args.out_coalesced.is_some() && args.kernel != KernelId::K3 {
        return Err(Failure::usage("--out-coalesced only applies to k3"));
    }
    let config = RunConfig {
        graph: args.graph.clone(),
        repr: args.repr,
        params,
        reps: args.reps,
        warmup: args.warmup,
        verify: args.verify || force_verify,
        inject_fault: args.inject_fault,
    };
    let outcome = harness::run(&config)?;

    let json = harness::emit_report(&outcome.report);
    match &args.report {
        Some(path) => write(path, &json)?,
        None => print!("{json}"),
    }
    if let Some(path) = &args.out {
        write(path, &outcome.result_text)?;
    }
    if let Some(path) = &args.out_coalesced {
        write(path, &outcome.result_text)?;
    }
    if let Some(note) = &outcome.note {
        eprintln!("verification: {note}");
    }
    if outcome.report.verification == Verification::Failed {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: "verification failed".into(),
        });
    }
    Ok(())
}

fn cmd_validate(path: &Path) -> Result<(), Failure> {
    let g = load_graph(path)?;
    println!(
        "ok: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    Ok(())
}

fn cmd_info(path: &Path) -> Result<(), Failure> {
    let g = load_graph(path)?;
    let stats = GraphStats::of(&g);
    println!("vertices {}", stats.vertices);
    println!("edges {}", stats.edges);
    println!("mean_degree {}", stats.mean_degree);
    println!("max_degree {}", stats.max_degree);
    println!(
        "checksum {}",
        harness::format_checksum(checksum(serialize(&g).as_bytes()))
    );
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate {
            vertices,
            avg_degree,
            clique_size,
            seed,
            out,
        } => cmd_generate(
            GeneratorParams {
                vertices,
                avg_degree,
                clique_size,
                seed,
            },
            &out,
        ),
        Command::Run(args) => cmd_run(&args, false),
        Command::ValidateRun(args) => cmd_run(&args, true),
        Command::Validate { graph } => cmd_validate(&graph),
        Command::Info { graph } => cmd_info(&graph),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
