//! Command-line front end.
//!
//! Every subcommand prints one JSON document on stdout. Exit codes: 0 on
//! success, 2 for usage, parse and configuration errors, 3 for instance,
//! capacity and other runtime errors. `QUBO_FORGE_THREADS` caps the worker
//! threads used by the solvers.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::anneal::{solve_sa, AnnealConfig};
use crate::error::{Error, Result};
use crate::exact::solve_exact;
use crate::genomics::{build_pathway_instance, MutationTable};
use crate::io::read_qubo;
use crate::model::QuboModel;
use crate::problems::{
    cancer_multi, cancer_single, decode_cut, decode_order_partition, decode_partition,
    decode_pathways, max_cut, min_vertex_cover, number_partitioning, order_partitioning,
    verify_cover, Graph, OrderPartitionInstance, PartitionInstance, DEFAULT_COVER_PENALTY,
    DEFAULT_PATHWAY_ALPHA,
};
use crate::qaoa::{optimize, ExpectationMode, QaoaConfig, QaoaResult};
use crate::sample::{Sample, SampleSet};

pub const THREADS_ENV: &str = "QUBO_FORGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "qubo-forge", version, about = "Build and solve QUBO models")]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split a list of positive integers into two halves with equal sums.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Maximum cut of an undirected graph.
    Maxcut {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Minimum vertex cover with a penalty on uncovered edges.
    VertexCover {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_COVER_PENALTY)]
        penalty: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Cancer pathways from a patient/gene mutation TSV.
    Genomics {
        #[arg(long)]
        mutations: PathBuf,
        /// Coverage weight (and orthogonality weight unless --alpha-orth is given).
        #[arg(long, default_value_t = DEFAULT_PATHWAY_ALPHA)]
        alpha: f64,
        /// Orthogonality weight for k >= 2.
        #[arg(long)]
        alpha_orth: Option<f64>,
        #[arg(long, default_value_t = 1)]
        pathways: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Split stock orders into two books balancing money and risk exposure.
    OrderPartition {
        #[arg(long)]
        stocks: PathBuf,
        #[arg(long)]
        risks: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Solve a QUBO JSON file and print the sample set.
    Solve {
        #[arg(long)]
        qubo: PathBuf,
        /// Number of lowest-energy assignments kept by the exact solver.
        #[arg(long, default_value_t = 10)]
        top_k: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverKind {
    Exact,
    Sa,
    Qaoa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "exact")]
    solver: SolverKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restarts for sa (default 10) or qaoa (default 3).
    #[arg(long)]
    restarts: Option<usize>,
    /// Sweeps per annealing restart.
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,
    #[arg(long, default_value_t = 1)]
    p_layers: usize,
    #[arg(long, default_value_t = 1000)]
    shots: u64,
    /// How QAOA estimates the objective during optimization.
    #[arg(long, value_enum, default_value = "exact")]
    expectation: ModeArg,
    #[arg(long, default_value_t = 200)]
    max_iterations: usize,
}

struct Solved {
    set: SampleSet,
    qaoa: Option<QaoaResult>,
}

impl Solved {
    fn best(&self) -> Result<&Sample> {
        self.set.lowest()
    }
}

fn solver_name(kind: SolverKind) -> &'static str {
    match kind {
        SolverKind::Exact => "exact",
        SolverKind::Sa => "sa",
        SolverKind::Qaoa => "qaoa",
    }
}

fn solve_model(model: &QuboModel, args: &SolverArgs, top_k: usize) -> Result<Solved> {
    match args.solver {
        SolverKind::Exact => Ok(Solved {
            set: solve_exact(model, top_k)?,
            qaoa: None,
        }),
        SolverKind::Sa => {
            let cfg = AnnealConfig {
                sweeps: args.sweeps,
                restarts: args.restarts.unwrap_or(10),
                seed: args.seed,
                ..Default::default()
            };
            Ok(Solved {
                set: solve_sa(model, &cfg)?,
                qaoa: None,
            })
        }
        SolverKind::Qaoa => {
            let cfg = QaoaConfig {
                layers: args.p_layers,
                shots: args.shots,
                restarts: args.restarts.unwrap_or(3),
                max_iterations: args.max_iterations,
                mode: match args.expectation {
                    ModeArg::Exact => ExpectationMode::Exact,
                    ModeArg::Sampled => ExpectationMode::Sampled,
                },
                seed: args.seed,
                ..Default::default()
            };
            let result = optimize(model, &cfg)?;
            Ok(Solved {
                set: result.to_sample_set(model, &cfg)?,
                qaoa: Some(result),
            })
        }
    }
}

fn header(args: &SolverArgs, best: &Sample) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("solver".into(), json!(solver_name(args.solver)));
    m.insert("energy".into(), json!(best.energy));
    m.insert("bitstring".into(), json!(best.assignment.to_string()));
    m
}

fn execute(cli: &Cli, warn: &mut dyn FnMut(String)) -> Result<Value> {
    match &cli.command {
        Command::Partition { values, solver } => {
            let inst = PartitionInstance::new(values.clone())?;
            let model = number_partitioning(&inst)?;
            let solved = solve_model(&model, solver, 1)?;
            let best = solved.best()?;
            let split = decode_partition(&inst, &best.assignment)?;
            let mut out = header(solver, best);
            out.insert("set_a".into(), json!(split.set_a));
            out.insert("set_b".into(), json!(split.set_b));
            out.insert("difference".into(), json!(split.difference));
            Ok(Value::Object(out))
        }
        Command::Maxcut { graph, solver } => {
            let g = Graph::read(graph)?;
            let model = max_cut(&g)?;
            let solved = solve_model(&model, solver, 1)?;
            let best = solved.best()?;
            let cut = decode_cut(&g, &best.assignment)?;
            let mut out = header(solver, best);
            out.insert("set_a".into(), json!(cut.set_a));
            out.insert("set_b".into(), json!(cut.set_b));
            out.insert("cut_size".into(), json!(cut.cut_size));
            Ok(Value::Object(out))
        }
        Command::VertexCover {
            graph,
            penalty,
            solver,
        } => {
            let g = Graph::read(graph)?;
            let model = min_vertex_cover(&g, *penalty)?;
            let solved = solve_model(&model, solver, 1)?;
            let best = solved.best()?;
            let check = verify_cover(&g, &best.assignment)?;
            if !check.is_cover {
                warn(format!(
                    "selection leaves {} edge(s) uncovered; a larger --penalty enforces the cover",
                    check.uncovered.len()
                ));
            }
            let cover: Vec<usize> = best.assignment.ones().collect();
            let mut out = header(solver, best);
            out.insert("cover_size".into(), json!(cover.len()));
            out.insert("cover".into(), json!(cover));
            out.insert("valid".into(), json!(check.is_cover));
            out.insert("uncovered".into(), json!(check.uncovered));
            Ok(Value::Object(out))
        }
        Command::Genomics {
            mutations,
            alpha,
            alpha_orth,
            pathways,
            solver,
        } => {
            let table = MutationTable::read(mutations)?;
            if *alpha < 1.0 {
                warn(format!(
                    "alpha = {alpha} is below 1; coverage is weighted less than exclusivity"
                ));
            }
            let mut inst = build_pathway_instance(&table, *alpha, *pathways)?;
            if let Some(w) = alpha_orth {
                inst = inst.with_orthogonality_weight(*w)?;
            }
            let model = if *pathways == 1 {
                cancer_single(&inst)?
            } else {
                cancer_multi(&inst)?
            };
            let solved = solve_model(&model, solver, 1)?;
            let best = solved.best()?;
            let sets = decode_pathways(&inst, &best.assignment)?;
            let mut out = header(solver, best);
            out.insert("genes".into(), json!(inst.labels()));
            out.insert("pathways".into(), json!(sets));
            Ok(Value::Object(out))
        }
        Command::OrderPartition {
            stocks,
            risks,
            a,
            b,
            solver,
        } => {
            let inst = OrderPartitionInstance::from_csv_files(stocks, risks, *a, *b)?;
            let model = order_partitioning(&inst)?;
            let solved = solve_model(&model, solver, 1)?;
            let best = solved.best()?;
            let split = decode_order_partition(&inst, &best.assignment)?;
            let names = |idx: &[usize]| {
                idx.iter()
                    .map(|&j| inst.names()[j].clone())
                    .collect::<Vec<_>>()
            };
            let mut out = header(solver, best);
            out.insert("set_a".into(), json!(names(&split.set_a)));
            out.insert("set_b".into(), json!(names(&split.set_b)));
            out.insert("money_gap".into(), json!(split.money_gap));
            out.insert("factor_gaps".into(), json!(split.factor_gaps));
            Ok(Value::Object(out))
        }
        Command::Solve {
            qubo,
            top_k,
            solver,
        } => {
            let model = read_qubo(qubo)?;
            let solved = solve_model(&model, solver, *top_k)?;
            let mut out = solved.set.to_json();
            if let Some(q) = &solved.qaoa {
                out["qaoa"] = q.to_json();
            }
            Ok(out)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Io { .. } | Error::Config(_) => 2,
        _ => 3,
    }
}

fn thread_pool() -> std::result::Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let threads: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let mut warnings = Vec::new();
    let result = pool.install(|| execute(&cli, &mut |w| warnings.push(w)));
    for w in warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match result {
        Ok(value) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("JSON values serialize");
            let _ = writeln!(stdout, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
