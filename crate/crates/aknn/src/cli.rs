//! Command-line surface: dataset generation, statistics, prune planning,
//! exact joins, microbenchmarks, and method comparison.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or any other
//! error. Every command is deterministic for a given seed, timings aside.

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::bench::{self, BenchVariant};
use crate::error::{Error, Result};
use crate::geometry::MAX_CORNER_DIMS;
use crate::join::{aknn_join, neighbor_lists_to_ndjson, JoinMethod};
use crate::ordering::{
    baseline_prune_dist_sq, baseline_prune_plan, PartitionMeta, PrunePlan, ProximityDag,
};
use crate::pruning::{all_points_closer_opt, failing_corner, Witness};
use crate::scalar::{Scalar, ScalarKind};
use crate::storage::{
    generate_synthetic, generate_to_dir, open_dataset, Dataset, DatasetHandle, GeneratorSpec,
    Layout,
};

/// Exact all-k-nearest-neighbor joins with bounds-only partition pruning.
#[derive(Parser)]
#[command(name = "aknn", version, about, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic partitioned dataset.
    Gen(GenArgs),
    /// Summarize a dataset; optionally verify files against the manifest.
    Stats(StatsArgs),
    /// Plan which candidate partitions one origin partition must load.
    Prune(PruneArgs),
    /// Run an exact all-k-nearest-neighbor join between two datasets.
    Join(JoinArgs),
    /// Time the proximity-test kernels.
    Bench(BenchArgs),
    /// Compare partitions loaded per pruning method over generated
    /// workloads.
    Compare(CompareArgs),
}

/// Parse `std::env::args` and execute. Returns the exit code: 0 on success,
/// 1 on a verification failure, 2 otherwise (clap exits with 2 on usage
/// errors by itself).
pub fn run() -> u8 {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => 0,
        Err(Error::VerificationFailed(msg)) => {
            eprintln!("verification failed: {msg}");
            1
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Stats(args) => cmd_stats(&args),
        Command::Prune(args) => cmd_prune(&args),
        Command::Join(args) => cmd_join(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Compare(args) => cmd_compare(&args),
    }
}

/// `N` or `LO..HI` (inclusive).
fn parse_points(s: &str) -> std::result::Result<(u64, u64), String> {
    let parse =
        |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad point count {t:?}: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(format!("inverted range {lo}..{hi}"));
            }
            Ok((lo, hi))
        }
        None => parse(s).map(|n| (n, n)),
    }
}

#[derive(Args)]
struct GenArgs {
    /// Output dataset directory (created if absent).
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Layout::UniformGridCells)]
    layout: Layout,
    /// Dimensionality of every point.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    dims: u64,
    /// Number of partitions.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    partitions: u64,
    /// Points per partition: a count `N` or an inclusive range `LO..HI`.
    #[arg(long, default_value = "100", value_parser = parse_points)]
    points: (u64, u64),
    #[arg(long, value_enum, default_value_t = ScalarKind::Float64)]
    scalar: ScalarKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Widen every declared bound by this absolute amount per side.
    #[arg(long, default_value_t = 0.0)]
    slack: f64,
    /// Dataset name; derived from the other parameters when omitted.
    #[arg(long)]
    name: Option<String>,
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let spec = GeneratorSpec {
        name: args.name.clone(),
        dims: args.dims as usize,
        partitions: args.partitions as usize,
        points: args.points,
        layout: args.layout,
        seed: args.seed,
        slack: args.slack,
    };
    match args.scalar {
        ScalarKind::Float64 => gen_as::<f64>(&spec, args),
        ScalarKind::Int64 => gen_as::<i64>(&spec, args),
    }
}

fn gen_as<S: Scalar>(spec: &GeneratorSpec, args: &GenArgs) -> Result<()> {
    let manifest = generate_to_dir::<S>(spec, &args.out)?;
    let total: u64 = manifest.partitions.iter().map(|p| p.count).sum();
    println!(
        "wrote {} to {}: {} partitions, {} points, {}d {}",
        manifest.name,
        args.out.display(),
        manifest.partitions.len(),
        total,
        manifest.dims,
        manifest.scalar_kind
    );
    Ok(())
}

#[derive(Args)]
struct StatsArgs {
    /// Dataset directory.
    #[arg(long, value_name = "DIR")]
    dataset: PathBuf,
    /// Re-read every data file and check counts, ranges, and bounds.
    #[arg(long)]
    verify: bool,
}

fn cmd_stats(args: &StatsArgs) -> Result<()> {
    match open_dataset(&args.dataset)? {
        Dataset::F64(h) => stats_as(&h, args),
        Dataset::I64(h) => stats_as(&h, args),
    }
}

fn stats_as<S: Scalar>(handle: &DatasetHandle<S>, args: &StatsArgs) -> Result<()> {
    let m = &handle.manifest;
    let total: u64 = m.partitions.iter().map(|p| p.count).sum();
    println!(
        "dataset {} scalar {} dims {} partitions {} points {}",
        m.name,
        m.scalar_kind,
        m.dims,
        m.partitions.len(),
        total
    );
    for p in &m.partitions {
        println!("{} count={} lo={:?} hi={:?}", p.id, p.count, p.lo, p.hi);
    }
    if args.verify {
        let problems = handle.verify();
        if !problems.is_empty() {
            for problem in &problems {
                eprintln!("problem: {problem}");
            }
            return Err(Error::VerificationFailed(format!(
                "{} problem(s) in dataset {}",
                problems.len(),
                m.name
            )));
        }
        println!("verify ok: {} partitions consistent with their data files", m.partitions.len());
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum PruneMethod {
    Baseline,
    ApcDag,
}

#[derive(Args)]
struct PruneArgs {
    /// Dataset directory.
    #[arg(long, value_name = "DIR")]
    dataset: PathBuf,
    /// Origin partition id; all other partitions are the candidates.
    #[arg(long, value_name = "ID")]
    origin: String,
    /// Number of neighbors the plan must guarantee.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value_t = PruneMethod::ApcDag)]
    method: PruneMethod,
    /// Also print why each required partition could not be pruned.
    #[arg(long)]
    explain: bool,
}

fn cmd_prune(args: &PruneArgs) -> Result<()> {
    match open_dataset(&args.dataset)? {
        Dataset::F64(h) => prune_as(&h, args),
        Dataset::I64(h) => prune_as(&h, args),
    }
}

fn prune_as<S: Scalar>(handle: &DatasetHandle<S>, args: &PruneArgs) -> Result<()> {
    let origin = handle.manifest.partition(&args.origin)?.meta();
    let candidates: Vec<PartitionMeta<S>> = handle
        .manifest
        .partitions
        .iter()
        .filter(|p| p.id != args.origin)
        .map(|p| p.meta())
        .collect();
    let plan = match args.method {
        PruneMethod::Baseline => baseline_prune_plan(&origin, &candidates, args.k)?,
        PruneMethod::ApcDag => ProximityDag::build(&origin, &candidates)?.prune_plan(args.k),
    };
    println!("{}", serde_json::to_string_pretty(&plan).expect("plan serializes"));
    if args.explain {
        match args.method {
            PruneMethod::Baseline => explain_baseline(&origin, &candidates, &plan),
            PruneMethod::ApcDag => explain_dag(&origin, &candidates, &plan),
        }
    }
    Ok(())
}

/// For each kept partition, print how many points are provably closer and a
/// witness triple for every candidate that fails the proximity test against
/// it, so "could not prune" is always backed by concrete points.
fn explain_dag<S: Scalar>(
    origin: &PartitionMeta<S>,
    candidates: &[PartitionMeta<S>],
    plan: &PrunePlan<S>,
) {
    for id in &plan.required {
        let target = candidates.iter().find(|c| c.id == *id).expect("required id is a candidate");
        let closer: u64 = candidates
            .iter()
            .filter(|e| {
                e.id != *id && all_points_closer_opt(&origin.bounds, &e.bounds, &target.bounds)
            })
            .map(|e| e.count)
            .sum();
        println!("required {id}: {closer} point(s) provably closer, k={}", plan.k);
        for eval in candidates.iter().filter(|e| e.id != *id) {
            if let Some(corner) = failing_corner(&origin.bounds, &eval.bounds, &target.bounds) {
                let w = Witness::for_corner(&corner, &eval.bounds, &target.bounds);
                let (to_eval, to_basis) = w.violation();
                println!(
                    "  {} not provably closer than {}: corner={:?} eval_point={:?} \
                     basis_point={:?} dist_sq {} >= {} (dist {:.3} >= {:.3})",
                    eval.id,
                    id,
                    w.origin_corner,
                    w.eval_point,
                    w.basis_point,
                    to_eval,
                    to_basis,
                    S::acc_to_f64(to_eval).sqrt(),
                    S::acc_to_f64(to_basis).sqrt()
                );
            }
        }
    }
}

/// For each kept partition, print its nearest possible distance against the
/// sweep's saturating distance.
fn explain_baseline<S: Scalar>(
    origin: &PartitionMeta<S>,
    candidates: &[PartitionMeta<S>],
    plan: &PrunePlan<S>,
) {
    let Some(limit) = baseline_prune_dist_sq(origin, candidates, plan.k) else {
        println!("explain: candidates hold fewer than k={} points, nothing can be pruned", plan.k);
        return;
    };
    println!("explain: prune_dist_sq={limit} (dist {:.3})", S::acc_to_f64(limit).sqrt());
    for id in &plan.required {
        let c = candidates.iter().find(|c| c.id == *id).expect("required id is a candidate");
        let bmin = origin.bounds.bmin_dist_sq(&c.bounds);
        println!(
            "required {id}: bmin_dist_sq={bmin} (dist {:.3}) <= prune_dist_sq",
            S::acc_to_f64(bmin).sqrt()
        );
    }
}

#[derive(Args)]
struct JoinArgs {
    /// Dataset providing the query points.
    #[arg(long, value_name = "DIR")]
    origin_dataset: PathBuf,
    /// Dataset searched for neighbors.
    #[arg(long, value_name = "DIR")]
    candidate_dataset: PathBuf,
    /// Neighbors per origin point.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_enum, default_value_t = JoinMethod::ApcDag)]
    method: JoinMethod,
    /// Write neighbor lists (newline-delimited JSON) here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write the work report as JSON here.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Re-run without pruning and fail unless the results match exactly.
    #[arg(long)]
    verify: bool,
}

fn cmd_join(args: &JoinArgs) -> Result<()> {
    match (open_dataset(&args.origin_dataset)?, open_dataset(&args.candidate_dataset)?) {
        (Dataset::F64(o), Dataset::F64(c)) => join_as(&o, &c, args),
        (Dataset::I64(o), Dataset::I64(c)) => join_as(&o, &c, args),
        (o, c) => Err(Error::DatasetMismatch(format!(
            "origin dataset is {}, candidate dataset is {}",
            o.scalar_kind(),
            c.scalar_kind()
        ))),
    }
}

fn join_as<S: Scalar>(
    origin: &DatasetHandle<S>,
    cands: &DatasetHandle<S>,
    args: &JoinArgs,
) -> Result<()> {
    let (lists, report) = aknn_join(origin, cands, args.k, args.method)?;
    let bytes = neighbor_lists_to_ndjson(&lists);
    if args.verify {
        if args.method == JoinMethod::None {
            eprintln!("verify: method none is already the reference");
        } else {
            let (reference, _) = aknn_join(origin, cands, args.k, JoinMethod::None)?;
            if bytes != neighbor_lists_to_ndjson(&reference) {
                return Err(Error::VerificationFailed(format!(
                    "join with method {} differs from the unpruned join",
                    args.method
                )));
            }
            eprintln!(
                "verify ok: method {} matches the unpruned join byte for byte",
                args.method
            );
        }
    }
    match &args.out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|source| Error::Io { path: path.clone(), source })?,
        None => std::io::stdout()
            .lock()
            .write_all(&bytes)
            .map_err(|source| Error::Io { path: "<stdout>".into(), source })?,
    }
    if let Some(path) = &args.report {
        let mut json = serde_json::to_vec_pretty(&report).expect("report serializes");
        json.push(b'\n');
        std::fs::write(path, json).map_err(|source| Error::Io { path: path.clone(), source })?;
    }
    let loaded: usize = report.origins.iter().map(|o| o.loaded).sum();
    let pruned: usize = report.origins.iter().map(|o| o.pruned).sum();
    eprintln!(
        "join method={} k={} origin_partitions={} points={} candidate_loads={} pruned={} \
         plan={:.3}s load={:.3}s scan={:.3}s",
        report.method,
        report.k,
        report.origins.len(),
        lists.len(),
        loaded,
        pruned,
        report.plan_seconds,
        report.load_seconds,
        report.scan_seconds
    );
    Ok(())
}

#[derive(Args)]
struct BenchArgs {
    /// Dimensionalities to time (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 4, 8, 16, 32],
          value_parser = clap::value_parser!(u64).range(1..))]
    dims: Vec<u64>,
    /// Scalar kinds to time (comma-separated).
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ScalarKind::Float64])]
    scalar: Vec<ScalarKind>,
    /// Timed calls per measurement.
    #[arg(long, default_value_t = 100_000)]
    iters: u64,
    /// Kernels to time (comma-separated).
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [BenchVariant::Optimized])]
    variant: Vec<BenchVariant>,
    /// Per-measurement time cap for the naive kernel, in milliseconds.
    #[arg(long, default_value_t = 2_000)]
    naive_budget_ms: u64,
}

fn cmd_bench(args: &BenchArgs) -> Result<()> {
    let mut records = Vec::new();
    for &kind in &args.scalar {
        for &dims in &args.dims {
            let dims = dims as usize;
            for &variant in &args.variant {
                if variant == BenchVariant::Naive && dims > MAX_CORNER_DIMS {
                    eprintln!(
                        "skipping naive at {dims}d: corner sweep handles at most \
                         {MAX_CORNER_DIMS} dims"
                    );
                    continue;
                }
                let budget = (variant == BenchVariant::Naive)
                    .then_some(Duration::from_millis(args.naive_budget_ms));
                records.push(match kind {
                    ScalarKind::Float64 => bench::measure::<f64>(dims, variant, args.iters, budget),
                    ScalarKind::Int64 => bench::measure::<i64>(dims, variant, args.iters, budget),
                });
            }
        }
    }
    print!("{}", bench::to_csv(&records));
    Ok(())
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, value_enum, default_value_t = Layout::Fig3)]
    layout: Layout,
    /// Independent workloads; each re-seeds the generator.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Neighbor counts to plan for (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = [1u64, 5],
          value_parser = clap::value_parser!(u64).range(1..))]
    k: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dimensionality of generated workloads.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    dims: u64,
    /// Partitions per generated workload.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    partitions: u64,
    /// Points per partition, count or inclusive range.
    #[arg(long, default_value = "50..200", value_parser = parse_points)]
    points: (u64, u64),
    #[arg(long, value_enum, default_value_t = ScalarKind::Float64)]
    scalar: ScalarKind,
}

fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let mut out = String::from("layout,k,trial,method,partitions_loaded\n");
    for trial in 0..args.trials {
        let spec = GeneratorSpec {
            name: None,
            dims: args.dims as usize,
            partitions: args.partitions as usize,
            points: args.points,
            layout: args.layout,
            seed: args.seed.wrapping_add(trial),
            slack: 0.0,
        };
        match args.scalar {
            ScalarKind::Float64 => compare_trial::<f64>(&spec, &args.k, trial, &mut out)?,
            ScalarKind::Int64 => compare_trial::<i64>(&spec, &args.k, trial, &mut out)?,
        }
    }
    print!("{out}");
    Ok(())
}

/// One generated workload: the first partition is the origin, the rest are
/// candidates; count the partitions each method's plan loads.
fn compare_trial<S: Scalar>(
    spec: &GeneratorSpec,
    ks: &[u64],
    trial: u64,
    out: &mut String,
) -> Result<()> {
    let (manifest, _) = generate_synthetic::<S>(spec)?;
    let metas = manifest.partition_metas();
    let (origin, candidates) =
        metas.split_first().expect("generator yields at least one partition");
    for &k in ks {
        let baseline = baseline_prune_plan(origin, candidates, k)?;
        let dag_plan = ProximityDag::build(origin, candidates)?.prune_plan(k);
        for (method, plan) in [("baseline", &baseline), ("apc-dag", &dag_plan)] {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                spec.layout,
                k,
                trial,
                method,
                plan.required.len()
            ));
        }
    }
    Ok(())
}
