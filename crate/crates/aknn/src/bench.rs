//! Microbenchmark harness for the two proximity-test kernels.
//!
//! Inputs are a fixed set of random box triples, pinned per (scalar kind,
//! dimensionality) so both kernels time identical work. A warm-up pass over
//! the whole input set runs before the clock starts.

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::Aabb;
use crate::pruning::{all_points_closer_naive, all_points_closer_opt};
use crate::scalar::{Scalar, ScalarKind};

/// Which kernel to time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BenchVariant {
    /// Corner sweep, cost grows as `2^dims`.
    Naive,
    /// Per-dimension margin accumulation, linear in `dims`.
    Optimized,
}

impl std::fmt::Display for BenchVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BenchVariant::Naive => "naive",
            BenchVariant::Optimized => "optimized",
        })
    }
}

/// One timing result. `iterations` is the number of calls actually timed,
/// which can fall short of the request when a budget stops the corner sweep.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub scalar: ScalarKind,
    pub dims: usize,
    pub variant: BenchVariant,
    pub iterations: u64,
    pub ns_per_call: f64,
}

const INPUT_TRIPLES: usize = 256;

/// The pinned input set for a (scalar, dims) pair.
///
/// Half the triples pass the test (the basis box sits far beyond the other
/// two), half are independent random boxes and almost always fail. The
/// passing half matters: the corner sweep exits at the first failing
/// corner, so an all-failing input set would hide its exponential cost.
fn random_triples<S: Scalar>(dims: usize) -> Vec<[Aabb<S>; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(7 * dims as u64 + S::KIND as u64);
    let random_box = |rng: &mut ChaCha8Rng| {
        let mut lo = Vec::with_capacity(dims);
        let mut hi = Vec::with_capacity(dims);
        for _ in 0..dims {
            let a: f64 = rng.gen_range(0.0..1000.0);
            let b: f64 = rng.gen_range(0.0..1000.0);
            lo.push(S::from_f64(a.min(b)));
            hi.push(S::from_f64(a.max(b)));
        }
        Aabb::new(lo, hi)
    };
    let far_box = |of: &Aabb<S>| {
        let lo = of.lo().iter().map(|v| S::from_f64(v.to_f64() + 1.0e6)).collect();
        let hi = of.hi().iter().map(|v| S::from_f64(v.to_f64() + 1.0e6)).collect();
        Aabb::new(lo, hi)
    };
    (0..INPUT_TRIPLES)
        .map(|i| {
            let origin = random_box(&mut rng);
            let eval = random_box(&mut rng);
            let basis = random_box(&mut rng);
            if i % 2 == 0 {
                [origin, eval, basis]
            } else {
                let basis = far_box(&basis);
                [origin, eval, basis]
            }
        })
        .collect()
}

/// Cycle the input set until `iterations` calls have been timed, checking
/// the budget between passes. Returns (calls timed, mean ns per call).
fn time_loop<S: Scalar>(
    triples: &[[Aabb<S>; 3]],
    iterations: u64,
    budget: Option<Duration>,
    mut f: impl FnMut(&Aabb<S>, &Aabb<S>, &Aabb<S>) -> bool,
) -> (u64, f64) {
    let mut hits = 0u64;
    for [o, e, b] in triples {
        hits += f(black_box(o), black_box(e), black_box(b)) as u64;
    }
    black_box(hits);

    let mut calls = 0u64;
    let mut hits = 0u64;
    let start = Instant::now();
    loop {
        for [o, e, b] in triples {
            hits += f(black_box(o), black_box(e), black_box(b)) as u64;
        }
        calls += triples.len() as u64;
        if calls >= iterations {
            break;
        }
        if budget.is_some_and(|limit| start.elapsed() >= limit) {
            break;
        }
    }
    let elapsed = start.elapsed();
    black_box(hits);
    (calls, elapsed.as_nanos() as f64 / calls as f64)
}

/// Time one kernel at one dimensionality.
///
/// The optimized kernel always runs the full iteration count. The naive
/// kernel honors `budget`: once it elapses, the measurement ends at the next
/// pass boundary, keeping high-dimensional sweeps affordable.
pub fn measure<S: Scalar>(
    dims: usize,
    variant: BenchVariant,
    iterations: u64,
    budget: Option<Duration>,
) -> BenchRecord {
    let triples = random_triples::<S>(dims);
    let (calls, ns_per_call) = match variant {
        BenchVariant::Naive => time_loop(&triples, iterations, budget, |o, e, b| {
            all_points_closer_naive(o, e, b).closer()
        }),
        BenchVariant::Optimized => time_loop(&triples, iterations, None, all_points_closer_opt),
    };
    BenchRecord { scalar: S::KIND, dims, variant, iterations: calls, ns_per_call }
}

/// Render records as CSV with a header line.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("scalar,dims,variant,ns_per_call\n");
    for r in records {
        out.push_str(&format!("{},{},{},{:.1}\n", r.scalar, r.dims, r.variant, r.ns_per_call));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_set_is_pinned() {
        assert_eq!(random_triples::<f64>(4), random_triples::<f64>(4));
        assert_ne!(random_triples::<f64>(4), random_triples::<f64>(5));
        assert_eq!(random_triples::<i64>(3), random_triples::<i64>(3));
    }

    #[test]
    fn optimized_runs_the_requested_iterations() {
        let r = measure::<f64>(3, BenchVariant::Optimized, 512, None);
        assert!(r.iterations >= 512);
        assert!(r.ns_per_call > 0.0);
        assert_eq!(r.scalar, ScalarKind::Float64);
    }

    #[test]
    fn budget_stops_the_corner_sweep_early() {
        let r = measure::<f64>(
            12,
            BenchVariant::Naive,
            u64::MAX / 2,
            Some(Duration::from_millis(5)),
        );
        assert!(r.iterations < u64::MAX / 2);
        assert!(r.iterations >= INPUT_TRIPLES as u64);
    }

    #[test]
    fn csv_has_header_and_one_line_per_record() {
        let records = vec![
            measure::<f64>(2, BenchVariant::Optimized, 256, None),
            measure::<i64>(2, BenchVariant::Optimized, 256, None),
        ];
        let csv = to_csv(&records);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "scalar,dims,variant,ns_per_call");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("float64,2,optimized,"));
        assert!(lines[2].starts_with("int64,2,optimized,"));
    }
}
