//! Exact all-k-nearest-neighbor joins over partitioned datasets, with
//! bounds-only partition pruning.
//!
//! Given datasets split into partitions with axis-aligned bounding boxes, a
//! three-box proximity test ([`pruning`]) decides from bounds alone whether
//! every point of an origin partition is strictly closer to one candidate
//! partition than to another. The per-origin outcomes form a strict partial
//! order over candidates ([`ordering`]) from which whole partitions can be
//! skipped without changing a single neighbor: once the partitions provably
//! closer than a candidate already hold `k` points, that candidate cannot
//! contribute. The [`join`] executor runs the exact join either way and the
//! results must match byte for byte.
//!
//! Start with the runnable programs in `examples/`: each major capability
//! (distance kernels, the proximity test, order planning, dataset synthesis,
//! joins, microbenchmarks) has one. A thin `aknn` binary exposes the same
//! surface as subcommands for working with on-disk datasets.
//!
//! Coordinates are `f64` or `i64` ([`scalar::ScalarKind`]); all decisions
//! happen in squared-distance space, exactly and without tolerances, in a
//! widened accumulator (`i128` for integers).

pub mod bench;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod join;
pub mod ordering;
pub mod pruning;
pub mod scalar;
pub mod storage;

pub use bench::{measure, BenchRecord, BenchVariant};
pub use error::{Error, Result};
pub use geometry::{dist_sq, Aabb, Interval, SqDist};
pub use join::{
    aknn_join, brute_force_oracle, JoinMethod, JoinReport, Neighbor, NeighborList, OriginReport,
};
pub use ordering::{
    baseline_prune_dist_sq, baseline_prune_plan, PartitionMeta, PrunePlan, ProximityDag,
};
pub use pruning::{
    all_points_closer_naive, all_points_closer_opt, failing_corner, h_dim, PruneDecision, Witness,
};
pub use scalar::{Scalar, ScalarKind};
