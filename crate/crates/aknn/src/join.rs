//! Exact all-k-nearest-neighbor join between two partitioned datasets.
//!
//! For every point of the origin dataset, find its `k` nearest candidate
//! points. Planning happens per origin partition: the chosen method decides
//! which candidate partitions to load, then loaded points are scanned
//! exhaustively. Pruning only ever removes partitions that provably hold no
//! result point, so all methods must produce byte-identical output; `verify`
//! and the test suites hold them to that.
//!
//! Ties at equal distance break deterministically by candidate partition id,
//! then row index. Results are emitted in ascending (origin partition id,
//! row) order regardless of scheduling.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dist_sq, SqDist};
use crate::ordering::{baseline_prune_plan, PrunePlan, ProximityDag};
use crate::scalar::Scalar;
use crate::storage::{DatasetHandle, PointSet};

/// Partition-pruning strategy for the join and the plan commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum JoinMethod {
    /// Load every candidate partition.
    #[value(name = "none")]
    #[serde(rename = "none")]
    None,
    /// Farthest-distance sweep: keep candidates that could undercut the
    /// distance at which `k` points are guaranteed.
    Baseline,
    /// Proximity partial order with closer-set saturation.
    ApcDag,
}

impl std::fmt::Display for JoinMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            JoinMethod::None => "none",
            JoinMethod::Baseline => "baseline",
            JoinMethod::ApcDag => "apc-dag",
        })
    }
}

/// One neighbor of one origin point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Neighbor<S: Scalar> {
    pub partition: String,
    pub row: u64,
    pub dist_sq: SqDist<S>,
}

/// The `k` nearest candidates of one origin point, ascending by distance
/// (ties by candidate partition id, then row). Holds fewer than `k` entries
/// only when the candidate dataset holds fewer than `k` points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeighborList<S: Scalar> {
    pub origin_partition: String,
    pub row: u64,
    pub neighbors: Vec<Neighbor<S>>,
}

/// Work accounting for one origin partition. `pruned + loaded == candidates`
/// always; an empty origin partition is skipped entirely, which counts as
/// pruning every candidate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OriginReport {
    pub origin: String,
    pub candidates: usize,
    pub pruned: usize,
    pub loaded: usize,
    pub loaded_partitions: Vec<String>,
    pub points_compared: u64,
}

/// Join-wide accounting: per-origin work plus wall time per stage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JoinReport {
    pub method: JoinMethod,
    pub k: u64,
    pub origins: Vec<OriginReport>,
    pub plan_seconds: f64,
    pub load_seconds: f64,
    pub scan_seconds: f64,
}

impl JoinReport {
    pub fn origin(&self, id: &str) -> Option<&OriginReport> {
        self.origins.iter().find(|o| o.origin == id)
    }
}

/// Serialize neighbor lists as newline-delimited JSON, one record per origin
/// point. This is the byte representation `verify` compares.
pub fn neighbor_lists_to_ndjson<S: Scalar>(lists: &[NeighborList<S>]) -> Vec<u8> {
    let mut out = Vec::new();
    for list in lists {
        serde_json::to_writer(&mut out, list).expect("neighbor list serializes");
        out.push(b'\n');
    }
    out
}

/// Max-heap entry keyed by (distance, candidate partition rank, row): the
/// root is the current worst neighbor. Ranks index the id-sorted candidate
/// table, so popping order realizes the documented tie rule no matter which
/// partitions were loaded or in what order they were scanned.
struct HeapEntry<A> {
    dist: A,
    rank: u32,
    row: u64,
}

impl<A: PartialOrd> HeapEntry<A> {
    fn key_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dist
            .partial_cmp(&other.dist)
            .expect("finite distance")
            .then_with(|| self.rank.cmp(&other.rank))
            .then_with(|| self.row.cmp(&other.row))
    }
}

impl<A: PartialOrd> PartialEq for HeapEntry<A> {
    fn eq(&self, other: &Self) -> bool {
        self.key_cmp(other).is_eq()
    }
}
impl<A: PartialOrd> Eq for HeapEntry<A> {}
impl<A: PartialOrd> PartialOrd for HeapEntry<A> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.key_cmp(other))
    }
}
impl<A: PartialOrd> Ord for HeapEntry<A> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key_cmp(other)
    }
}

/// k-nearest over loaded candidate blocks for one query point. `blocks`
/// carries (global id-order rank, points).
fn knn_point<S: Scalar>(
    query: &[S],
    blocks: &[(u32, &PointSet<S>)],
    k: usize,
) -> Vec<HeapEntry<SqDist<S>>> {
    let mut heap: std::collections::BinaryHeap<HeapEntry<SqDist<S>>> =
        std::collections::BinaryHeap::with_capacity(k + 1);
    for &(rank, points) in blocks {
        for (row, p) in points.iter().enumerate() {
            let entry = HeapEntry { dist: dist_sq(query, p), rank, row: row as u64 };
            if heap.len() < k {
                heap.push(entry);
            } else if let Some(worst) = heap.peek() {
                if entry.key_cmp(worst).is_lt() {
                    heap.pop();
                    heap.push(entry);
                }
            }
        }
    }
    heap.into_sorted_vec()
}

fn plan_for<S: Scalar>(
    method: JoinMethod,
    origin: &crate::ordering::PartitionMeta<S>,
    candidates: &[crate::ordering::PartitionMeta<S>],
    k: u64,
) -> Result<PrunePlan<S>> {
    match method {
        JoinMethod::None => {
            let mut required: Vec<String> = candidates.iter().map(|c| c.id.clone()).collect();
            required.sort();
            Ok(PrunePlan { origin: origin.id.clone(), k, required, pruned: Vec::new() })
        }
        JoinMethod::Baseline => baseline_prune_plan(origin, candidates, k),
        JoinMethod::ApcDag => Ok(ProximityDag::build(origin, candidates)?.prune_plan(k)),
    }
}

/// Run the exact join. Returns the neighbor lists in deterministic order and
/// the work report. Errors on mismatched dimensionality; an empty candidate
/// dataset yields empty neighbor lists.
pub fn aknn_join<S: Scalar>(
    origin: &DatasetHandle<S>,
    candidates: &DatasetHandle<S>,
    k: u64,
    method: JoinMethod,
) -> Result<(Vec<NeighborList<S>>, JoinReport)> {
    if origin.manifest.dims != candidates.manifest.dims {
        return Err(Error::DatasetMismatch(format!(
            "origin has {} dims, candidates {}",
            origin.manifest.dims, candidates.manifest.dims
        )));
    }
    if k == 0 {
        return Err(Error::DatasetMismatch("k must be at least 1".into()));
    }

    let cand_metas = candidates.manifest.partition_metas();
    // Global tie-break ranks: candidate partitions in id order.
    let rank_of: Vec<(String, u32)> = {
        let mut ids: Vec<&str> = cand_metas.iter().map(|m| m.id.as_str()).collect();
        ids.sort_unstable();
        ids.iter().enumerate().map(|(r, id)| (id.to_string(), r as u32)).collect()
    };
    let rank = |id: &str| -> u32 {
        rank_of[rank_of.binary_search_by(|(i, _)| i.as_str().cmp(id)).expect("known id")].1
    };

    let mut origin_ids: Vec<String> =
        origin.manifest.partitions.iter().map(|p| p.id.clone()).collect();
    origin_ids.sort();

    struct OriginOutcome<S: Scalar> {
        lists: Vec<NeighborList<S>>,
        report: OriginReport,
        plan_seconds: f64,
        load_seconds: f64,
        scan_seconds: f64,
    }

    let outcomes: Result<Vec<OriginOutcome<S>>> = origin_ids
        .par_iter()
        .map(|origin_id| {
            let origin_meta = origin.manifest.partition(origin_id)?.meta();
            if origin_meta.count == 0 {
                return Ok(OriginOutcome {
                    lists: Vec::new(),
                    report: OriginReport {
                        origin: origin_id.clone(),
                        candidates: cand_metas.len(),
                        pruned: cand_metas.len(),
                        loaded: 0,
                        loaded_partitions: Vec::new(),
                        points_compared: 0,
                    },
                    plan_seconds: 0.0,
                    load_seconds: 0.0,
                    scan_seconds: 0.0,
                });
            }

            let t0 = Instant::now();
            let plan = plan_for(method, &origin_meta, &cand_metas, k)?;
            let plan_seconds = t0.elapsed().as_secs_f64();

            let t1 = Instant::now();
            let mut loaded: Vec<(String, u32, PointSet<S>)> = Vec::with_capacity(plan.required.len());
            for id in &plan.required {
                loaded.push((id.clone(), rank(id), candidates.read_partition(id, false)?));
            }
            let load_seconds = t1.elapsed().as_secs_f64();

            let t2 = Instant::now();
            let blocks: Vec<(u32, &PointSet<S>)> =
                loaded.iter().map(|(_, r, pts)| (*r, pts)).collect();
            let loaded_points: u64 = loaded.iter().map(|(.., pts)| pts.len() as u64).sum();
            let origin_points = origin.read_partition(origin_id, false)?;
            let mut lists = Vec::with_capacity(origin_points.len());
            for (row, query) in origin_points.iter().enumerate() {
                let neighbors = knn_point(query, &blocks, k as usize)
                    .into_iter()
                    .map(|e| Neighbor {
                        partition: loaded
                            .iter()
                            .find(|(_, r, _)| *r == e.rank)
                            .expect("rank belongs to a loaded block")
                            .0
                            .clone(),
                        row: e.row,
                        dist_sq: e.dist,
                    })
                    .collect();
                lists.push(NeighborList {
                    origin_partition: origin_id.clone(),
                    row: row as u64,
                    neighbors,
                });
            }
            let scan_seconds = t2.elapsed().as_secs_f64();

            let mut loaded_partitions: Vec<String> = plan.required.clone();
            loaded_partitions.sort();
            Ok(OriginOutcome {
                lists,
                report: OriginReport {
                    origin: origin_id.clone(),
                    candidates: cand_metas.len(),
                    pruned: plan.pruned.len(),
                    loaded: plan.required.len(),
                    loaded_partitions,
                    points_compared: origin_points.len() as u64 * loaded_points,
                },
                plan_seconds,
                load_seconds,
                scan_seconds,
            })
        })
        .collect();
    let outcomes = outcomes?;

    let mut lists = Vec::new();
    let mut report = JoinReport {
        method,
        k,
        origins: Vec::with_capacity(outcomes.len()),
        plan_seconds: 0.0,
        load_seconds: 0.0,
        scan_seconds: 0.0,
    };
    for outcome in outcomes {
        lists.extend(outcome.lists);
        report.origins.push(outcome.report);
        report.plan_seconds += outcome.plan_seconds;
        report.load_seconds += outcome.load_seconds;
        report.scan_seconds += outcome.scan_seconds;
    }
    Ok((lists, report))
}

/// Fully materialized partition for the independent oracle.
#[derive(Debug, Clone)]
pub struct LoadedPartition<S: Scalar> {
    pub id: String,
    pub points: PointSet<S>,
}

/// Reference join: no planning, no heap. Every candidate distance is
/// computed, fully sorted under the documented tie rule, and truncated to
/// `k`. Quadratic and allocation-heavy on purpose; it exists to check
/// [`aknn_join`], not to be fast.
pub fn brute_force_oracle<S: Scalar>(
    origin: &[LoadedPartition<S>],
    candidates: &[LoadedPartition<S>],
    k: u64,
) -> Vec<NeighborList<S>> {
    let mut cands: Vec<&LoadedPartition<S>> = candidates.iter().collect();
    cands.sort_by(|a, b| a.id.cmp(&b.id));
    let mut origins: Vec<&LoadedPartition<S>> = origin.iter().collect();
    origins.sort_by(|a, b| a.id.cmp(&b.id));

    let mut out = Vec::new();
    for part in origins {
        for (row, query) in part.points.iter().enumerate() {
            let mut all: Vec<Neighbor<S>> = Vec::new();
            for cand in &cands {
                for (crow, p) in cand.points.iter().enumerate() {
                    all.push(Neighbor {
                        partition: cand.id.clone(),
                        row: crow as u64,
                        dist_sq: dist_sq(query, p),
                    });
                }
            }
            all.sort_by(|a, b| {
                a.dist_sq
                    .partial_cmp(&b.dist_sq)
                    .expect("finite distance")
                    .then_with(|| a.partition.cmp(&b.partition))
                    .then_with(|| a.row.cmp(&b.row))
            });
            all.truncate(k as usize);
            out.push(NeighborList {
                origin_partition: part.id.clone(),
                row: row as u64,
                neighbors: all,
            });
        }
    }
    out
}

/// Load every partition of a dataset, for feeding the oracle.
pub fn load_all<S: Scalar>(handle: &DatasetHandle<S>) -> Result<Vec<LoadedPartition<S>>> {
    handle
        .manifest
        .partitions
        .iter()
        .map(|p| {
            Ok(LoadedPartition { id: p.id.clone(), points: handle.read_partition(&p.id, false)? })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::storage::{generate_to_dir, GeneratorSpec, Layout};

    fn fig3_dataset(dir: &std::path::Path) -> DatasetHandle<f64> {
        let spec = GeneratorSpec {
            name: None,
            dims: 2,
            partitions: 4,
            points: (1, 1),
            layout: Layout::Fig3,
            seed: 0,
            slack: 0.0,
        };
        generate_to_dir::<f64>(&spec, dir).unwrap();
        DatasetHandle::open(dir).unwrap()
    }

    /// Write a dataset containing only the listed partitions of `src`.
    fn subset(
        src: &DatasetHandle<f64>,
        ids: &[&str],
        dir: &std::path::Path,
    ) -> DatasetHandle<f64> {
        let mut manifest = src.manifest.clone();
        manifest.partitions.retain(|p| ids.contains(&p.id.as_str()));
        manifest.name = format!("{}-subset", manifest.name);
        let blocks: Vec<PointSet<f64>> = manifest
            .partitions
            .iter()
            .map(|p| src.read_partition(&p.id, false).unwrap())
            .collect();
        crate::storage::write_dataset(dir, &manifest, &blocks).unwrap();
        DatasetHandle::open(dir).unwrap()
    }

    #[test]
    fn fixture_split_join_never_loads_the_occluded_partition() {
        let full_dir = tempfile::tempdir().unwrap();
        let full = fig3_dataset(full_dir.path());
        let origin_dir = tempfile::tempdir().unwrap();
        let cand_dir = tempfile::tempdir().unwrap();
        let origin = subset(&full, &["O"], origin_dir.path());
        let cands = subset(&full, &["P1", "P2", "P3"], cand_dir.path());

        let (lists, report) = aknn_join(&origin, &cands, 1, JoinMethod::ApcDag).unwrap();
        let o = report.origin("O").unwrap();
        assert_eq!(o.candidates, 3);
        assert_eq!(o.loaded_partitions, vec!["P1", "P2"]);
        assert_eq!(o.pruned, 1);

        // O's center is equidistant (squared distance 10) from the P1 and
        // P2 centers; the id tie-break picks P1.
        assert_eq!(lists.len(), 1);
        assert_eq!(lists[0].neighbors.len(), 1);
        assert_eq!(lists[0].neighbors[0].partition, "P1");
        assert_eq!(lists[0].neighbors[0].dist_sq, 10.0);

        let (unpruned, _) = aknn_join(&origin, &cands, 1, JoinMethod::None).unwrap();
        assert_eq!(neighbor_lists_to_ndjson(&lists), neighbor_lists_to_ndjson(&unpruned));
    }

    #[test]
    fn self_join_methods_agree_byte_for_byte() {
        let dir = tempfile::tempdir().unwrap();
        let ds = fig3_dataset(dir.path());
        let (none, _) = aknn_join(&ds, &ds, 1, JoinMethod::None).unwrap();
        let (baseline, _) = aknn_join(&ds, &ds, 1, JoinMethod::Baseline).unwrap();
        let (dag, _) = aknn_join(&ds, &ds, 1, JoinMethod::ApcDag).unwrap();
        let bytes = neighbor_lists_to_ndjson(&none);
        assert_eq!(bytes, neighbor_lists_to_ndjson(&baseline));
        assert_eq!(bytes, neighbor_lists_to_ndjson(&dag));
        // Self-join at k=1: each point is its own nearest neighbor.
        for list in &none {
            assert_eq!(list.neighbors[0].partition, list.origin_partition);
            assert_eq!(list.neighbors[0].dist_sq, 0.0);
        }
    }

    #[test]
    fn oracle_matches_join_on_a_random_instance() {
        let dir_o = tempfile::tempdir().unwrap();
        let dir_c = tempfile::tempdir().unwrap();
        let spec_o = GeneratorSpec {
            name: None,
            dims: 3,
            partitions: 2,
            points: (50, 100),
            layout: Layout::GaussianClusters,
            seed: 11,
            slack: 0.0,
        };
        let spec_c = GeneratorSpec {
            name: None,
            dims: 3,
            partitions: 10,
            points: (0, 50),
            layout: Layout::OverlappingRandomBoxes,
            seed: 12,
            slack: 0.0,
        };
        generate_to_dir::<f64>(&spec_o, dir_o.path()).unwrap();
        generate_to_dir::<f64>(&spec_c, dir_c.path()).unwrap();
        let origin = DatasetHandle::<f64>::open(dir_o.path()).unwrap();
        let cands = DatasetHandle::<f64>::open(dir_c.path()).unwrap();

        for k in [1, 5, 50] {
            let oracle =
                brute_force_oracle(&load_all(&origin).unwrap(), &load_all(&cands).unwrap(), k);
            for method in [JoinMethod::None, JoinMethod::Baseline, JoinMethod::ApcDag] {
                let (lists, report) = aknn_join(&origin, &cands, k, method).unwrap();
                assert_eq!(
                    neighbor_lists_to_ndjson(&lists),
                    neighbor_lists_to_ndjson(&oracle),
                    "method {method} k {k} diverged from oracle"
                );
                for o in &report.origins {
                    assert_eq!(o.pruned + o.loaded, o.candidates);
                }
            }
        }
    }

    #[test]
    fn duplicate_points_tie_break_by_partition_then_row() {
        let dir = tempfile::tempdir().unwrap();
        // Two partitions, both containing the same two points.
        let manifest = crate::storage::Manifest::<f64> {
            name: "ties".into(),
            dims: 1,
            scalar_kind: crate::scalar::ScalarKind::Float64,
            partitions: vec![
                crate::storage::ManifestPartition {
                    id: "B".into(),
                    path: "B.bin".into(),
                    count: 2,
                    lo: vec![1.0],
                    hi: vec![2.0],
                },
                crate::storage::ManifestPartition {
                    id: "A".into(),
                    path: "A.bin".into(),
                    count: 2,
                    lo: vec![1.0],
                    hi: vec![2.0],
                },
            ],
        };
        let block = PointSet::new(1, vec![1.0, 2.0]);
        crate::storage::write_dataset(dir.path(), &manifest, &[block.clone(), block]).unwrap();
        let ds = DatasetHandle::<f64>::open(dir.path()).unwrap();

        let (lists, _) = aknn_join(&ds, &ds, 3, JoinMethod::None).unwrap();
        // Origin partitions in id order: A rows first.
        assert_eq!(lists[0].origin_partition, "A");
        // Query A row 0 at 1.0: ties at distance 0 are (A,0) then (B,0).
        let n = &lists[0].neighbors;
        assert_eq!(
            (n[0].partition.as_str(), n[0].row, n[0].dist_sq),
            ("A", 0, 0.0)
        );
        assert_eq!(
            (n[1].partition.as_str(), n[1].row, n[1].dist_sq),
            ("B", 0, 0.0)
        );
        assert_eq!(n[2].dist_sq, 1.0);

        let oracle = brute_force_oracle(&load_all(&ds).unwrap(), &load_all(&ds).unwrap(), 3);
        assert_eq!(neighbor_lists_to_ndjson(&lists), neighbor_lists_to_ndjson(&oracle));
    }

    #[test]
    fn k_larger_than_candidate_points_returns_everything() {
        let dir = tempfile::tempdir().unwrap();
        let ds = fig3_dataset(dir.path());
        let (lists, _) = aknn_join(&ds, &ds, 100, JoinMethod::ApcDag).unwrap();
        for list in &lists {
            assert_eq!(list.neighbors.len(), 4, "min(k, total candidate points)");
        }
    }

    #[test]
    fn empty_origin_partition_is_skipped_with_report_entry() {
        let dir = tempfile::tempdir().unwrap();
        let spec = GeneratorSpec {
            name: None,
            dims: 2,
            partitions: 3,
            points: (0, 0),
            layout: Layout::UniformGridCells,
            seed: 1,
            slack: 0.0,
        };
        generate_to_dir::<f64>(&spec, dir.path()).unwrap();
        let empty = DatasetHandle::<f64>::open(dir.path()).unwrap();

        let target_dir = tempfile::tempdir().unwrap();
        let ds = fig3_dataset(target_dir.path());
        // Dims match (both 2-d); all origin partitions are empty.
        let (lists, report) = aknn_join(&empty, &ds, 1, JoinMethod::ApcDag).unwrap();
        assert!(lists.is_empty());
        assert_eq!(report.origins.len(), 3);
        for o in &report.origins {
            assert_eq!(o.loaded, 0);
            assert_eq!(o.pruned, o.candidates);
            assert_eq!(o.points_compared, 0);
        }
    }

    #[test]
    fn empty_candidate_dataset_yields_empty_neighbor_lists() {
        let origin_dir = tempfile::tempdir().unwrap();
        let origin = fig3_dataset(origin_dir.path());
        let cand_dir = tempfile::tempdir().unwrap();
        let spec = GeneratorSpec {
            name: None,
            dims: 2,
            partitions: 2,
            points: (0, 0),
            layout: Layout::UniformGridCells,
            seed: 1,
            slack: 0.0,
        };
        generate_to_dir::<f64>(&spec, cand_dir.path()).unwrap();
        let cands = DatasetHandle::<f64>::open(cand_dir.path()).unwrap();

        let (lists, _) = aknn_join(&origin, &cands, 3, JoinMethod::None).unwrap();
        assert_eq!(lists.len(), 4);
        for list in &lists {
            assert!(list.neighbors.is_empty());
        }
    }

    #[test]
    fn mismatched_dims_are_rejected() {
        let a_dir = tempfile::tempdir().unwrap();
        let a = fig3_dataset(a_dir.path());
        let b_dir = tempfile::tempdir().unwrap();
        let spec = GeneratorSpec {
            name: None,
            dims: 3,
            partitions: 2,
            points: (1, 1),
            layout: Layout::UniformGridCells,
            seed: 1,
            slack: 0.0,
        };
        generate_to_dir::<f64>(&spec, b_dir.path()).unwrap();
        let b = DatasetHandle::<f64>::open(b_dir.path()).unwrap();
        assert!(matches!(aknn_join(&a, &b, 1, JoinMethod::None), Err(Error::DatasetMismatch(_))));
    }

    #[test]
    fn int64_join_is_exact_and_method_independent() {
        let dir = tempfile::tempdir().unwrap();
        let spec = GeneratorSpec {
            name: None,
            dims: 2,
            partitions: 6,
            points: (5, 30),
            layout: Layout::UniformGridCells,
            seed: 21,
            slack: 0.0,
        };
        generate_to_dir::<i64>(&spec, dir.path()).unwrap();
        let ds = DatasetHandle::<i64>::open(dir.path()).unwrap();
        let (none, _) = aknn_join(&ds, &ds, 5, JoinMethod::None).unwrap();
        let (dag, _) = aknn_join(&ds, &ds, 5, JoinMethod::ApcDag).unwrap();
        let (baseline, _) = aknn_join(&ds, &ds, 5, JoinMethod::Baseline).unwrap();
        let bytes = neighbor_lists_to_ndjson(&none);
        assert_eq!(bytes, neighbor_lists_to_ndjson(&dag));
        assert_eq!(bytes, neighbor_lists_to_ndjson(&baseline));
        let oracle = brute_force_oracle(&load_all(&ds).unwrap(), &load_all(&ds).unwrap(), 5);
        assert_eq!(bytes, neighbor_lists_to_ndjson(&oracle));
    }
}
