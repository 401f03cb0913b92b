//! Planning which candidate partitions a query partition must load.
//!
//! Per origin partition, the proximity test over bounds induces a strict
//! partial order on candidate partitions (irreflexive and transitive by
//! construction of the test). The planner materializes it as a DAG, counts
//! how many points live in partitions provably closer than each candidate,
//! and prunes candidates whose closer set already saturates `k`. A simpler
//! baseline planner orders candidates by their farthest-possible distance
//! and keeps everything that could undercut the distance that saturates `k`;
//! anything the baseline prunes, the DAG planner also prunes.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Aabb, SqDist};
use crate::pruning::all_points_closer_opt;
use crate::scalar::Scalar;

/// What the planner knows about a partition: identity, declared bounds, and
/// how many points it stores. Bounds must contain every stored point but
/// need not be minimal; empty partitions still carry bounds and participate
/// in the order, they just contribute no points toward saturation.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionMeta<S: Scalar> {
    pub id: String,
    pub bounds: Aabb<S>,
    pub count: u64,
}

/// Why a candidate partition was pruned.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PruneReason<S: Scalar> {
    /// Partitions provably closer under the proximity order hold this many
    /// points, at least `k`.
    CloserSet { points: u64 },
    /// The candidate's nearest possible point lies strictly beyond the
    /// distance that already saturates `k` in the baseline sweep.
    BeyondPruneDist {
        bmin_dist_sq: SqDist<S>,
        prune_dist_sq: SqDist<S>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrunedPartition<S: Scalar> {
    pub id: String,
    pub reason: PruneReason<S>,
}

/// Which candidate partitions a join over one origin partition must load
/// (`required`, in scan order) and which it may skip (`pruned`, sorted by
/// id). Together they cover every candidate exactly once.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrunePlan<S: Scalar> {
    pub origin: String,
    pub k: u64,
    pub required: Vec<String>,
    pub pruned: Vec<PrunedPartition<S>>,
}

impl<S: Scalar> PrunePlan<S> {
    pub fn pruned_ids(&self) -> Vec<&str> {
        self.pruned.iter().map(|p| p.id.as_str()).collect()
    }
}

#[derive(Debug, Clone)]
struct DagNode<S: Scalar> {
    id: String,
    count: u64,
    /// Nearest possible squared distance from the origin bounds, the primary
    /// tie-breaker for deterministic orderings.
    bmin_dist_sq: SqDist<S>,
}

/// The proximity partial order over one origin partition's candidates,
/// closed under transitivity.
#[derive(Debug, Clone)]
pub struct ProximityDag<S: Scalar> {
    origin: String,
    nodes: Vec<DagNode<S>>,
    /// Direct edges (eval index, basis index): eval provably closer.
    edges: Vec<(usize, usize)>,
    /// Transitive reachability as bit rows: `reach[a]` has bit `b` set when
    /// an edge chain orders `a` strictly before `b`. The pair test is
    /// transitive, so with exact scalars this equals the direct edge set;
    /// closing explicitly keeps float evaluations consistent.
    reach: Vec<Vec<u64>>,
}

fn validate_candidates<S: Scalar>(
    origin: &PartitionMeta<S>,
    candidates: &[PartitionMeta<S>],
) -> Result<()> {
    let dims = origin.bounds.dims();
    let mut ids: Vec<&str> = candidates.iter().map(|c| c.id.as_str()).collect();
    ids.sort_unstable();
    for pair in ids.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::DuplicatePartitionId(pair[0].to_string()));
        }
    }
    for c in candidates {
        if c.bounds.dims() != dims {
            return Err(Error::DimensionMismatch { expected: dims, actual: c.bounds.dims() });
        }
    }
    Ok(())
}

impl<S: Scalar> ProximityDag<S> {
    /// Evaluate the proximity test over every ordered candidate pair and
    /// close the result transitively.
    ///
    /// Candidates must have distinct ids and the origin's dimension count.
    pub fn build(origin: &PartitionMeta<S>, candidates: &[PartitionMeta<S>]) -> Result<Self> {
        validate_candidates(origin, candidates)?;
        let n = candidates.len();
        let nodes = candidates
            .iter()
            .map(|c| DagNode {
                id: c.id.clone(),
                count: c.count,
                bmin_dist_sq: origin.bounds.bmin_dist_sq(&c.bounds),
            })
            .collect();
        let mut edges = Vec::new();
        let words = n.div_ceil(64);
        let mut direct = vec![vec![0u64; words]; n];
        for e in 0..n {
            for b in 0..n {
                if e != b
                    && all_points_closer_opt(&origin.bounds, &candidates[e].bounds, &candidates[b].bounds)
                {
                    edges.push((e, b));
                    direct[e][b / 64] |= 1 << (b % 64);
                }
            }
        }
        let reach = transitive_closure(direct);
        Ok(ProximityDag { origin: origin.id.clone(), nodes, edges, reach })
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.id.as_str())
    }

    /// Direct edges as (eval id, basis id) pairs, eval provably closer.
    pub fn edge_ids(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(e, b)| (self.nodes[e].id.as_str(), self.nodes[b].id.as_str()))
            .collect()
    }

    fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Every node in an order where each edge source precedes its target.
    /// Among simultaneously ready nodes, the one nearest the origin bounds
    /// goes first (ties by id), so the order is deterministic.
    ///
    /// The proximity relation is strict, so a cycle is impossible unless
    /// float evaluations of the pair test contradicted each other; that
    /// surfaces as [`Error::CycleDetected`].
    pub fn topological_order(&self) -> Result<Vec<String>> {
        let n = self.nodes.len();
        // Priority rank by (bmin to origin, id); keys are finite by Aabb
        // construction, so the comparison is total.
        let mut rank_order: Vec<usize> = (0..n).collect();
        rank_order.sort_by(|&a, &b| {
            self.nodes[a]
                .bmin_dist_sq
                .partial_cmp(&self.nodes[b].bmin_dist_sq)
                .expect("finite sort key")
                .then_with(|| self.nodes[a].id.cmp(&self.nodes[b].id))
        });
        let mut rank = vec![0usize; n];
        for (r, &idx) in rank_order.iter().enumerate() {
            rank[idx] = r;
        }

        let mut indegree = vec![0usize; n];
        let mut adj = vec![Vec::new(); n];
        for &(e, b) in &self.edges {
            indegree[b] += 1;
            adj[e].push(b);
        }
        let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
            .filter(|&i| indegree[i] == 0)
            .map(|i| Reverse((rank[i], i)))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, i))) = ready.pop() {
            order.push(self.nodes[i].id.clone());
            for &b in &adj[i] {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    ready.push(Reverse((rank[b], b)));
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).expect("cycle leaves a blocked node");
            return Err(Error::CycleDetected(self.nodes[stuck].id.clone()));
        }
        Ok(order)
    }

    /// Prune exactly the candidates whose provably-closer partitions hold at
    /// least `k` points; everything else is required, in topological order.
    ///
    /// Panics if the DAG contains a cycle (see [`Self::topological_order`]).
    pub fn prune_plan(&self, k: u64) -> PrunePlan<S> {
        let n = self.nodes.len();
        let mut closer_points = vec![0u64; n];
        for a in 0..n {
            for b in 0..n {
                if a != b && self.reaches(a, b) {
                    closer_points[b] += self.nodes[a].count;
                }
            }
        }
        let order = self.topological_order().expect("proximity order must be acyclic");
        let pruned_idx: Vec<bool> = (0..n).map(|i| k > 0 && closer_points[i] >= k).collect();
        let by_id = |id: &str| self.nodes.iter().position(|node| node.id == id).expect("known id");
        let required = order.iter().filter(|id| !pruned_idx[by_id(id)]).cloned().collect();
        let mut pruned: Vec<PrunedPartition<S>> = (0..n)
            .filter(|&i| pruned_idx[i])
            .map(|i| PrunedPartition {
                id: self.nodes[i].id.clone(),
                reason: PruneReason::CloserSet { points: closer_points[i] },
            })
            .collect();
        pruned.sort_by(|a, b| a.id.cmp(&b.id));
        PrunePlan { origin: self.origin.clone(), k, required, pruned }
    }

    #[cfg(test)]
    pub(crate) fn raw_for_tests(
        origin: String,
        nodes: Vec<(String, u64, SqDist<S>)>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        let n = nodes.len();
        let words = n.div_ceil(64);
        let mut direct = vec![vec![0u64; words]; n];
        for &(e, b) in &edges {
            direct[e][b / 64] |= 1 << (b % 64);
        }
        let reach = transitive_closure(direct);
        ProximityDag {
            origin,
            nodes: nodes
                .into_iter()
                .map(|(id, count, bmin_dist_sq)| DagNode { id, count, bmin_dist_sq })
                .collect(),
            edges,
            reach,
        }
    }
}

/// Bit-row reachability closure; row `a` accumulates the rows of everything
/// `a` points at until a fixpoint.
fn transitive_closure(direct: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let n = direct.len();
    let mut reach = direct;
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            for b in 0..n {
                if reach[a][b / 64] >> (b % 64) & 1 == 1 {
                    for w in 0..reach[a].len() {
                        let add = reach[b][w] & !reach[a][w];
                        if add != 0 {
                            reach[a][w] |= add;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    reach
}

/// Baseline planner: sort candidates by farthest possible distance from the
/// origin bounds, accumulate their counts until `k` points are guaranteed,
/// and prune every candidate whose nearest possible distance exceeds the
/// saturating partition's farthest distance. If the candidates never hold
/// `k` points in total, nothing can be pruned.
pub fn baseline_prune_plan<S: Scalar>(
    origin: &PartitionMeta<S>,
    candidates: &[PartitionMeta<S>],
    k: u64,
) -> Result<PrunePlan<S>> {
    validate_candidates(origin, candidates)?;
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    let bmax: Vec<SqDist<S>> =
        candidates.iter().map(|c| origin.bounds.bmax_dist_sq(&c.bounds)).collect();
    let bmin: Vec<SqDist<S>> =
        candidates.iter().map(|c| origin.bounds.bmin_dist_sq(&c.bounds)).collect();
    order.sort_by(|&a, &b| {
        bmax[a]
            .partial_cmp(&bmax[b])
            .expect("finite sort key")
            .then_with(|| candidates[a].id.cmp(&candidates[b].id))
    });

    let prune_dist_sq = baseline_prune_dist_sq(origin, candidates, k);

    let mut required = Vec::new();
    let mut pruned = Vec::new();
    for &i in &order {
        match prune_dist_sq {
            Some(limit) if bmin[i] > limit => pruned.push(PrunedPartition {
                id: candidates[i].id.clone(),
                reason: PruneReason::BeyondPruneDist { bmin_dist_sq: bmin[i], prune_dist_sq: limit },
            }),
            _ => required.push(candidates[i].id.clone()),
        }
    }
    pruned.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(PrunePlan { origin: origin.id.clone(), k, required, pruned })
}

/// The baseline sweep's saturating distance: the farthest possible distance
/// of the partition at which accumulated counts first reach `k`. `None` when
/// the candidates hold fewer than `k` points in total (nothing prunable).
///
/// Panics on mismatched dimensionality; validate via the planner first.
pub fn baseline_prune_dist_sq<S: Scalar>(
    origin: &PartitionMeta<S>,
    candidates: &[PartitionMeta<S>],
    k: u64,
) -> Option<SqDist<S>> {
    if k == 0 {
        return None;
    }
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    let bmax: Vec<SqDist<S>> =
        candidates.iter().map(|c| origin.bounds.bmax_dist_sq(&c.bounds)).collect();
    order.sort_by(|&a, &b| {
        bmax[a]
            .partial_cmp(&bmax[b])
            .expect("finite sort key")
            .then_with(|| candidates[a].id.cmp(&candidates[b].id))
    });
    let mut covered = 0u64;
    for &i in &order {
        covered += candidates[i].count;
        if covered >= k {
            return Some(bmax[i]);
        }
    }
    None
}
