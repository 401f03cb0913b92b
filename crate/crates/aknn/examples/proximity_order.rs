//! Planning with the proximity partial order: build the per-origin DAG over
//! candidate partitions, walk it in topological order, and prune every
//! partition whose provably-closer set already holds `k` points. The
//! farthest-distance baseline plans the same question for contrast.
//!
//! Run with `cargo run --example proximity_order`.

use aknn::{baseline_prune_plan, Aabb, PartitionMeta, ProximityDag};

fn meta(id: &str, lo: [f64; 2], hi: [f64; 2], count: u64) -> PartitionMeta<f64> {
    PartitionMeta { id: id.to_string(), bounds: Aabb::new(lo.to_vec(), hi.to_vec()), count }
}

fn main() -> aknn::Result<()> {
    // The occlusion scenario: a candidate behind the origin, one in front,
    // and one farther out in front. Only the front pair is ordered.
    let origin = meta("O", [-3.0, 0.0], [0.0, 3.0], 1);
    let candidates = vec![
        meta("P1", [-5.0, 2.0], [-4.0, 3.0], 1),
        meta("P2", [1.0, 2.0], [2.0, 3.0], 1),
        meta("P3", [4.0, 0.0], [5.0, 2.0], 1),
    ];

    let dag = ProximityDag::build(&origin, &candidates)?;
    println!("edges (closer -> farther, w.r.t. {}):", dag.origin());
    for (e, b) in dag.edge_ids() {
        println!("  {e} -> {b}");
    }
    println!("topological order: {:?}", dag.topological_order()?);

    // k = 1: P2 alone guarantees a nearer neighbor for every origin point,
    // so P3 never needs to be read.
    let plan = dag.prune_plan(1);
    println!("k=1 required {:?}, pruned {:?}", plan.required, plan.pruned_ids());

    // k = 2: one provably-closer point is no longer enough.
    let plan = dag.prune_plan(2);
    println!("k=2 required {:?}, pruned {:?}", plan.required, plan.pruned_ids());

    // The baseline bounds the distance at which k points are guaranteed and
    // prunes only what starts beyond it. Here the far partition begins at
    // squared distance 16, under the guarantee of 34, so it survives.
    let plan = baseline_prune_plan(&origin, &candidates, 1)?;
    println!("baseline k=1 required {:?}, pruned {:?}", plan.required, plan.pruned_ids());

    // Counts accumulate through the order: with 3 points behind B, partition
    // C is prunable at k=3 even though no single partition covers it.
    let origin = meta("O", [0.0, 0.0], [1.0, 1.0], 0);
    let chain = vec![
        meta("A", [3.0, 0.0], [4.0, 1.0], 2),
        meta("B", [8.0, 0.0], [9.0, 1.0], 1),
        meta("C", [14.0, 0.0], [15.0, 1.0], 5),
    ];
    let dag = ProximityDag::build(&origin, &chain)?;
    for k in [3, 4] {
        let plan = dag.prune_plan(k);
        println!("chain k={k}: required {:?}, pruned {:?}", plan.required, plan.pruned_ids());
        for pruned in &plan.pruned {
            println!("  {} pruned because {:?}", pruned.id, pruned.reason);
        }
    }
    Ok(())
}
