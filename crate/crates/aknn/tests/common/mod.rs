//! Shared generators for the integration test targets.
// Each target uses a subset of these.
#![allow(dead_code)]

use aknn::{Aabb, PartitionMeta, Scalar};
use rand::Rng;

/// Random box with endpoints drawn uniformly from `[lo, hi]` per dimension.
pub fn random_box<S: Scalar, R: Rng>(rng: &mut R, dims: usize, lo: f64, hi: f64) -> Aabb<S> {
    let (lo, hi) = (S::from_f64(lo), S::from_f64(hi));
    let mut a = Vec::with_capacity(dims);
    let mut b = Vec::with_capacity(dims);
    for _ in 0..dims {
        let x = S::sample(rng, lo, hi);
        let y = S::sample(rng, lo, hi);
        if x <= y {
            a.push(x);
            b.push(y);
        } else {
            a.push(y);
            b.push(x);
        }
    }
    Aabb::new(a, b)
}

/// Uniform point inside `bounds`, endpoints included.
pub fn random_point_in<S: Scalar, R: Rng>(rng: &mut R, bounds: &Aabb<S>) -> Vec<S> {
    (0..bounds.dims())
        .map(|d| {
            let iv = bounds.interval(d);
            S::sample(rng, iv.lo, iv.hi)
        })
        .collect()
}

/// Translate a box by `offset` in every dimension.
pub fn shifted<S: Scalar>(bounds: &Aabb<S>, offset: f64) -> Aabb<S> {
    let lo = bounds.lo().iter().map(|v| S::from_f64(v.to_f64() + offset)).collect();
    let hi = bounds.hi().iter().map(|v| S::from_f64(v.to_f64() + offset)).collect();
    Aabb::new(lo, hi)
}

/// Random origin plus `n` candidate partitions sharing a coordinate range.
pub fn random_ensemble<S: Scalar, R: Rng>(
    rng: &mut R,
    dims: usize,
    n: usize,
    max_count: u64,
) -> (PartitionMeta<S>, Vec<PartitionMeta<S>>) {
    let origin = PartitionMeta {
        id: "O".to_string(),
        bounds: random_box(rng, dims, -100.0, 100.0),
        count: rng.gen_range(0..=max_count),
    };
    let candidates = (0..n)
        .map(|i| PartitionMeta {
            id: format!("P{i:02}"),
            bounds: random_box(rng, dims, -100.0, 100.0),
            count: rng.gen_range(0..=max_count),
        })
        .collect();
    (origin, candidates)
}

/// The canonical occlusion scenario as bare metadata, one point per box.
pub fn occlusion_metas() -> (PartitionMeta<f64>, Vec<PartitionMeta<f64>>) {
    let meta = |id: &str, lo: [f64; 2], hi: [f64; 2]| PartitionMeta {
        id: id.to_string(),
        bounds: Aabb::new(lo.to_vec(), hi.to_vec()),
        count: 1,
    };
    (
        meta("O", [-3.0, 0.0], [0.0, 3.0]),
        vec![
            meta("P1", [-5.0, 2.0], [-4.0, 3.0]),
            meta("P2", [1.0, 2.0], [2.0, 3.0]),
            meta("P3", [4.0, 0.0], [5.0, 2.0]),
        ],
    )
}
