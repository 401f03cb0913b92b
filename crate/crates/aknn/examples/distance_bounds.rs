//! Distance kernels over points and boxes: exact squared distances, the
//! nearest/farthest attainable distance between a point and a box, and the
//! box-to-box bounds that drive the baseline pruner.
//!
//! Run with `cargo run --example distance_bounds`.

use aknn::{dist_sq, Aabb};

fn main() {
    let a = vec![0.0, 0.0];
    let b = vec![3.0, 4.0];
    println!("dist_sq({a:?}, {b:?}) = {}", dist_sq(&a, &b));

    // A box is closed and may be degenerate; a point is a zero-width box.
    let unit = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]);
    let point = Aabb::from_point(&b);
    println!("unit box: {unit:?}");
    println!("point as box: {point:?}");

    // Nearest and farthest attainable squared distance from a query point.
    for q in [vec![0.5, 0.5], vec![2.0, 0.5], vec![-1.0, -1.0]] {
        println!(
            "query {q:?}: min_dist_sq = {}, max_dist_sq = {}, nearest = {:?}, farthest = {:?}",
            unit.min_dist_sq(&q),
            unit.max_dist_sq(&q),
            unit.nearest_point(&q),
            unit.farthest_point(&q),
        );
    }

    // Corner enumeration follows binary counting: bit d of the index picks
    // the hi endpoint of dimension d.
    println!("corners of {unit:?}:");
    for (i, corner) in unit.corners().into_iter().enumerate() {
        println!("  corner {i:02b}: {corner:?}");
    }

    // Box-to-box bounds: the nearest and farthest any two points of the
    // boxes can be. These are the zone-map distances the baseline sorts by.
    let other = Aabb::new(vec![3.0, 2.0], vec![5.0, 3.0]);
    println!(
        "between {unit:?} and {other:?}: bmin_dist_sq = {}, bmax_dist_sq = {}",
        unit.bmin_dist_sq(&other),
        unit.bmax_dist_sq(&other),
    );

    // The same kernels run on 64-bit integers with i128 accumulation, so
    // squares near the coordinate limit cannot overflow.
    let big = Aabb::new(vec![-2_000_000_000i64], vec![-1_999_999_999]);
    let far = Aabb::new(vec![2_000_000_000i64], vec![2_000_000_000]);
    println!("int64 bmax_dist_sq = {}", big.bmax_dist_sq(&far));
}
