//! The three-box proximity test: decide from bounds alone whether every
//! point of an origin box is strictly closer to one box than to another,
//! and produce a concrete counterexample when it is not.
//!
//! Run with `cargo run --example pruning_test`.

use aknn::{all_points_closer_naive, all_points_closer_opt, failing_corner, Aabb};

fn main() {
    // An origin box with one candidate in front of it and one farther out
    // in the same direction: the front box occludes the far one.
    let origin = Aabb::new(vec![-3.0, 0.0], vec![0.0, 3.0]);
    let front = Aabb::new(vec![1.0, 2.0], vec![2.0, 3.0]);
    let far = Aabb::new(vec![4.0, 0.0], vec![5.0, 2.0]);
    let behind = Aabb::new(vec![-5.0, 2.0], vec![-4.0, 3.0]);

    // Every point of `origin` is strictly closer to every point of `front`
    // than to any point of `far`, so `far` can be skipped in any
    // nearest-neighbor search from `origin` once `front` holds enough
    // points.
    println!(
        "front closer than far for all of origin?  {}",
        all_points_closer_opt(&origin, &front, &far)
    );

    // The claim fails for `behind` vs `far`: the naive form sweeps the
    // origin corners and returns the first refuting corner as a witness.
    let decision = all_points_closer_naive(&origin, &behind, &far);
    println!("behind closer than far for all of origin?  {}", decision.closer());
    let w = decision.witness().expect("failed test carries a witness");
    let (to_eval, to_basis) = w.violation();
    println!(
        "  witness: origin corner {:?} is {} away from {:?} but only {} from {:?}",
        w.origin_corner, to_eval, w.eval_point, to_basis, w.basis_point
    );

    // The optimized form reaches the same verdict in one pass over the
    // dimensions instead of 2^R corners; the two can never disagree.
    for (name, eval, basis) in [
        ("front vs far", &front, &far),
        ("behind vs far", &behind, &far),
        ("far vs front", &far, &front),
        ("front vs front", &front, &front),
    ] {
        let naive = all_points_closer_naive(&origin, eval, basis).closer();
        let opt = all_points_closer_opt(&origin, eval, basis);
        assert_eq!(naive, opt);
        println!("{name}: naive = {naive}, optimized = {opt}");
    }

    // `failing_corner` recovers the corner the optimized form minimized
    // over, without enumerating the rest.
    println!(
        "minimizing corner for behind vs far: {:?}",
        failing_corner(&origin, &behind, &far).expect("test fails")
    );

    // Ties refute: a point equidistant from both boxes means not strictly
    // closer.
    let o = Aabb::new(vec![0.0], vec![0.0]);
    let e = Aabb::new(vec![1.0], vec![1.0]);
    let b = Aabb::new(vec![-1.0], vec![-1.0]);
    println!("equidistant singleton boxes: {}", all_points_closer_opt(&o, &e, &b));
}
