//! The three-box proximity test: is every point of an origin box strictly
//! closer to every point of one candidate box than to every point of another?
//!
//! The point-level statement quantifies over infinitely many points, but it
//! holds iff it holds at the corners of the origin box, and the corner sweep
//! collapses further to one pass over the dimensions because each corner's
//! margin splits into independent per-dimension terms. Both forms are
//! implemented; they must agree on every input, and the property suite holds
//! them to that.
//!
//! All comparisons are strict in squared-distance space: a configuration
//! where the nearest point of the far box ties the farthest point of the near
//! box is not "closer". No epsilons anywhere.

use serde::Serialize;

use crate::geometry::{max_dist_sq_1d, min_dist_sq_1d, Aabb, Interval, MAX_CORNER_DIMS};
use crate::scalar::Scalar;

/// Constructive refutation of the proximity claim: a corner of the origin
/// box, the farthest point of the eval box from it, and the nearest point of
/// the basis box to it, with `dist(corner, eval_point) >=
/// dist(corner, basis_point)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness<S: Scalar> {
    pub origin_corner: Vec<S>,
    pub eval_point: Vec<S>,
    pub basis_point: Vec<S>,
}

impl<S: Scalar> Witness<S> {
    /// Build the witness for a given refuting corner.
    pub fn for_corner(corner: &[S], eval: &Aabb<S>, basis: &Aabb<S>) -> Self {
        Witness {
            origin_corner: corner.to_vec(),
            eval_point: eval.farthest_point(corner),
            basis_point: basis.nearest_point(corner),
        }
    }

    /// The violation the witness demonstrates, as squared distances from the
    /// origin corner: `(to eval_point, to basis_point)` with the first at
    /// least the second.
    pub fn violation(&self) -> (S::Acc, S::Acc) {
        (
            crate::geometry::dist_sq(&self.origin_corner, &self.eval_point),
            crate::geometry::dist_sq(&self.origin_corner, &self.basis_point),
        )
    }
}

/// Outcome of the proximity test. `NotCloser` always carries its refutation,
/// so "no witness" and "closer" cannot drift apart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PruneDecision<S: Scalar> {
    Closer,
    NotCloser(Witness<S>),
}

impl<S: Scalar> PruneDecision<S> {
    pub fn closer(&self) -> bool {
        matches!(self, PruneDecision::Closer)
    }

    pub fn witness(&self) -> Option<&Witness<S>> {
        match self {
            PruneDecision::Closer => None,
            PruneDecision::NotCloser(w) => Some(w),
        }
    }
}

fn assert_same_dims<S: Scalar>(origin: &Aabb<S>, eval: &Aabb<S>, basis: &Aabb<S>) -> usize {
    let r = origin.dims();
    assert_eq!(eval.dims(), r, "box dimension mismatch");
    assert_eq!(basis.dims(), r, "box dimension mismatch");
    r
}

/// Reference form of the test: sweep the 2^R corners of `origin` in binary
/// counting order and require, at each corner, that the farthest point of
/// `eval` is strictly nearer than the nearest point of `basis`. The first
/// corner that fails (ties included) produces the witness.
///
/// Panics on mismatched dimensions or more than [`MAX_CORNER_DIMS`] dims.
pub fn all_points_closer_naive<S: Scalar>(
    origin: &Aabb<S>,
    eval: &Aabb<S>,
    basis: &Aabb<S>,
) -> PruneDecision<S> {
    let r = assert_same_dims(origin, eval, basis);
    assert!(r <= MAX_CORNER_DIMS, "corner enumeration rejected for {r} dims");
    let mut corner = vec![S::ZERO; r];
    for mask in 0u64..(1u64 << r) {
        for d in 0..r {
            corner[d] = if mask >> d & 1 == 1 { origin.hi()[d] } else { origin.lo()[d] };
        }
        if basis.min_dist_sq(&corner) <= eval.max_dist_sq(&corner) {
            return PruneDecision::NotCloser(Witness::for_corner(&corner, eval, basis));
        }
    }
    PruneDecision::Closer
}

/// Linear-time form of the test, one pass over the dimensions.
///
/// For a corner whose dimension-`d` coordinate is endpoint `o`, the margin
/// contribution of that dimension is `min_dist_sq_1d(o, basis_d) -
/// max_dist_sq_1d(o, eval_d)`, independent of the other dimensions. The
/// tightest corner therefore takes the smaller of the two endpoint terms per
/// dimension, and the test passes iff that minimal total margin is strictly
/// positive.
///
/// Panics on mismatched dimensions.
pub fn all_points_closer_opt<S: Scalar>(origin: &Aabb<S>, eval: &Aabb<S>, basis: &Aabb<S>) -> bool {
    let r = assert_same_dims(origin, eval, basis);
    let mut margin = S::ACC_ZERO;
    for d in 0..r {
        let e = eval.interval(d);
        let b = basis.interval(d);
        let o_lo = origin.lo()[d];
        let o_hi = origin.hi()[d];
        let lo_term = min_dist_sq_1d(o_lo, b.lo, b.hi) - max_dist_sq_1d(o_lo, e.lo, e.hi);
        let hi_term = min_dist_sq_1d(o_hi, b.lo, b.hi) - max_dist_sq_1d(o_hi, e.lo, e.hi);
        margin = margin + if hi_term < lo_term { hi_term } else { lo_term };
    }
    margin > S::ACC_ZERO
}

/// The corner selected by the per-dimension minimization in
/// [`all_points_closer_opt`], returned only when the test fails; `None`
/// exactly when the test passes. Per-dimension ties pick the `lo` endpoint.
///
/// The sum is accumulated identically to the optimized test, so the two
/// functions cannot disagree even under floating-point rounding.
pub fn failing_corner<S: Scalar>(
    origin: &Aabb<S>,
    eval: &Aabb<S>,
    basis: &Aabb<S>,
) -> Option<Vec<S>> {
    let r = assert_same_dims(origin, eval, basis);
    let mut corner = Vec::with_capacity(r);
    let mut margin = S::ACC_ZERO;
    for d in 0..r {
        let e = eval.interval(d);
        let b = basis.interval(d);
        let o_lo = origin.lo()[d];
        let o_hi = origin.hi()[d];
        let lo_term = min_dist_sq_1d(o_lo, b.lo, b.hi) - max_dist_sq_1d(o_lo, e.lo, e.hi);
        let hi_term = min_dist_sq_1d(o_hi, b.lo, b.hi) - max_dist_sq_1d(o_hi, e.lo, e.hi);
        if hi_term < lo_term {
            corner.push(o_hi);
            margin = margin + hi_term;
        } else {
            corner.push(o_lo);
            margin = margin + lo_term;
        }
    }
    if margin > S::ACC_ZERO {
        None
    } else {
        Some(corner)
    }
}

/// Per-dimension margin `max_dist_sq_1d(p, eval_dim) - min_dist_sq_1d(p,
/// basis_dim)` as a function of the scalar coordinate `p`.
///
/// Convex in `p` even though it is a difference of convex terms: between its
/// break points (the eval midpoint and the basis endpoints) it is a parabola
/// or a line, and the one-sided slopes never decrease across a break point.
/// The convexity suite checks every ordering of those break points. Negative
/// values argue for "closer"; the corner test fails when these margins sum
/// to at least zero at some corner.
pub fn h_dim<S: Scalar>(p: S, eval_dim: Interval<S>, basis_dim: Interval<S>) -> S::Acc {
    max_dist_sq_1d(p, eval_dim.lo, eval_dim.hi) - min_dist_sq_1d(p, basis_dim.lo, basis_dim.hi)
}
