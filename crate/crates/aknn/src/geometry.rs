//! Distance kernels over points and axis-aligned boxes.
//!
//! Everything is computed and compared in squared-distance space, in the
//! scalar's widened accumulator, so integer datasets stay exact end to end
//! and float datasets take each square root at most once, in display code.

use crate::scalar::Scalar;

/// Squared distance in the widened accumulator of `S`. Kernel outputs are
/// non-negative; only per-dimension differences of squared distances (see
/// [`crate::pruning::h_dim`]) can go negative.
pub type SqDist<S> = <S as Scalar>::Acc;

/// Corner enumeration is 2^R points; beyond this many dimensions it is
/// rejected rather than attempted.
pub const MAX_CORNER_DIMS: usize = 30;

/// Closed interval `[lo, hi]` in one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<S> {
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> Interval<S> {
    /// Panics if `lo > hi` or either endpoint is out of range.
    pub fn new(lo: S, hi: S) -> Self {
        assert!(lo.in_range() && hi.in_range(), "interval endpoint out of range");
        assert!(lo <= hi, "malformed interval: lo > hi");
        Interval { lo, hi }
    }

    pub fn contains(&self, v: S) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Axis-aligned box with inclusive per-dimension bounds. Bounds are metadata:
/// they must contain the points they describe but need not be minimal.
#[derive(Debug, Clone, PartialEq)]
pub struct Aabb<S: Scalar> {
    lo: Vec<S>,
    hi: Vec<S>,
}

impl<S: Scalar> Aabb<S> {
    /// Panics unless `lo` and `hi` are the same non-zero length, every
    /// coordinate is in range, and `lo[d] <= hi[d]` for all `d`.
    pub fn new(lo: Vec<S>, hi: Vec<S>) -> Self {
        assert_eq!(lo.len(), hi.len(), "bound arrays differ in length");
        assert!(!lo.is_empty(), "box must have at least one dimension");
        for d in 0..lo.len() {
            assert!(lo[d].in_range() && hi[d].in_range(), "bound out of range in dim {d}");
            assert!(lo[d] <= hi[d], "malformed box: lo > hi in dim {d}");
        }
        Aabb { lo, hi }
    }

    /// Degenerate box covering exactly one point.
    pub fn from_point(p: &[S]) -> Self {
        Self::new(p.to_vec(), p.to_vec())
    }

    pub fn dims(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[S] {
        &self.lo
    }

    pub fn hi(&self) -> &[S] {
        &self.hi
    }

    pub fn interval(&self, d: usize) -> Interval<S> {
        Interval { lo: self.lo[d], hi: self.hi[d] }
    }

    /// Inclusive membership on every dimension.
    pub fn contains(&self, p: &[S]) -> bool {
        assert_eq!(p.len(), self.dims(), "point dimension mismatch");
        (0..self.dims()).all(|d| self.lo[d] <= p[d] && p[d] <= self.hi[d])
    }

    /// The 2^R corner points, in binary counting order: bit `d` of the corner
    /// index selects `lo[d]` (0) or `hi[d]` (1), so index 0 is the all-lo
    /// corner and index 2^R - 1 the all-hi corner. Degenerate dimensions
    /// still contribute a bit, so duplicates appear for flat boxes.
    ///
    /// Panics when `dims() > MAX_CORNER_DIMS`.
    pub fn corners(&self) -> Vec<Vec<S>> {
        let r = self.dims();
        assert!(r <= MAX_CORNER_DIMS, "corner enumeration rejected for {r} dims");
        let mut out = Vec::with_capacity(1usize << r);
        for mask in 0u64..(1u64 << r) {
            let mut corner = Vec::with_capacity(r);
            for d in 0..r {
                corner.push(if mask >> d & 1 == 1 { self.hi[d] } else { self.lo[d] });
            }
            out.push(corner);
        }
        out
    }

    /// Squared distance from `p` to the nearest point of the box; zero when
    /// `p` is inside or on the boundary.
    pub fn min_dist_sq(&self, p: &[S]) -> SqDist<S> {
        assert_eq!(p.len(), self.dims(), "point dimension mismatch");
        let mut sum = S::ACC_ZERO;
        for d in 0..self.dims() {
            sum = sum + min_dist_sq_1d(p[d], self.lo[d], self.hi[d]);
        }
        sum
    }

    /// Squared distance from `p` to the farthest point of the box, attained
    /// at a corner.
    pub fn max_dist_sq(&self, p: &[S]) -> SqDist<S> {
        assert_eq!(p.len(), self.dims(), "point dimension mismatch");
        let mut sum = S::ACC_ZERO;
        for d in 0..self.dims() {
            sum = sum + max_dist_sq_1d(p[d], self.lo[d], self.hi[d]);
        }
        sum
    }

    /// Per-dimension clamp of `p` onto the box: the unique nearest box point.
    pub fn nearest_point(&self, p: &[S]) -> Vec<S> {
        assert_eq!(p.len(), self.dims(), "point dimension mismatch");
        (0..self.dims())
            .map(|d| {
                if p[d] < self.lo[d] {
                    self.lo[d]
                } else if self.hi[d] < p[d] {
                    self.hi[d]
                } else {
                    p[d]
                }
            })
            .collect()
    }

    /// The corner farthest from `p`. On a per-dimension tie, the `hi`
    /// endpoint is chosen, which makes the result deterministic.
    pub fn farthest_point(&self, p: &[S]) -> Vec<S> {
        assert_eq!(p.len(), self.dims(), "point dimension mismatch");
        (0..self.dims())
            .map(|d| {
                let lo_sq = S::sq_diff(self.lo[d], p[d]);
                let hi_sq = S::sq_diff(self.hi[d], p[d]);
                if hi_sq >= lo_sq {
                    self.hi[d]
                } else {
                    self.lo[d]
                }
            })
            .collect()
    }

    /// Smallest squared distance between any point of `self` and any point of
    /// `other`; zero iff the boxes intersect.
    pub fn bmin_dist_sq(&self, other: &Aabb<S>) -> SqDist<S> {
        assert_eq!(self.dims(), other.dims(), "box dimension mismatch");
        let mut sum = S::ACC_ZERO;
        for d in 0..self.dims() {
            if self.hi[d] < other.lo[d] {
                sum = sum + S::sq_diff(other.lo[d], self.hi[d]);
            } else if other.hi[d] < self.lo[d] {
                sum = sum + S::sq_diff(self.lo[d], other.hi[d]);
            }
        }
        sum
    }

    /// Largest squared distance between any point of `self` and any point of
    /// `other`, attained at a corner pair.
    pub fn bmax_dist_sq(&self, other: &Aabb<S>) -> SqDist<S> {
        assert_eq!(self.dims(), other.dims(), "box dimension mismatch");
        let mut sum = S::ACC_ZERO;
        for d in 0..self.dims() {
            let a = S::sq_diff(self.lo[d], other.hi[d]);
            let b = S::sq_diff(self.hi[d], other.lo[d]);
            sum = sum + if a < b { b } else { a };
        }
        sum
    }
}

/// Squared Euclidean distance between two points of equal dimension.
pub fn dist_sq<S: Scalar>(a: &[S], b: &[S]) -> SqDist<S> {
    assert_eq!(a.len(), b.len(), "point dimension mismatch");
    let mut sum = S::ACC_ZERO;
    for d in 0..a.len() {
        sum = sum + S::sq_diff(a[d], b[d]);
    }
    sum
}

/// Squared distance from scalar `p` to the interval `[lo, hi]`.
#[inline(always)]
pub(crate) fn min_dist_sq_1d<S: Scalar>(p: S, lo: S, hi: S) -> S::Acc {
    if p < lo {
        S::sq_diff(lo, p)
    } else if hi < p {
        S::sq_diff(hi, p)
    } else {
        S::ACC_ZERO
    }
}

/// Squared distance from scalar `p` to the farther endpoint of `[lo, hi]`.
#[inline(always)]
pub(crate) fn max_dist_sq_1d<S: Scalar>(p: S, lo: S, hi: S) -> S::Acc {
    let lo_sq = S::sq_diff(lo, p);
    let hi_sq = S::sq_diff(hi, p);
    if lo_sq < hi_sq {
        hi_sq
    } else {
        lo_sq
    }
}
