use std::fmt::{Debug, Display};
use std::ops::{Add, Sub};

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Coordinate type of a dataset, fixed across all of its partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Float64,
    Int64,
}

impl Display for ScalarKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalarKind::Float64 => "float64",
            ScalarKind::Int64 => "int64",
        })
    }
}

/// Largest integer coordinate magnitude accepted at ingestion. Keeping
/// |coordinate| below 2^31 bounds every squared difference by 2^64 and every
/// squared-distance sum well inside `i128`, so integer kernels never overflow.
pub const INT_COORD_LIMIT: i64 = 1 << 31;

/// Coordinate scalar usable by the distance kernels.
///
/// `Acc` is the signed widened accumulator in which all squared-distance
/// arithmetic happens: `f64` for `f64` coordinates, `i128` for `i64`. Integer
/// accumulation is exact; decisions on it never need a tolerance.
pub trait Scalar:
    Copy + PartialOrd + Debug + Display + Serialize + DeserializeOwned + Send + Sync + 'static
{
    type Acc: Copy
        + PartialOrd
        + Debug
        + Display
        + Add<Output = Self::Acc>
        + Sub<Output = Self::Acc>
        + Serialize
        + Send
        + Sync
        + 'static;

    const KIND: ScalarKind;
    const ZERO: Self;
    const ACC_ZERO: Self::Acc;

    /// `(a - b)^2` in the widened accumulator.
    fn sq_diff(a: Self, b: Self) -> Self::Acc;

    /// Whether the value is storable: finite for floats, within
    /// [`INT_COORD_LIMIT`] for integers.
    fn in_range(self) -> bool;

    fn to_le_bytes(self) -> [u8; 8];
    fn from_le_bytes(bytes: [u8; 8]) -> Self;

    /// Nearest in-range scalar to `value`; generators synthesize coordinates
    /// through this.
    fn from_f64(value: f64) -> Self;
    fn to_f64(self) -> f64;
    fn acc_to_f64(acc: Self::Acc) -> f64;

    /// Uniform sample from the inclusive range `[lo, hi]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, lo: Self, hi: Self) -> Self;
}

impl Scalar for f64 {
    type Acc = f64;

    const KIND: ScalarKind = ScalarKind::Float64;
    const ZERO: f64 = 0.0;
    const ACC_ZERO: f64 = 0.0;

    #[inline(always)]
    fn sq_diff(a: f64, b: f64) -> f64 {
        let d = a - b;
        d * d
    }

    #[inline]
    fn in_range(self) -> bool {
        self.is_finite()
    }

    #[inline]
    fn to_le_bytes(self) -> [u8; 8] {
        f64::to_le_bytes(self)
    }

    #[inline]
    fn from_le_bytes(bytes: [u8; 8]) -> f64 {
        f64::from_le_bytes(bytes)
    }

    #[inline]
    fn from_f64(value: f64) -> f64 {
        value
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    #[inline]
    fn acc_to_f64(acc: f64) -> f64 {
        acc
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
        if lo == hi {
            lo
        } else {
            rng.gen_range(lo..=hi)
        }
    }
}

impl Scalar for i64 {
    type Acc = i128;

    const KIND: ScalarKind = ScalarKind::Int64;
    const ZERO: i64 = 0;
    const ACC_ZERO: i128 = 0;

    #[inline(always)]
    fn sq_diff(a: i64, b: i64) -> i128 {
        let d = a as i128 - b as i128;
        d * d
    }

    #[inline]
    fn in_range(self) -> bool {
        self.abs() < INT_COORD_LIMIT
    }

    #[inline]
    fn to_le_bytes(self) -> [u8; 8] {
        i64::to_le_bytes(self)
    }

    #[inline]
    fn from_le_bytes(bytes: [u8; 8]) -> i64 {
        i64::from_le_bytes(bytes)
    }

    #[inline]
    fn from_f64(value: f64) -> i64 {
        (value.round() as i64).clamp(-(INT_COORD_LIMIT - 1), INT_COORD_LIMIT - 1)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }

    #[inline]
    fn acc_to_f64(acc: i128) -> f64 {
        acc as f64
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> i64 {
        rng.gen_range(lo..=hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sq_diff_widens_int_squares_past_i64() {
        let limit = INT_COORD_LIMIT - 1;
        let sq = i64::sq_diff(limit, -limit);
        assert!(sq > i64::MAX as i128);
        assert_eq!(sq, (2 * limit as i128) * (2 * limit as i128));
    }

    #[test]
    fn int_range_is_open_at_the_limit() {
        assert!((INT_COORD_LIMIT - 1).in_range());
        assert!((-(INT_COORD_LIMIT - 1)).in_range());
        assert!(!INT_COORD_LIMIT.in_range());
        assert!(!(-INT_COORD_LIMIT).in_range());
    }

    #[test]
    fn float_range_rejects_non_finite() {
        assert!(1.0f64.in_range());
        assert!(!f64::NAN.in_range());
        assert!(!f64::INFINITY.in_range());
    }

    #[test]
    fn le_bytes_round_trip() {
        for v in [0.0f64, -1.5, 1e300] {
            assert_eq!(f64::from_le_bytes(v.to_le_bytes()), v);
        }
        for v in [0i64, -17, INT_COORD_LIMIT - 1] {
            assert_eq!(i64::from_le_bytes(v.to_le_bytes()), v);
        }
    }

    #[test]
    fn from_f64_rounds_and_clamps_ints() {
        assert_eq!(i64::from_f64(2.6), 3);
        assert_eq!(i64::from_f64(-2.6), -3);
        assert_eq!(i64::from_f64(1e30), INT_COORD_LIMIT - 1);
    }
}
