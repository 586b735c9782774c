use serde::{Deserialize, Serialize};

/// A closed interval on the extended real line. Infinite endpoints are
/// stored as `f64::INFINITY` / `f64::NEG_INFINITY`, never as sentinels.
///
/// An empty intersection is `None` from [`ExtendedInterval::intersect`],
/// never a reversed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtendedInterval {
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub lo: f64,
    #[serde(with = "crate::serde_ext::ext_f64")]
    pub hi: f64,
}

impl ExtendedInterval {
    pub const REAL_LINE: Self = Self {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Returns `None` when `lo > hi` or either bound is NaN.
    pub fn new(lo: f64, hi: f64) -> Option<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            None
        } else {
            Some(Self { lo, hi })
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        Self::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn contains(&self, z: f64) -> bool {
        self.lo <= z && z <= self.hi
    }

    /// Containment with slack `tol` on both ends.
    pub fn contains_with_slack(&self, z: f64, tol: f64) -> bool {
        self.lo - tol <= z && z <= self.hi + tol
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Distance from `z` to the nearest finite endpoint (infinite if none).
    pub fn distance_to_boundary(&self, z: f64) -> f64 {
        let a = if self.lo.is_finite() {
            (z - self.lo).abs()
        } else {
            f64::INFINITY
        };
        let b = if self.hi.is_finite() {
            (z - self.hi).abs()
        } else {
            f64::INFINITY
        };
        a.min(b)
    }

    pub fn clamp(&self, z: f64) -> f64 {
        z.max(self.lo).min(self.hi)
    }

    pub fn as_pair(&self) -> [f64; 2] {
        [self.lo, self.hi]
    }
}
