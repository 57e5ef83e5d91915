//! Arbitrary-precision rationals and rational intervals.
//!
//! `Rat` is the coefficient field for the whole crate. Intervals carry
//! isolating ranges for real roots; they are either open `(lo, hi)` ranges or
//! exact points, always with rational endpoints.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational number in canonical form (positive denominator, reduced).
pub type Rat = num_rational::BigRational;

/// Builds a canonical rational from a numerator/denominator pair.
///
/// The sign is carried by the numerator and the fraction is reduced, so
/// `rat_normalize(-1, -2)` yields `1/2`.
pub fn rat_normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rat> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rat::new(n.into(), d))
}

/// Shorthand for small rational constants in tests and builders.
pub fn rat(n: i64, d: i64) -> Rat {
    rat_normalize(n, d).expect("nonzero denominator")
}

/// Parses "p/q" or "p"; decimal notation is rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::ZeroDenominator)?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::ZeroDenominator)?;
            rat_normalize(n, d)
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| Error::ZeroDenominator)?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Canonical decimal-free rendering: "p/q" or "p".
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Kind of a rational interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    /// Open interval `(lo, hi)` with `lo < hi`.
    Open,
    /// Exact point, `lo == hi`.
    Point,
}

/// A rational interval: open range or exact point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub kind: IntervalKind,
}

impl RatInterval {
    pub fn open(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo < hi, "open interval requires lo < hi");
        RatInterval { lo, hi, kind: IntervalKind::Open }
    }

    pub fn point(v: Rat) -> Self {
        RatInterval { lo: v.clone(), hi: v, kind: IntervalKind::Point }
    }

    pub fn is_point(&self) -> bool {
        self.kind == IntervalKind::Point
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    /// Exact midpoint `(lo + hi) / 2`; for a point this is the point itself.
    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    /// True when the two intervals have no common point.
    pub fn disjoint(&self, other: &RatInterval) -> bool {
        let left_of = |a: &RatInterval, b: &RatInterval| match (a.kind, b.kind) {
            (IntervalKind::Open, _) | (_, IntervalKind::Open) => a.hi <= b.lo,
            (IntervalKind::Point, IntervalKind::Point) => a.hi < b.lo,
        };
        left_of(self, other) || left_of(other, self)
    }

    pub fn contains(&self, r: &Rat) -> bool {
        match self.kind {
            IntervalKind::Open => &self.lo < r && r < &self.hi,
            IntervalKind::Point => &self.lo == r,
        }
    }
}

/// Conservative product: bounds are the min/max of the endpoint products.
pub fn interval_mul(a: &RatInterval, b: &RatInterval) -> RatInterval {
    let products = [
        &a.lo * &b.lo,
        &a.lo * &b.hi,
        &a.hi * &b.lo,
        &a.hi * &b.hi,
    ];
    let lo = products.iter().min().unwrap().clone();
    let hi = products.iter().max().unwrap().clone();
    if a.is_point() && b.is_point() {
        RatInterval::point(lo)
    } else if lo == hi {
        RatInterval::point(lo)
    } else {
        RatInterval { lo, hi, kind: IntervalKind::Open }
    }
}

/// Exact midpoint of an interval.
pub fn interval_midpoint(a: &RatInterval) -> Rat {
    a.midpoint()
}

/// Sign of a rational as -1, 0, +1.
pub fn sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
