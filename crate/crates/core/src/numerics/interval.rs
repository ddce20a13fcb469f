//! Closed real intervals with dyadic endpoints and outward rounding.

use std::fmt;

use num_bigint::BigInt;

use super::dyadic::{Dyadic, Round};
use crate::exact::BigRational;

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::point(Dyadic::from_i64(v))
    }

    pub fn from_int(v: &BigInt) -> Self {
        Self::point(Dyadic::from_int(v))
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        Self {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        &self.lo.to_rational() <= x && x <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        Self {
            lo: self.lo.add_round(&o.lo, prec, Round::Down),
            hi: self.hi.add_round(&o.hi, prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        let c = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = c.iter().min().unwrap().round(prec, Round::Down);
        let hi = c.iter().max().unwrap().round(prec, Round::Up);
        Self { lo, hi }
    }

    pub fn scale_pow2(&self, k: i64) -> Self {
        Self {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    /// Multiplication by a non-negative scalar interval-free constant.
    pub fn mul_int(&self, k: &BigInt, prec: u64) -> Self {
        self.mul(&Interval::from_int(k), prec)
    }

    /// `None` if the divisor contains zero.
    pub fn div(&self, o: &Self, prec: u64) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let inv = Self {
            lo: Dyadic::one().div_round(&o.hi, prec, Round::Down),
            hi: Dyadic::one().div_round(&o.lo, prec, Round::Up),
        };
        // 1/x is decreasing on each sign branch, so [1/hi, 1/lo] is right for
        // both positive and negative divisors.
        Some(self.mul(&inv, prec))
    }

    pub fn sqr(&self, prec: u64) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        let hi = a.max_ref(&b).round(prec, Round::Up);
        let lo = if self.contains_zero() {
            Dyadic::zero()
        } else {
            a.min_ref(&b).round(prec, Round::Down)
        };
        Self { lo, hi }
    }

    /// Square root of the non-negative part.
    pub fn sqrt(&self, prec: u64) -> Self {
        let lo = if self.lo.is_positive() {
            self.lo.sqrt_round(prec, Round::Down)
        } else {
            Dyadic::zero()
        };
        let hi = if self.hi.is_positive() {
            self.hi.sqrt_round(prec, Round::Up)
        } else {
            Dyadic::zero()
        };
        Self { lo, hi }
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            Self {
                lo: Dyadic::zero(),
                hi: self.hi.max_ref(&self.lo.neg()),
            }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn max(&self, o: &Self) -> Self {
        Self {
            lo: self.lo.max_ref(&o.lo),
            hi: self.hi.max_ref(&o.hi),
        }
    }

    pub fn min(&self, o: &Self) -> Self {
        Self {
            lo: self.lo.min_ref(&o.lo),
            hi: self.hi.min_ref(&o.hi),
        }
    }

    /// Convex hull.
    pub fn hull(&self, o: &Self) -> Self {
        Self {
            lo: self.lo.min_ref(&o.lo),
            hi: self.hi.max_ref(&o.hi),
        }
    }

    /// Widens both ends by `e ≥ 0`.
    pub fn inflate(&self, e: &Dyadic, prec: u64) -> Self {
        Self {
            lo: self.lo.sub_round(e, prec, Round::Down),
            hi: self.hi.add_round(e, prec, Round::Up),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}
