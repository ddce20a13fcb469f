//! Midpoint-radius complex balls.

use std::fmt;

use num_bigint::BigInt;

use super::dyadic::{Dyadic, Round};
use super::elementary::log_interval;
use super::interval::Interval;
use crate::error::{Error, Result};
use crate::exact::BigRational;

/// Bits kept in radii; radii are always rounded up.
const RAD_PREC: u64 = 30;

fn rad_add(a: &Dyadic, b: &Dyadic) -> Dyadic {
    a.add_round(b, RAD_PREC, Round::Up)
}

fn rad_mul(a: &Dyadic, b: &Dyadic) -> Dyadic {
    a.mul_round(b, RAD_PREC, Round::Up)
}

/// Rounds `x` to nearest at `prec` bits and returns it with an upper bound
/// on the rounding error.
fn round_err(x: Dyadic, prec: u64) -> (Dyadic, Dyadic) {
    if x.mant().bits() <= prec {
        return (x, Dyadic::zero());
    }
    let r = x.round(prec, Round::Nearest);
    let err = Dyadic::pow2(x.top() - prec as i64);
    (r, err)
}

#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
    pub prec: u64,
}

impl ComplexBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u64) -> Self {
        debug_assert!(!rad.is_negative());
        Self { re, im, rad, prec }
    }

    pub fn exact(re: Dyadic, im: Dyadic, prec: u64) -> Self {
        Self::new(re, im, Dyadic::zero(), prec)
    }

    pub fn zero(prec: u64) -> Self {
        Self::exact(Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn from_int(v: &BigInt, prec: u64) -> Self {
        let (re, err) = round_err(Dyadic::from_int(v), prec);
        Self::new(re, Dyadic::zero(), err, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        let re = Dyadic::from_rational(q, prec, Round::Nearest);
        let err = if re.to_rational() == *q {
            Dyadic::zero()
        } else {
            Dyadic::pow2(re.top() + 1 - prec as i64)
        };
        Self::new(re, Dyadic::zero(), err, prec)
    }

    /// Ball containing a real interval.
    pub fn from_interval(i: &Interval, prec: u64) -> Self {
        let mid = i.mid().round(prec, Round::Nearest);
        let r = i.hi.sub(&mid).max_ref(&mid.sub(&i.lo));
        Self::new(mid, Dyadic::zero(), r.round(RAD_PREC, Round::Up), prec)
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        Self {
            prec,
            ..self.clone()
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
            ..self.clone()
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            im: self.im.neg(),
            ..self.clone()
        }
    }

    fn finish(re: Dyadic, im: Dyadic, rad: Dyadic, prec: u64) -> Self {
        let (re, e1) = round_err(re, prec);
        let (im, e2) = round_err(im, prec);
        let rad = rad_add(&rad_add(&rad, &e1), &e2);
        Self { re, im, rad, prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::finish(
            self.re.add(&o.re),
            self.im.add(&o.im),
            rad_add(&self.rad, &o.rad),
            prec,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Upper bound on `|mid|`.
    pub fn mid_abs_upper(&self) -> Dyadic {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        let s = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        s.sqrt_round(RAD_PREC.max(self.prec.min(64)), Round::Up)
    }

    pub fn mid_abs_lower(&self, prec: u64) -> Dyadic {
        if self.im.is_zero() {
            return self.re.abs().round(prec, Round::Down);
        }
        if self.re.is_zero() {
            return self.im.abs().round(prec, Round::Down);
        }
        let s = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        s.sqrt_round(prec, Round::Down)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let mut rad = Dyadic::zero();
        if !self.rad.is_zero() || !o.rad.is_zero() {
            let a = self.mid_abs_upper();
            let b = o.mid_abs_upper();
            rad = rad_add(&rad_mul(&a, &o.rad), &rad_mul(&b, &self.rad));
            rad = rad_add(&rad, &rad_mul(&self.rad, &o.rad));
        }
        Self::finish(re, im, rad, prec)
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let kd = Dyadic::from_int(k);
        let rad = rad_mul(&self.rad, &kd.abs());
        Self::finish(self.re.mul(&kd), self.im.mul(&kd), rad, self.prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Self {
            re: self.re.mul_pow2(k),
            im: self.im.mul_pow2(k),
            rad: self.rad.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul(&ComplexBall::from_rational(q, self.prec))
    }

    /// Reciprocal; errors if the ball may contain zero.
    pub fn recip(&self) -> Result<Self> {
        let prec = self.prec;
        let wp = prec + 8;
        let m_lo = self.mid_abs_lower(wp);
        if m_lo <= self.rad {
            return Err(Error::DivisionByZero);
        }
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let re = self.re.div_round(&n2, wp, Round::Nearest);
        let im = self.im.neg().div_round(&n2, wp, Round::Nearest);
        // Rounding of the midpoint quotient: relative error ≤ 2^(1-wp) per part.
        let inv_abs_up = Dyadic::one().div_round(&m_lo, RAD_PREC, Round::Up);
        let round_e = rad_mul(&inv_abs_up, &Dyadic::pow2(2 - wp as i64));
        let mut rad = round_e;
        if !self.rad.is_zero() {
            // |1/z − 1/c| ≤ r / (|c|(|c| − r)).
            let gap = m_lo.sub_round(&self.rad, RAD_PREC, Round::Down);
            let den = m_lo.mul_round(&gap, RAD_PREC, Round::Down);
            rad = rad_add(&rad, &self.rad.div_round(&den, RAD_PREC, Round::Up));
        }
        Ok(Self::finish(re, im, rad, prec))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexBall::exact(Dyadic::one(), Dyadic::zero(), self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Enclosure of `|z|` over the ball.
    pub fn abs(&self) -> Interval {
        let p = self.prec.max(32);
        let lo = self.mid_abs_lower(p).sub_round(&self.rad, p, Round::Down);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        let hi_mid = if self.im.is_zero() {
            self.re.abs()
        } else {
            let s = self.re.mul(&self.re).add(&self.im.mul(&self.im));
            s.sqrt_round(p, Round::Up)
        };
        Interval::new(lo, hi_mid.add_round(&self.rad, p, Round::Up))
    }

    pub fn real_part(&self) -> Interval {
        Interval::new(self.re.sub(&self.rad), self.re.add(&self.rad))
    }

    pub fn imag_part(&self) -> Interval {
        Interval::new(self.im.sub(&self.rad), self.im.add(&self.rad))
    }

    pub fn contains_zero(&self) -> bool {
        self.abs().lo.is_zero()
    }

    /// Whether the point `(x, y)` lies in the closed ball.
    pub fn contains_point(&self, x: &Dyadic, y: &Dyadic) -> bool {
        let dx = self.re.sub(x);
        let dy = self.im.sub(y);
        dx.mul(&dx).add(&dy.mul(&dy)) <= self.rad.mul(&self.rad)
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        if !self.imag_part().contains_zero() {
            return false;
        }
        let dx = &self.re.to_rational() - q;
        let dy = self.im.to_rational();
        let r = self.rad.to_rational();
        &(&dx * &dx) + &(&dy * &dy) <= &r * &r
    }

    /// Whether `other` lies inside `self`.
    pub fn contains_ball(&self, other: &ComplexBall) -> bool {
        if other.rad > self.rad {
            return false;
        }
        let dx = self.re.sub(&other.re);
        let dy = self.im.sub(&other.im);
        let slack = self.rad.sub(&other.rad);
        dx.mul(&dx).add(&dy.mul(&dy)) <= slack.mul(&slack)
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        let dx = self.re.sub(&other.re);
        let dy = self.im.sub(&other.im);
        let r = self.rad.add(&other.rad);
        dx.mul(&dx).add(&dy.mul(&dy)) <= r.mul(&r)
    }

    /// Enclosure of `max(log|z|, 0)` over the ball.
    pub fn log_plus(&self, prec: u64) -> Result<Interval> {
        let a = self.abs();
        let one = Dyadic::one();
        if a.hi <= one {
            return Ok(Interval::zero());
        }
        if a.lo.is_zero() {
            return Err(Error::IndeterminateLog);
        }
        let l = log_interval(&a, prec);
        let lo = if a.lo <= one {
            Dyadic::zero()
        } else {
            l.lo.max_ref(&Dyadic::zero())
        };
        Ok(Interval::new(lo, l.hi))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:.17e} + {:.17e}i) ± {:.3e}",
            self.re.to_f64(),
            self.im.to_f64(),
            self.rad.to_f64()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::ratio(p, d)
    }

    #[test]
    fn rational_containment_through_arithmetic() {
        let prec = 40;
        let xs = [q(1, 3), q(-7, 5), q(22, 7), q(1, 1000)];
        for a in &xs {
            for b in &xs {
                let ba = ComplexBall::from_rational(a, prec);
                let bb = ComplexBall::from_rational(b, prec);
                assert!(ba.add(&bb).contains_rational(&(a + b)));
                assert!(ba.sub(&bb).contains_rational(&(a - b)));
                assert!(ba.mul(&bb).contains_rational(&(a * b)));
                assert!(ba.div(&bb).unwrap().contains_rational(&(a / b)));
            }
        }
    }

    #[test]
    fn log_plus_cases() {
        let two = ComplexBall::from_int(&BigInt::from(2), 64);
        let l = two.log_plus(64).unwrap();
        assert!((l.to_f64() - 2f64.ln()).abs() < 1e-15);
        let half = ComplexBall::from_rational(&q(1, 2), 64);
        assert_eq!(half.log_plus(64).unwrap(), Interval::zero());
        let fuzzy = ComplexBall::new(Dyadic::zero(), Dyadic::zero(), Dyadic::from_i64(2), 64);
        assert_eq!(fuzzy.log_plus(64), Err(Error::IndeterminateLog));
    }

    #[test]
    fn complex_multiplication() {
        let i = ComplexBall::exact(Dyadic::zero(), Dyadic::one(), 64);
        let m1 = i.mul(&i);
        assert!(m1.contains_rational(&q(-1, 1)));
        assert!(i.pow(4).contains_rational(&q(1, 1)));
        let inv = i.recip().unwrap();
        assert!(inv.contains_point(&Dyadic::zero(), &Dyadic::from_i64(-1)));
    }
}
