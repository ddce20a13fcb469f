//! Enclosures of `log` and `exp`.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;

thread_local! {
    static LN2: RefCell<Option<(u64, Interval)>> = const { RefCell::new(None) };
}

/// `2·atanh(u)` for an interval `u` with `u² ≤ 2^-bits_per_term`.
fn two_atanh(u: &Interval, bits_per_term: u64, wp: u64) -> Interval {
    let terms = wp / bits_per_term + 2;
    let u2 = u.sqr(wp);
    let mut power = u.clone();
    let mut sum = u.clone();
    for j in 1..=terms {
        power = power.mul(&u2, wp);
        let d = Interval::from_i64(2 * j as i64 + 1);
        sum = sum.add(&power.div(&d, wp).unwrap(), wp);
    }
    // Remainder: |Σ_{j>J} u^{2j+1}/(2j+1)| ≤ |u|^{2J+3}/(1 − u²) ≤ 2·|u²|^{J+1}.
    let tail = Dyadic::pow2(1 - (bits_per_term * (terms + 1)) as i64);
    sum.inflate(&tail, wp).scale_pow2(1)
}

/// Enclosure of `log 2` with at least `prec` correct bits.
pub fn ln2(prec: u64) -> Interval {
    if let Some(v) = LN2.with(|c| {
        c.borrow()
            .as_ref()
            .filter(|(p, _)| *p >= prec)
            .map(|(_, v)| v.clone())
    }) {
        return v;
    }
    let wp = prec + 32;
    let third = Interval::from_i64(1)
        .div(&Interval::from_i64(3), wp)
        .unwrap();
    // (1/3)² < 2^-3.
    let v = two_atanh(&third, 3, wp);
    LN2.with(|c| *c.borrow_mut() = Some((prec, v.clone())));
    v
}

/// Enclosure of `log x` for a positive dyadic `x`.
pub fn log_dyadic(x: &Dyadic, prec: u64) -> Interval {
    assert!(x.is_positive(), "log of a non-positive number");
    let wp = prec + 32;
    if x.mant().bits() > wp + 8 {
        let lo = x.round(wp + 8, Round::Down);
        let hi = x.round(wp + 8, Round::Up);
        return Interval::new(log_dyadic(&lo, prec).lo, log_dyadic(&hi, prec).hi);
    }
    let mut k = x.top();
    let mut y = x.mul_pow2(-k);
    if y < Dyadic::new(BigInt::from(3), -2) {
        y = y.mul_pow2(1);
        k -= 1;
    }
    // y ∈ [3/4, 3/2), u = (y − 1)/(y + 1) ∈ [−1/7, 1/5), u² < 2^-4.
    let yi = Interval::point(y);
    let one = Interval::from_i64(1);
    let u = yi.sub(&one, wp).div(&yi.add(&one, wp), wp).unwrap();
    let log_y = two_atanh(&u, 4, wp);
    if k == 0 {
        return log_y;
    }
    let kb = (k.unsigned_abs()).ilog2() as u64 + 2;
    let l2 = ln2(wp + kb);
    log_y.add(&l2.mul(&Interval::from_i64(k), wp + kb), wp)
}

/// Enclosure of `log` over a positive interval.
pub fn log_interval(x: &Interval, prec: u64) -> Interval {
    assert!(x.lo.is_positive(), "log of an interval reaching zero");
    if x.lo == x.hi {
        return log_dyadic(&x.lo, prec);
    }
    Interval::new(log_dyadic(&x.lo, prec).lo, log_dyadic(&x.hi, prec).hi)
}

/// Enclosure of `log n` for a positive integer.
pub fn log_int(n: &BigInt, prec: u64) -> Interval {
    log_dyadic(&Dyadic::from_int(n), prec)
}

/// Enclosure of `exp x` for a dyadic with `|x| < 2^62`.
pub fn exp_dyadic(x: &Dyadic, prec: u64) -> Interval {
    if x.is_zero() {
        return Interval::from_i64(1);
    }
    let wp = prec + 32 + (x.top().max(0) as u64);
    let l2 = ln2(wp);
    let k = (x.to_f64() / std::f64::consts::LN_2).round();
    let k = k.to_i64().expect("exponent argument too large");
    let r = Interval::point(x.clone()).sub(&l2.mul(&Interval::from_i64(k), wp), wp);
    // |r| ≤ 0.35 + rounding < 1/2, so each Taylor term gains a bit.
    let mut term = Interval::from_i64(1);
    let mut sum = Interval::from_i64(1);
    let mut j = 1i64;
    loop {
        term = term.mul(&r, wp).div(&Interval::from_i64(j), wp).unwrap();
        sum = sum.add(&term, wp);
        // Remainder after term j is at most 2|term_j|·|r|/(j+1) ≤ |term_j|.
        let mag = term.abs().hi.clone();
        if mag.is_zero() || mag.top() < -(wp as i64) {
            sum = sum.inflate(&mag.max_ref(&Dyadic::pow2(-(wp as i64))), wp);
            break;
        }
        j += 1;
    }
    sum.scale_pow2(k)
}

pub fn exp_interval(x: &Interval, prec: u64) -> Interval {
    Interval::new(exp_dyadic(&x.lo, prec).lo, exp_dyadic(&x.hi, prec).hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(i: &Interval, v: f64, tol: f64) -> bool {
        (i.lo.to_f64() - v).abs() <= tol && (i.hi.to_f64() - v).abs() <= tol
    }

    #[test]
    fn log_values() {
        let l2 = ln2(200);
        assert!(close(&l2, std::f64::consts::LN_2, 1e-16));
        assert!(l2.width().top() < -190);
        let l3 = log_int(&BigInt::from(3), 100);
        assert!(close(&l3, 3f64.ln(), 1e-15));
        let lhalf = log_dyadic(&Dyadic::pow2(-1), 64);
        assert!(close(&lhalf, -std::f64::consts::LN_2, 1e-16));
        let l1 = log_dyadic(&Dyadic::one(), 64);
        assert!(l1.contains(&Dyadic::zero()) && l1.width().top() < -60);
    }

    #[test]
    fn log_of_huge_power_of_two() {
        let x = Dyadic::pow2(-3_628_800);
        let l = log_dyadic(&x, 64);
        assert!(close(&l, -3_628_800.0 * std::f64::consts::LN_2, 1e-8));
        assert!(l.width().top() < -40);
    }

    #[test]
    fn exp_values() {
        let e = exp_dyadic(&Dyadic::one(), 100);
        assert!(close(&e, std::f64::consts::E, 1e-15));
        let e = exp_dyadic(&Dyadic::from_i64(-50), 80);
        assert!(close(&e, (-50f64).exp(), 1e-35));
        let back = log_interval(&exp_dyadic(&Dyadic::from_f64(0.3), 90), 90);
        assert!(back.contains(&Dyadic::from_f64(0.3)));
    }
}
