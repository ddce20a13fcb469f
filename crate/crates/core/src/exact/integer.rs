//! Integer helpers on top of `num-bigint`.
//!
//! `num-integer`'s gcd is a plain binary gcd, which is quadratic in the bit
//! length. Partial sums of lacunary series routinely produce numerators and
//! denominators with millions of bits whose gcd is a power of two (or a power
//! of some other small integer), so [`gcd`] strips those cases first.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Non-negative gcd of two integers.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(gcd_nat(a.magnitude(), b.magnitude()))
}

pub fn gcd_nat(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_one() || b.is_one() {
        return BigUint::one();
    }
    let za = a.trailing_zeros().unwrap_or(0);
    let zb = b.trailing_zeros().unwrap_or(0);
    let shift = za.min(zb);
    let mut x = a >> za;
    let mut y = b >> zb;
    if x.is_one() || y.is_one() {
        return BigUint::one() << shift;
    }
    // Euclid while the operands are unbalanced or small, binary steps otherwise.
    loop {
        if x < y {
            std::mem::swap(&mut x, &mut y);
        }
        if y.is_zero() {
            break;
        }
        if y.is_one() {
            x = BigUint::one();
            break;
        }
        if y.bits() <= 64 {
            let small = y.to_u64().unwrap();
            let r = (&x % &y).to_u64().unwrap();
            x = BigUint::from(small.gcd(&r));
            break;
        }
        if x.bits() > y.bits() + 16 {
            x = &x % &y;
        } else {
            x -= &y;
            if x.is_zero() {
                x = y.clone();
                break;
            }
            let z = x.trailing_zeros().unwrap_or(0);
            x >>= z;
        }
    }
    let g = if x.is_zero() { y } else { x };
    // Odd parts were gcd'ed; restore the common power of two.
    let tz = g.trailing_zeros().unwrap_or(0);
    let g = g >> tz;
    g << shift
}

/// Floor of the `k`-th root of a non-negative integer.
pub fn nth_root_floor(n: &BigUint, k: u32) -> BigUint {
    n.nth_root(k)
}

/// Exact `k`-th root of `n` (any sign for odd `k`), if it exists.
pub fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if n.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let r = nth_root_floor(n.magnitude(), k);
    if num_traits::pow(r.clone(), k as usize) == *n.magnitude() {
        let r = BigInt::from_biguint(Sign::Plus, r);
        Some(if n.is_negative() { -r } else { r })
    } else {
        None
    }
}

/// Integer square root test.
pub fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && exact_nth_root(n, 2).is_some()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of a small positive integer.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Number of bits of `|n|` (0 for zero).
pub fn bit_len(n: &BigInt) -> u64 {
    n.bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn gcd_matches_num_integer() {
        let cases = [
            (12, 18),
            (0, 5),
            (7, 0),
            (1 << 40, 1 << 20),
            (3 * 5 * 7 * 11, 5 * 11 * 13),
            (-24, 36),
            (1_000_000_007, 998_244_353),
        ];
        for (a, b) in cases {
            assert_eq!(gcd(&big(a), &big(b)), big(a).gcd(&big(b)), "{a} {b}");
        }
    }

    #[test]
    fn gcd_large_power_of_two() {
        let q = BigInt::one() << 200_000;
        let p = (BigInt::one() << 199_999) + 1;
        assert_eq!(gcd(&p, &q), BigInt::one());
        let x = (BigInt::from(3) << 5000) * BigInt::from(7);
        let y = BigInt::from(21) << 100;
        assert_eq!(gcd(&x, &y), BigInt::from(21) << 100);
    }

    #[test]
    fn gcd_balanced_big_operands() {
        let a = num_traits::pow(BigInt::from(3), 300) * BigInt::from(10);
        let b = num_traits::pow(BigInt::from(3), 290) * BigInt::from(14);
        assert_eq!(gcd(&a, &b), a.gcd(&b));
    }

    #[test]
    fn roots_and_primes() {
        assert_eq!(exact_nth_root(&big(-8), 3), Some(big(-2)));
        assert_eq!(exact_nth_root(&big(-8), 2), None);
        assert_eq!(exact_nth_root(&big(81), 4), Some(big(3)));
        assert!(is_square(&big(0)));
        assert!(!is_square(&big(2)));
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(euler_phi(30), 8);
        assert_eq!(euler_phi(1), 1);
        assert!(is_prime_u64(97) && !is_prime_u64(91));
    }
}
