//! Arbitrary-precision rationals, always kept in lowest terms with a positive
//! denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::integer::gcd;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigRational {
    num: BigInt,
    den: BigInt,
}

impl BigRational {
    /// Builds `num/den` reduced to lowest terms. Panics on a zero denominator.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Self { num, den }
        } else {
            Self {
                num: num / &g,
                den: den / g,
            }
        }
    }

    pub fn from_integer(n: BigInt) -> Self {
        Self {
            num: n,
            den: BigInt::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let e = e as usize;
        // Lowest terms are preserved under powers.
        Ok(Self {
            num: num_traits::pow(self.num.clone(), e),
            den: num_traits::pow(self.den.clone(), e),
        })
    }

    pub fn floor(&self) -> BigInt {
        num_integer::Integer::div_floor(&self.num, &self.den)
    }

    /// Nearest f64 (for display and heuristics only).
    pub fn to_f64(&self) -> f64 {
        let nb = self.num.bits() as i64;
        let db = self.den.bits() as i64;
        let shift = nb - db - 60;
        let (n, d) = if shift > 0 {
            (self.num.clone(), &self.den << (shift as u64))
        } else {
            (&self.num << ((-shift) as u64), self.den.clone())
        };
        let q = n / d;
        let q: f64 = num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN);
        q * 2f64.powi(shift.clamp(-2000, 2000) as i32)
    }
}

impl Zero for BigRational {
    fn zero() -> Self {
        Self {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for BigRational {
    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl From<BigInt> for BigRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<i64> for BigRational {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl<'a> Add<&'a BigRational> for &'a BigRational {
    type Output = BigRational;
    fn add(self, rhs: &BigRational) -> BigRational {
        if self.den == rhs.den {
            return BigRational::new(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return BigRational {
                num: &self.num * &rhs.den + &rhs.num,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return BigRational {
                num: &rhs.num * &self.den + &self.num,
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &rhs.den);
        let a = &self.den / &g;
        let b = &rhs.den / &g;
        let num = &self.num * &b + &rhs.num * &a;
        if num.is_zero() {
            return BigRational::zero();
        }
        // Any common factor of num and a*b*g divides g.
        let g2 = gcd(&num, &g);
        BigRational {
            num: num / &g2,
            den: a * (&rhs.den / &g2),
        }
    }
}

impl<'a> Sub<&'a BigRational> for &'a BigRational {
    type Output = BigRational;
    fn sub(self, rhs: &BigRational) -> BigRational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BigRational> for &'a BigRational {
    type Output = BigRational;
    fn mul(self, rhs: &BigRational) -> BigRational {
        if self.num.is_zero() || rhs.num.is_zero() {
            return BigRational::zero();
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        BigRational {
            num: (&self.num / &g1) * (&rhs.num / &g2),
            den: (&self.den / &g2) * (&rhs.den / &g1),
        }
    }
}

impl<'a> Div<&'a BigRational> for &'a BigRational {
    type Output = BigRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &BigRational) -> BigRational {
        self * &rhs.recip().expect("division by zero rational")
    }
}

impl Neg for &BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigRational> for BigRational {
            type Output = BigRational;
            fn $m(self, rhs: BigRational) -> BigRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BigRational> for BigRational {
            type Output = BigRational;
            fn $m(self, rhs: &BigRational) -> BigRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl PartialOrd for BigRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigRational {
    type Err = Error;

    /// Accepts `p`, `p/q` and finite decimals such as `-2.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::new(p, q));
        }
        if let Some((ip, fp)) = s.split_once('.') {
            if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = ip.trim_start().starts_with('-');
            let ip: BigInt = if ip == "-" || ip.is_empty() {
                BigInt::zero()
            } else {
                ip.parse().map_err(|_| bad())?
            };
            let frac: BigInt = fp.parse().map_err(|_| bad())?;
            let scale = num_traits::pow(BigInt::from(10), fp.len());
            let mag = ip.abs() * &scale + frac;
            return Ok(Self::new(if neg { -mag } else { mag }, scale));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Self::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::ratio(p, d)
    }

    #[test]
    fn normalizes() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(q(0, -7), BigRational::zero());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!(&q(1, 2) - &q(1, 2), BigRational::zero());
        assert_eq!(&q(2, 3) * &q(9, 4), q(3, 2));
        assert_eq!(&q(2, 3) / &q(4, 9), q(3, 2));
        assert_eq!(q(-2, 3).pow(-2).unwrap(), q(9, 4));
        assert!(q(1, 3) < q(1, 2));
        assert_eq!(q(-7, 2).floor(), BigInt::from(-4));
    }

    #[test]
    fn parses() {
        assert_eq!("3/-6".parse::<BigRational>().unwrap(), q(-1, 2));
        assert_eq!("-2.25".parse::<BigRational>().unwrap(), q(-9, 4));
        assert_eq!("-0.5".parse::<BigRational>().unwrap(), q(-1, 2));
        assert_eq!("17".parse::<BigRational>().unwrap(), q(17, 1));
        assert!("1/0".parse::<BigRational>().is_err());
        assert!("x".parse::<BigRational>().is_err());
        assert_eq!(q(-9, 4).to_string(), "-9/4");
    }

    #[test]
    fn huge_dyadic_sum_is_fast() {
        // Sum 2^-k! for k = 1..9 exactly; denominators up to 2^362880.
        let mut acc = BigRational::zero();
        let mut fact = 1i64;
        for k in 1..=9 {
            fact *= k;
            acc = &acc + &q(1, 2).pow(fact).unwrap();
        }
        assert_eq!(acc.denom().bits(), 362_881);
        assert!((acc.to_f64() - 0.765_625_059_604_644_8).abs() < 1e-15);
    }
}
