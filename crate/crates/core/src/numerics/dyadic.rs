//! Binary floating-point numbers `mant · 2^exp` with unbounded mantissa and
//! explicit rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    Nearest,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
            Round::Nearest => Round::Nearest,
        }
    }
}

/// `mant · 2^exp`, normalized so the mantissa is odd (or the value is zero
/// with `exp = 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Self { mant, exp }
        } else {
            Self {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn from_int(v: &BigInt) -> Self {
        Self::new(v.clone(), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Self {
            mant: BigInt::one(),
            exp: k,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), e - 1075)
        };
        Self::new(BigInt::from(m) * sign, e)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Smallest `k` with `|x| < 2^k` (for nonzero `x`).
    pub fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u64, mode: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let mut q = mag >> shift;
        // The mantissa is odd, so the discarded part is never zero.
        let bump = match (mode, neg) {
            (Round::Down, false) | (Round::Up, true) => false,
            (Round::Down, true) | (Round::Up, false) => true,
            (Round::Nearest, _) => {
                let half = mag.bit(shift - 1);
                let below = shift >= 2 && mag.trailing_zeros().unwrap_or(0) < shift - 1;
                half && (below || q.bit(0))
            }
        };
        if bump {
            q += 1u32;
        }
        let q = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q);
        Self::new(q, self.exp + shift as i64)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &o.mant << (o.exp - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self {
            mant: &self.mant * &o.mant,
            exp: self.exp + o.exp,
        }
    }

    /// Correctly rounded sum; avoids materializing huge exponent gaps.
    pub fn add_round(&self, o: &Self, prec: u64, mode: Round) -> Self {
        if self.is_zero() {
            return o.round(prec, mode);
        }
        if o.is_zero() {
            return self.round(prec, mode);
        }
        let (big, small) = if self.top() >= o.top() {
            (self, o)
        } else {
            (o, self)
        };
        let low_big = big.exp.min(big.top() - prec as i64 - 2);
        if small.top() < low_big {
            // `small` lies strictly below every bit that can influence the
            // rounding; only its sign matters.
            let sticky = Self::pow2(low_big - 1);
            let sticky = if small.is_negative() {
                sticky.neg()
            } else {
                sticky
            };
            return big.add(&sticky).round(prec, mode);
        }
        self.add(o).round(prec, mode)
    }

    pub fn sub_round(&self, o: &Self, prec: u64, mode: Round) -> Self {
        self.add_round(&o.neg(), prec, mode)
    }

    pub fn mul_round(&self, o: &Self, prec: u64, mode: Round) -> Self {
        self.mul(o).round(prec, mode)
    }

    /// Correctly rounded quotient. Panics on division by zero.
    pub fn div_round(&self, o: &Self, prec: u64, mode: Round) -> Self {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let s = (prec as i64 + 2 + o.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let n = self.mant.magnitude() << s;
        let (q, r) = n.div_rem(o.mant.magnitude());
        let neg = self.is_negative() != o.is_negative();
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        let e = self.exp - o.exp - s as i64;
        let v = if r.is_zero() {
            Self::new(BigInt::from_biguint(sign, q), e)
        } else {
            Self::new(BigInt::from_biguint(sign, (q << 1u32) + 1u32), e - 1)
        };
        v.round(prec, mode)
    }

    /// Correctly rounded square root of a non-negative value.
    pub fn sqrt_round(&self, prec: u64, mode: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let mut s = (2 * prec as i64 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let n = self.mant.magnitude() << s as u64;
        let r = n.sqrt();
        let e = (self.exp - s) / 2;
        let v = if &r * &r == n {
            Self::new(BigInt::from(r), e)
        } else {
            Self::new(BigInt::from((r << 1u32) + 1u32), e - 1)
        };
        v.round(prec, mode)
    }

    pub fn from_rational(q: &BigRational, prec: u64, mode: Round) -> Self {
        Self::from_int(q.numer()).div_round(&Self::from_int(q.denom()), prec, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// `⌊x⌋` as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            self.mant.div_floor(&(BigInt::one() << (-self.exp) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53, Round::Nearest);
        let m = r.mant.to_f64().unwrap();
        let e = r.exp.clamp(-1200, 1200) as i32;
        // Two steps keep subnormal and large exponents accurate.
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    pub fn max_ref(&self, o: &Self) -> Self {
        if self >= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    pub fn min_ref(&self, o: &Self) -> Self {
        if self <= o {
            self.clone()
        } else {
            o.clone()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let (sa, sb) = (self.mant.sign(), o.mant.sign());
        if sa != sb || sa == Sign::NoSign {
            return sa.cmp(&sb);
        }
        let pos = sa == Sign::Plus;
        let (ta, tb) = (self.top(), o.top());
        if ta != tb {
            let c = ta.cmp(&tb);
            return if pos { c } else { c.reverse() };
        }
        self.sub(o).mant.sign().cmp(&Sign::NoSign)
    }
}

/// Canonical text form `mant*2^exp` (or `0`).
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else if self.exp == 0 {
            write!(f, "{}", self.mant)
        } else {
            write!(f, "{}*2^{}", self.mant, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:e})", self, self.to_f64())
    }
}

impl std::str::FromStr for Dyadic {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        let bad = || crate::Error::Parse(format!("not a dyadic number: {s:?}"));
        let s = s.trim();
        match s.split_once("*2^") {
            Some((m, e)) => Ok(Self::new(
                m.parse().map_err(|_| bad())?,
                e.parse().map_err(|_| bad())?,
            )),
            None => Ok(Self::new(s.parse().map_err(|_| bad())?, 0)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes_and_orders() {
        assert_eq!(d(12, 0), d(3, 2));
        assert!(d(1, -1) < d(3, -2));
        assert!(d(-1, 10) < d(1, -10));
        assert!(d(-3, 0) < d(-1, 0));
        assert_eq!(d(3, -2).to_string(), "3*2^-2");
        assert_eq!("3*2^-2".parse::<Dyadic>().unwrap(), d(3, -2));
    }

    #[test]
    fn rounding_modes() {
        let x = d(0b10111, 0); // 23
        assert_eq!(x.round(3, Round::Down), d(20, 0));
        assert_eq!(x.round(3, Round::Up), d(24, 0));
        assert_eq!(x.round(3, Round::Nearest), d(24, 0));
        assert_eq!(x.neg().round(3, Round::Down), d(-24, 0));
        // Ties go to even.
        assert_eq!(d(0b1011, 0).round(3, Round::Nearest), d(12, 0));
        assert_eq!(d(0b1001, 0).round(3, Round::Nearest), d(8, 0));
    }

    #[test]
    fn division_and_sqrt_bracket() {
        let one = Dyadic::one();
        let three = d(3, 0);
        let lo = one.div_round(&three, 64, Round::Down);
        let hi = one.div_round(&three, 64, Round::Up);
        assert!(lo < hi);
        assert!(lo.mul(&three) < one && hi.mul(&three) > one);
        let two = d(2, 0);
        let s_lo = two.sqrt_round(100, Round::Down);
        let s_hi = two.sqrt_round(100, Round::Up);
        assert!(s_lo.mul(&s_lo) < two && s_hi.mul(&s_hi) > two);
        assert_eq!(d(9, 4).sqrt_round(10, Round::Down), d(3, 2));
    }

    #[test]
    fn sticky_addition_matches_exact() {
        let big = d(1, 0);
        let tiny = d(1, -1_000_000);
        assert_eq!(big.add_round(&tiny, 53, Round::Up), d((1 << 52) + 1, -52));
        assert_eq!(big.add_round(&tiny, 53, Round::Down), big);
        assert_eq!(
            big.add_round(&tiny.neg(), 53, Round::Down),
            d((1 << 53) - 1, -53)
        );
        assert_eq!(big.add_round(&tiny, 53, Round::Nearest), big);
    }

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -0.1, 3.5e-300, 1.7e308, 5e-324] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }
}
