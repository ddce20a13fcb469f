//! Dense univariate polynomials over Z and Q, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integer::gcd;
use super::rational::BigRational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·T^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `T^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[0] = BigInt::from(-1);
        v[n] = BigInt::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0 (check [`is_zero`](Self::is_zero)).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// `|P|`: the largest absolute value of a coefficient.
    pub fn max_abs(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `(δ(P), primitive part)` with the primitive part's leading coefficient
    /// made positive, so `content · primitive = ±P`.
    pub fn content_primitive(&self) -> Result<(BigInt, IntPolynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.content();
        let mut prim: Vec<BigInt> = self.coeffs.iter().map(|a| a / &c).collect();
        if prim.last().unwrap().is_negative() {
            prim.iter_mut().for_each(|a| *a = -&*a);
        }
        Ok((c, IntPolynomial::new(prim)))
    }

    pub fn primitive_part(&self) -> IntPolynomial {
        self.content_primitive().map(|(_, p)| p).unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // Homogenized Horner keeps everything integral until the last step.
        let (p, q) = (x.numer(), x.denom());
        let n = self.degree();
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for (i, c) in self.coeffs.iter().rev().enumerate() {
            if i == 0 {
                acc = c.clone();
            } else {
                qpow *= q;
                acc = acc * p + c * &qpow;
            }
        }
        if self.is_zero() {
            return BigRational::zero();
        }
        let _ = n;
        BigRational::new(acc, qpow)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigInt::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `P(T + c)`.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut acc = Self::zero();
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// `T^n P(1/T)`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// Exact quotient over Z, if `divisor` divides `self` in Z[T].
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.leading();
        let dd = divisor.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &IntPolynomial) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn to_rat(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(BigRational::from).collect())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn write_poly<T: fmt::Display + Signed + Zero + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = mag.is_one();
        match k {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "T")?,
            1 => write!(f, "{mag}T")?,
            _ if unit => write!(f, "T^{k}")?,
            _ => write!(f, "{mag}T^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_polynomial(s)
    }
}

/// Polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &BigRational::from(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &RatPolynomial) -> (RatPolynomial, RatPolynomial) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let q = &top / &dl;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&q * dc);
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &RatPolynomial) -> RatPolynomial {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &RatPolynomial) -> RatPolynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &RatPolynomial) -> (RatPolynomial, RatPolynomial, RatPolynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.leading().recip().unwrap();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Clears denominators and returns the primitive integer polynomial with
    /// positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        IntPolynomial::new(ints).primitive_part()
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;
    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;
    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;
    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RatPolynomial::new(out)
    }
}

impl fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "RatPolynomial[{}]", parts.join(", "))
    }
}

/// Square-free decomposition of a nonzero integer polynomial (Yun).
///
/// Returns primitive factors `g_i` with positive leading coefficient and
/// their multiplicities, so that `P = ±δ(P)·∏ g_i^{m_i}`. Constant factors
/// are dropped.
pub fn square_free_decomposition(p: &IntPolynomial) -> Result<Vec<(IntPolynomial, u32)>> {
    let (_, prim) = p.content_primitive()?;
    if prim.degree() == 0 {
        return Ok(Vec::new());
    }
    let f = prim.to_rat();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.div_rem(&a).0;
    let mut c = df.div_rem(&a).0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let g = b.gcd(&d);
        if g.degree() > 0 {
            out.push((g.to_primitive_int(), i));
        }
        b = b.div_rem(&g).0;
        if b.degree() == 0 {
            break;
        }
        c = d.div_rem(&g).0;
        d = &c - &b.derivative();
        i += 1;
    }
    a = RatPolynomial::zero();
    let _ = a;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn content_primitive_examples() {
        let (c, q) = p(&[2, -4, 6]).content_primitive().unwrap();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(q, p(&[1, -2, 3]));
        let (c, q) = p(&[-3, 1]).content_primitive().unwrap();
        assert_eq!((c, q), (BigInt::one(), p(&[-3, 1])));
        let (c, q) = p(&[1, 4, -4]).content_primitive().unwrap();
        assert_eq!((c, q), (BigInt::one(), p(&[-1, -4, 4])));
        assert_eq!(
            IntPolynomial::zero().content_primitive(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn display_round_trip() {
        let q = p(&[-3, -6, 0, 4]);
        assert_eq!(q.to_string(), "4T^3-6T-3");
        assert_eq!("4T^3-6T-3".parse::<IntPolynomial>().unwrap(), q);
        assert_eq!(p(&[0, -1]).to_string(), "-T");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn division_and_shift() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[0, 0, 1]).shift(&BigInt::from(1)), p(&[1, 2, 1]));
        assert_eq!(
            a.eval_rational(&BigRational::ratio(1, 2)),
            BigRational::ratio(-3, 4)
        );
    }

    #[test]
    fn yun_decomposition() {
        // (T-1)^2 (T+2)^3 (T^2+1)
        let t1 = p(&[-1, 1]);
        let t2 = p(&[2, 1]);
        let t3 = p(&[1, 0, 1]);
        let f = &(&t1.pow(2) * &t2.pow(3)) * &t3.scale(&BigInt::from(-5));
        let sf = square_free_decomposition(&f).unwrap();
        assert_eq!(sf, vec![(t3, 1), (t1, 2), (t2, 3)]);
    }

    #[test]
    fn ext_gcd_identity() {
        let a = p(&[-2, 0, 1]).to_rat();
        let b = p(&[1, 1]).to_rat();
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, RatPolynomial::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
