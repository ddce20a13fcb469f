//! Radical extensions `Q(a^{1/m})`: degree, intermediate fields, and the
//! power-basis expansion of `Σ_{k<m} (a^{1/m})^{k!}`.
//!
//! Branch convention: for `a > 0` the positive real root; for `a < 0` and odd
//! `m` the negative real root; for `a < 0` and even `m` the principal root
//! `|a|^{1/m} e^{iπ/m}`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::integer::{divisors, exact_nth_root, prime_divisors};
use crate::exact::{factor_over_z, BigRational, IntPolynomial};
use crate::field::{element_degree, minimal_polynomial, NFElement, NumberField};
use crate::numerics::roots::{eval_rat_poly, isolate_squarefree, precision_cap};
use crate::numerics::ComplexBall;
use crate::report;
use crate::series::{partial_sum, SeriesSpec};

/// Whether `a = b^p` for a rational `b`.
pub fn is_pth_power(a: &BigRational, p: u32) -> bool {
    if a.numer().is_zero() {
        return true;
    }
    exact_nth_root(a.numer(), p).is_some() && exact_nth_root(a.denom(), p).is_some()
}

/// Whether `a = −4 b⁴` for a rational `b`.
pub fn is_minus_four_fourth_power(a: &BigRational) -> bool {
    let q = a / &BigRational::from_i64(-4);
    q.is_positive() && is_pth_power(&q, 4)
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub base: BigRational,
    pub m: u64,
    pub failing_primes: Vec<u64>,
    pub minus4_flag: bool,
    pub degree: usize,
    /// Degrees `d | m` of the intermediate fields `Q(a^{1/d})`; `None` when
    /// the hypotheses for listing them are not met.
    pub subfield_degrees: Option<Vec<u64>>,
    /// `"lemma"` when the degree followed from the power tests alone,
    /// `"factorization"` when `T^m − a` had to be factored.
    pub method: &'static str,
    /// Minimal polynomial of the chosen root.
    pub minimal_polynomial: IntPolynomial,
}

impl RadicalReport {
    pub fn to_json(&self) -> Value {
        json!({
            "base": report::rational(&self.base),
            "m": self.m,
            "failing_primes": self.failing_primes,
            "minus4_flag": self.minus4_flag,
            "degree": self.degree,
            "subfield_degrees": match &self.subfield_degrees {
                Some(v) => json!(v),
                None => json!("not determined"),
            },
            "method": self.method,
            "minimal_polynomial": self.minimal_polynomial.to_string(),
        })
    }
}

/// `den·T^m − num`, whose roots are the `m`-th roots of `a`.
fn radical_poly(a: &BigRational, m: u64) -> Result<IntPolynomial> {
    let m = usize::try_from(m).map_err(|_| Error::Invalid("m too large".into()))?;
    let mut c = vec![BigInt::zero(); m + 1];
    c[0] = -a.numer().clone();
    c[m] = a.denom().clone();
    Ok(IntPolynomial::new(c))
}

fn check_args(a: &BigRational, m: u64) -> Result<()> {
    if a.numer().is_zero() {
        return Err(Error::Invalid("the radicand must be nonzero".into()));
    }
    if m == 0 {
        return Err(Error::Invalid("m must be at least 1".into()));
    }
    if m > 64 {
        return Err(Error::Invalid(format!(
            "m = {m} exceeds the supported range (≤ 64)"
        )));
    }
    Ok(())
}

/// Ball around the chosen branch of `a^{1/m}`.
pub fn branch_root(a: &BigRational, m: u64, precision: u64) -> Result<ComplexBall> {
    check_args(a, m)?;
    let p = radical_poly(a, m)?;
    let roots = isolate_squarefree(&p, precision)?;
    let pick = if a.is_positive() {
        roots
            .into_iter()
            .find(|r| r.is_real() && r.re.is_positive())
    } else if m % 2 == 1 {
        roots
            .into_iter()
            .find(|r| r.is_real() && r.re.is_negative())
    } else {
        // Smallest positive argument: largest real part in the upper half plane.
        roots
            .into_iter()
            .filter(|r| r.im.is_positive())
            .max_by(|x, y| x.re.cmp(&y.re))
    };
    pick.ok_or_else(|| Error::CrossCheck(format!("no root of {p} matches the branch convention")))
}

/// Irreducible factor of `f` vanishing at the root isolated by `ball`.
fn factor_at(
    factors: &[IntPolynomial],
    ball: &ComplexBall,
    a: &BigRational,
    m: u64,
) -> Result<IntPolynomial> {
    let mut prec = ball.prec.max(64);
    let mut ball = ball.clone();
    loop {
        let hits: Vec<&IntPolynomial> = factors
            .iter()
            .filter(|f| eval_rat_poly(&f.to_rat(), &ball.with_prec(prec + 32)).contains_zero())
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0].clone());
        }
        prec *= 2;
        if prec > precision_cap() {
            return Err(Error::PrecisionCap {
                cap: precision_cap(),
            });
        }
        ball = branch_root(a, m, prec)?;
    }
}

/// Degree of `a^{1/m}` by factoring `T^m − a` over Z.
pub fn radical_degree_by_factoring(a: &BigRational, m: u64) -> Result<IntPolynomial> {
    check_args(a, m)?;
    let p = radical_poly(a, m)?;
    let fac = factor_over_z(&p)?;
    let factors: Vec<IntPolynomial> = fac.factors.iter().map(|(f, _)| f.clone()).collect();
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    factor_at(&factors, &branch_root(a, m, 64)?, a, m)
}

/// Degree and intermediate fields of `Q(a^{1/m})`.
pub fn radical_degree(a: &BigRational, m: u64) -> Result<RadicalReport> {
    check_args(a, m)?;
    let failing_primes: Vec<u64> = prime_divisors(m)
        .into_iter()
        .filter(|&p| is_pth_power(a, p as u32))
        .collect();
    let minus4_flag = m.is_multiple_of(4) && is_minus_four_fourth_power(a);
    let (method, minpoly) = if failing_primes.is_empty() && !minus4_flag {
        ("lemma", radical_poly(a, m)?.primitive_part())
    } else {
        ("factorization", radical_degree_by_factoring(a, m)?)
    };
    let degree = minpoly.degree();
    let subfield_degrees = (degree as u64 == m && a.is_positive()).then(|| divisors(m));
    Ok(RadicalReport {
        base: a.clone(),
        m,
        failing_primes,
        minus4_flag,
        degree,
        subfield_degrees,
        method,
        minimal_polynomial: minpoly,
    })
}

/// `Q(a^{1/m})` generated by the chosen branch.
pub fn radical_field(a: &BigRational, m: u64) -> Result<Arc<NumberField>> {
    let r = radical_degree(a, m)?;
    let mut prec = 64;
    let mut ball = branch_root(a, m, prec)?;
    loop {
        let roots = isolate_squarefree(&r.minimal_polynomial, prec)?;
        let hits: Vec<usize> = (0..roots.len())
            .filter(|&i| roots[i].overlaps(&ball))
            .collect();
        if hits.len() == 1 {
            return NumberField::with_box(&r.minimal_polynomial, &roots[hits[0]]);
        }
        prec *= 2;
        if prec > precision_cap() {
            return Err(Error::PrecisionCap {
                cap: precision_cap(),
            });
        }
        ball = branch_root(a, m, prec)?;
    }
}

#[derive(Clone, Debug)]
pub struct ColiouExpansion {
    pub a: BigRational,
    pub m: u64,
    pub coords: Vec<BigRational>,
    pub degree: usize,
    pub minimal_polynomial: IntPolynomial,
}

impl ColiouExpansion {
    pub fn to_json(&self) -> Value {
        json!({
            "a": report::rational(&self.a),
            "m": self.m,
            "coords": self.coords.iter().map(report::rational).collect::<Vec<_>>(),
            "degree": self.degree,
            "minimal_polynomial": self.minimal_polynomial.to_string(),
        })
    }
}

/// Coordinates `a_ℓ = Σ_{1 ≤ k < m, k! ≡ ℓ (mod m)} a^{(k! − ℓ)/m}`.
pub fn coliou_coords(a: &BigRational, m: u64) -> Result<Vec<BigRational>> {
    let mut coords = vec![BigRational::zero(); m as usize];
    let mut fact: u64 = 1;
    for k in 1..m {
        fact = fact
            .checked_mul(k)
            .ok_or_else(|| Error::IndexCap(format!("{k}! does not fit in 64 bits")))?;
        let l = fact % m;
        let e = (fact - l) / m;
        let e = i64::try_from(e).map_err(|_| Error::IndexCap(format!("exponent {e} too large")))?;
        coords[l as usize] = &coords[l as usize] + &a.pow(e)?;
    }
    Ok(coords)
}

/// `β = Σ_{k=1}^{m−1} (a^{1/m})^{k!}` in the power basis of `Q(a^{1/m})`,
/// from the closed formula and cross-checked against field arithmetic.
pub fn coliou_expansion(a: &BigRational, m: u64) -> Result<ColiouExpansion> {
    if !(a.is_positive() && a < &BigRational::one()) {
        return Err(Error::Invalid(format!(
            "expansion needs 0 < a < 1, got {a}"
        )));
    }
    if m < 2 {
        return Err(Error::Invalid("expansion needs m ≥ 2".into()));
    }
    let rep = radical_degree(a, m)?;
    if rep.degree as u64 != m {
        return Err(Error::Invalid(format!(
            "a^(1/m) has degree {} < m = {m}",
            rep.degree
        )));
    }
    let coords = coliou_coords(a, m)?;
    let field = radical_field(a, m)?;
    let series = SeriesSpec::factorial(1).compile()?;
    let beta: NFElement = partial_sum(&series, &field.generator(), m - 1)?;
    if beta.coords() != coords.as_slice() {
        return Err(Error::CrossCheck(format!(
            "closed-form coordinates {:?} differ from field arithmetic {:?}",
            coords,
            beta.coords()
        )));
    }
    if coords[1] < BigRational::one() {
        return Err(Error::CrossCheck(format!("a_1 = {} < 1", coords[1])));
    }
    let degree = element_degree(&beta);
    if degree as u64 != m {
        return Err(Error::CrossCheck(format!(
            "expansion has degree {degree}, expected {m}"
        )));
    }
    Ok(ColiouExpansion {
        a: a.clone(),
        m,
        coords,
        degree,
        minimal_polynomial: minimal_polynomial(&beta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::ratio(p, d)
    }

    #[test]
    fn power_tests() {
        assert!(is_pth_power(&q(4, 1), 2));
        assert!(!is_pth_power(&q(2, 1), 2));
        assert!(is_pth_power(&q(-8, 1), 3));
        assert!(!is_pth_power(&q(-4, 1), 2));
        assert!(is_pth_power(&q(8, 27), 3));
        assert!(is_minus_four_fourth_power(&q(-4, 1)));
        assert!(is_minus_four_fourth_power(&q(-1, 4)));
    }

    #[test]
    fn degrees() {
        let r = radical_degree(&q(2, 1), 4).unwrap();
        assert_eq!((r.degree, r.method), (4, "lemma"));
        assert_eq!(r.subfield_degrees, Some(vec![1, 2, 4]));
        assert_eq!(radical_degree(&q(4, 1), 2).unwrap().degree, 1);
        let r = radical_degree(&q(-4, 1), 4).unwrap();
        assert!(r.minus4_flag);
        assert_eq!(r.degree, 2);
        assert_eq!(r.minimal_polynomial, "T^2-2T+2".parse().unwrap());
        assert_eq!(r.subfield_degrees, None);
        assert_eq!(radical_degree(&q(4, 1), 4).unwrap().degree, 2);
        assert!(radical_degree(&q(0, 1), 3).is_err());
    }

    #[test]
    fn expansions() {
        let half = q(1, 2);
        let e = coliou_expansion(&half, 2).unwrap();
        assert_eq!(e.coords, vec![q(0, 1), q(1, 1)]);
        let e = coliou_expansion(&half, 3).unwrap();
        assert_eq!(e.coords, vec![q(0, 1), q(1, 1), q(1, 1)]);
        assert_eq!(e.minimal_polynomial, "4T^3-6T-3".parse().unwrap());
        let e = coliou_expansion(&q(1, 3), 4).unwrap();
        assert_eq!(e.coords, vec![q(0, 1), q(1, 1), q(4, 3), q(0, 1)]);
        assert_eq!(e.degree, 4);
        assert!(coliou_expansion(&q(1, 4), 2).is_err());
    }
}
