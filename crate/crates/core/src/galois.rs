//! Galois groups of irreducible integer polynomials of degree 2 to 4, and the
//! census of monic polynomials with constant term ±1.
//!
//! Quartics `T⁴ + aT³ + bT² + cT + d` are classified through the resolvent
//! cubic `x³ − b x² + (ac − 4d) x − (a²d − 4bd + c²)`:
//!
//! | resolvent over Q          | discriminant square | group |
//! |---------------------------|---------------------|-------|
//! | irreducible               | no                  | S4    |
//! | irreducible               | yes                 | A4    |
//! | three rational roots      | yes                 | V4    |
//! | one rational root `r`     | no                  | C4 or D4 |
//!
//! In the last row the group is C4 exactly when `x² − r x + d` and
//! `x² + a x + (b − r)` both split over `Q(√Δ)` (Kappe–Warren).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::integer::is_square;
use crate::exact::{factor_over_z, is_cyclotomic, IntPolynomial};
use crate::numerics::roots::{isolate_squarefree, precision_cap};
use crate::numerics::{ComplexBall, Dyadic};
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GroupLabel {
    S2,
    C3,
    S3,
    C4,
    V4,
    D4,
    A4,
    S4,
}

impl GroupLabel {
    pub fn degree(self) -> usize {
        match self {
            GroupLabel::S2 => 2,
            GroupLabel::C3 | GroupLabel::S3 => 3,
            _ => 4,
        }
    }

    /// Whether this is the full symmetric group of its degree.
    pub fn is_symmetric(self) -> bool {
        matches!(self, GroupLabel::S2 | GroupLabel::S3 | GroupLabel::S4)
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Determinant of an integer matrix by fraction-free elimination.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two nonzero polynomials via the Sylvester matrix.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> BigInt {
    let (n, m) = (p.degree(), q.degree());
    if n + m == 0 {
        return BigInt::one();
    }
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    bareiss(rows)
}

/// `disc(P) = (−1)^{n(n−1)/2} Res(P, P′) / lc(P)`.
pub fn discriminant(p: &IntPolynomial) -> BigInt {
    let n = p.degree();
    let r = resultant(p, &p.derivative());
    let d = r / p.leading();
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

/// Distinct integer roots of a monic integer polynomial.
fn integer_roots(p: &IntPolynomial) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut q = p.clone();
    while !q.is_zero() && q.degree() > 0 && q.coeff(0).is_zero() {
        q = q.div_exact(&IntPolynomial::from_i64s(&[0, 1])).unwrap();
        if !out.contains(&BigInt::zero()) {
            out.push(BigInt::zero());
        }
    }
    let c0 = q.coeff(0).abs();
    if c0.is_zero() {
        return out;
    }
    let small = c0.to_u64().filter(|&v| v <= 1 << 40);
    let cands: Vec<BigInt> = match small {
        Some(v) => crate::exact::integer::divisors(v)
            .into_iter()
            .map(BigInt::from)
            .collect(),
        None => {
            // Roots are bounded by 1 + max|coeff| (Cauchy); scan that range.
            let b = q.max_abs().to_i64().unwrap_or(i64::MAX).min(1 << 20) + 1;
            (1..=b)
                .map(BigInt::from)
                .filter(|x| (&c0 % x).is_zero())
                .collect()
        }
    };
    for x in cands {
        for y in [x.clone(), -x] {
            if q.eval_int(&y).is_zero() && !out.contains(&y) {
                out.push(y);
            }
        }
    }
    out.sort();
    out
}

fn square_or_delta_square(v: &BigInt, delta: &BigInt) -> bool {
    v.is_zero() || is_square(v) || is_square(&(v * delta))
}

/// Galois group of a monic irreducible polynomial of degree 2, 3 or 4.
pub fn galois_group(p: &IntPolynomial) -> Result<GroupLabel> {
    let n = p.degree();
    if !(2..=4).contains(&n) {
        return Err(Error::Invalid(format!(
            "Galois classification covers degrees 2 to 4, got {n}"
        )));
    }
    if !p.is_monic() {
        return Err(Error::Invalid(format!("{p} is not monic")));
    }
    if !factor_over_z(p)?.is_irreducible() {
        return Err(Error::Invalid(format!("{p} is reducible over Z")));
    }
    let disc = discriminant(p);
    let square = is_square(&disc);
    Ok(match n {
        2 => GroupLabel::S2,
        3 if square => GroupLabel::C3,
        3 => GroupLabel::S3,
        _ => {
            let (a, b, c, d) = (p.coeff(3), p.coeff(2), p.coeff(1), p.coeff(0));
            let res = IntPolynomial::new(vec![
                -(&a * &a * &d - BigInt::from(4) * &b * &d + &c * &c),
                &a * &c - BigInt::from(4) * &d,
                -b.clone(),
                BigInt::one(),
            ]);
            let roots = integer_roots(&res);
            match roots.len() {
                0 if square => GroupLabel::A4,
                0 => GroupLabel::S4,
                1 => {
                    let r = &roots[0];
                    let d1 = r * r - BigInt::from(4) * &d;
                    let d2 = &a * &a - BigInt::from(4) * (&b - r);
                    if square_or_delta_square(&d1, &disc) && square_or_delta_square(&d2, &disc) {
                        GroupLabel::C4
                    } else {
                        GroupLabel::D4
                    }
                }
                _ => GroupLabel::V4,
            }
        }
    })
}

/// Certified root of smallest modulus, strictly inside the unit disk, of a
/// monic irreducible non-cyclotomic polynomial with `|P(0)| = 1`.
pub fn kronecker_small_root(p: &IntPolynomial) -> Result<ComplexBall> {
    if p.degree() == 0 || !p.is_monic() {
        return Err(Error::Invalid(format!("{p} must be monic and nonconstant")));
    }
    if p.coeff(0).abs() != BigInt::one() {
        return Err(Error::Invalid(format!("{p} must have constant term ±1")));
    }
    if !factor_over_z(p)?.is_irreducible() {
        return Err(Error::Invalid(format!("{p} is reducible over Z")));
    }
    if let Some(n) = is_cyclotomic(p)? {
        return Err(Error::KroneckerPremise(format!(
            "{p} is the cyclotomic polynomial of order {n}"
        )));
    }
    let one = Dyadic::one();
    let mut prec = 64;
    loop {
        if prec > precision_cap() {
            return Err(Error::PrecisionCap {
                cap: precision_cap(),
            });
        }
        let roots = isolate_squarefree(p, prec)?;
        let mut inside: Vec<(ComplexBall, Dyadic, f64)> = roots
            .into_iter()
            .filter_map(|r| {
                let a = r.abs();
                (a.hi < one).then(|| {
                    let (x, y) = r.to_f64_pair();
                    (r, a.mid(), y.atan2(x))
                })
            })
            .collect();
        if !inside.is_empty() {
            inside.sort_by(|a, b| a.1.cmp(&b.1).then(a.2.total_cmp(&b.2)));
            return Ok(inside.swap_remove(0).0);
        }
        prec *= 2;
    }
}

/// One enumerated polynomial in a census.
#[derive(Clone, Debug)]
pub struct CensusRow {
    pub poly: IntPolynomial,
    pub group: Option<GroupLabel>,
    pub cyclotomic: bool,
    pub small_root: Option<ComplexBall>,
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub m: usize,
    pub x: u64,
    pub total: u64,
    pub sm_count: u64,
    pub non_sm_count: u64,
    pub cyclotomic_excluded: u64,
    pub small_root_found: u64,
    pub bound_rhs: BigInt,
    /// Least `C ≥ 0` with `sm_count ≥ bound_rhs − C·X^{m−3/2}·log X`
    /// (`None` when `X = 1` and no such constant exists).
    pub fitted_c: Option<f64>,
    pub rows: Vec<CensusRow>,
}

impl CountReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "X": self.x,
            "constant_terms": [1, -1],
            "total": self.total,
            "sm_count": self.sm_count,
            "non_sm_count": self.non_sm_count,
            "cyclotomic_excluded": self.cyclotomic_excluded,
            "small_root_found": self.small_root_found,
            "bound_rhs": self.bound_rhs.to_string(),
            "fitted_C": self.fitted_c.map(|c| format!("{c:.9e}")),
            "fitted_C_note": "empirical fit over this census, not the asymptotic constant",
        })
    }

    /// Per-polynomial classification table.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("polynomial,group,cyclotomic,small_root_re,small_root_im\n");
        for r in &self.rows {
            let g = r
                .group
                .map(|g| g.to_string())
                .unwrap_or_else(|| "reducible".into());
            let (re, im) = match &r.small_root {
                Some(b) => {
                    let (x, y) = b.to_f64_pair();
                    (format!("{x:.15e}"), format!("{y:.15e}"))
                }
                None => (String::new(), String::new()),
            };
            s.push_str(&format!("{},{g},{},{re},{im}\n", r.poly, r.cyclotomic));
        }
        s
    }

    pub fn small_root_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .filter_map(|r| {
                    r.small_root
                        .as_ref()
                        .map(|b| json!({"poly": r.poly.to_string(), "root": report::ball(b)}))
                })
                .collect(),
        )
    }
}

/// Default limit on the number of enumerated polynomials.
pub const DEFAULT_CENSUS_BUDGET: u64 = 5_000_000;

/// Least `C` making `sm ≥ rhs − C·X^{m−3/2}·log X`.
fn fit_c(m: usize, x: u64, sm: u64, rhs: &BigInt) -> Option<f64> {
    let deficit = rhs.to_f64().unwrap_or(f64::INFINITY) - sm as f64;
    if deficit <= 0.0 {
        return Some(0.0);
    }
    let scale = (x as f64).powf(m as f64 - 1.5) * (x as f64).ln();
    if scale > 0.0 {
        Some(deficit / scale)
    } else {
        None
    }
}

/// Largest per-report fitted constant over a grid; the bound then holds on
/// every grid point.
pub fn fit_constant(reports: &[CountReport]) -> Option<f64> {
    reports
        .iter()
        .try_fold(0.0f64, |acc, r| r.fitted_c.map(|c| acc.max(c)))
}

/// Whether `sm_count ≥ bound_rhs − C·X^{m−3/2}·log X`.
pub fn bound_holds(r: &CountReport, c: f64) -> bool {
    let x = r.x as f64;
    let rhs = r.bound_rhs.to_f64().unwrap_or(f64::INFINITY) - c * x.powf(r.m as f64 - 1.5) * x.ln();
    r.sm_count as f64 >= rhs - 1e-9 * rhs.abs()
}

/// Enumerates `T^m + c_{m−1}T^{m−1} + ⋯ + c_1 T + c_0` with `|c_i| ≤ X` and
/// `c_0 = ±1`, classifying each.
pub fn count_sm(m: usize, x: u64, budget: u64) -> Result<CountReport> {
    if !(2..=4).contains(&m) {
        return Err(Error::Invalid(format!(
            "census degree must be 2, 3 or 4, got {m}"
        )));
    }
    if x == 0 {
        return Err(Error::Invalid("X must be positive".into()));
    }
    let side = 2 * x + 1;
    let total = side
        .checked_pow(m as u32 - 1)
        .and_then(|v| v.checked_mul(2))
        .unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::Budget {
            needed: total,
            budget,
        });
    }
    let xi = x as i64;
    let mut rows = Vec::with_capacity(total as usize);
    let (mut sm, mut cyc, mut small) = (0u64, 0u64, 0u64);
    for c0 in [1i64, -1] {
        for idx in 0..side.pow(m as u32 - 1) {
            let mut coeffs = vec![c0];
            let mut r = idx;
            for _ in 1..m {
                coeffs.push((r % side) as i64 - xi);
                r /= side;
            }
            coeffs.push(1);
            let poly = IntPolynomial::from_i64s(&coeffs);
            let mut row = CensusRow {
                poly: poly.clone(),
                group: None,
                cyclotomic: false,
                small_root: None,
            };
            if factor_over_z(&poly)?.is_irreducible() {
                let g = galois_group(&poly)?;
                row.group = Some(g);
                if g.is_symmetric() {
                    sm += 1;
                    if is_cyclotomic(&poly)?.is_some() {
                        row.cyclotomic = true;
                        cyc += 1;
                    } else {
                        row.small_root = Some(kronecker_small_root(&poly)?);
                        small += 1;
                    }
                }
            }
            rows.push(row);
        }
    }
    let bound_rhs = BigInt::from(2u32).pow(m as u32) * BigInt::from(x).pow(m as u32 - 1);
    let fitted_c = fit_c(m, x, sm, &bound_rhs);
    Ok(CountReport {
        m,
        x,
        total,
        sm_count: sm,
        non_sm_count: total - sm,
        cyclotomic_excluded: cyc,
        small_root_found: small,
        bound_rhs,
        fitted_c,
        rows,
    })
}

/// Integer square test used by callers that want the discriminant verdict.
pub fn discriminant_is_square(p: &IntPolynomial) -> bool {
    is_square(&discriminant(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&p("T^3-2")), BigInt::from(-108));
        assert_eq!(discriminant(&p("T^3-3T-1")), BigInt::from(81));
        assert_eq!(discriminant(&p("T^2-2")), BigInt::from(8));
        assert_eq!(discriminant(&p("T^4+1")), BigInt::from(256));
        assert_eq!(discriminant(&p("T^4+T^3+T^2+T+1")), BigInt::from(125));
    }

    #[test]
    fn group_examples() {
        assert_eq!(galois_group(&p("T^3-2")).unwrap(), GroupLabel::S3);
        assert_eq!(galois_group(&p("T^3-3T-1")).unwrap(), GroupLabel::C3);
        assert_eq!(galois_group(&p("T^4+1")).unwrap(), GroupLabel::V4);
        assert_eq!(galois_group(&p("T^4-2")).unwrap(), GroupLabel::D4);
        assert_eq!(galois_group(&p("T^4+T^3+T^2+T+1")).unwrap(), GroupLabel::C4);
        assert_eq!(galois_group(&p("T^4+T+1")).unwrap(), GroupLabel::S4);
        // T⁴ + 8T + 12 has Galois group A4.
        assert_eq!(galois_group(&p("T^4+8T+12")).unwrap(), GroupLabel::A4);
        assert!(galois_group(&p("T^4-1")).is_err());
        assert!(galois_group(&p("T^5-2")).is_err());
    }

    #[test]
    fn small_roots() {
        let b = kronecker_small_root(&p("T^2-3T+1")).unwrap();
        assert!((b.re.to_f64() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
        let b = kronecker_small_root(&p("T^3+T^2-1")).unwrap();
        assert!(b.is_real() && (b.re.to_f64() - 0.7548776662).abs() < 1e-9);
        assert!(matches!(
            kronecker_small_root(&p("T^2+1")),
            Err(Error::KroneckerPremise(_))
        ));
    }

    #[test]
    fn quadratic_census() {
        let r = count_sm(2, 3, DEFAULT_CENSUS_BUDGET).unwrap();
        assert_eq!((r.total, r.sm_count), (14, 11));
        let r = count_sm(2, 1, DEFAULT_CENSUS_BUDGET).unwrap();
        assert_eq!((r.total, r.sm_count, r.cyclotomic_excluded), (6, 5, 3));
        assert_eq!(r.small_root_found, 2);
        assert_eq!(count_sm(3, 2, DEFAULT_CENSUS_BUDGET).unwrap().total, 50);
        assert!(matches!(count_sm(4, 100, 1000), Err(Error::Budget { .. })));
    }
}
