//! Absolute logarithmic heights and polynomial heights.
//!
//! Heights of algebraic numbers are computed from the minimal polynomial:
//! `h(β) = (log|lc(M)| + Σ log⁺|root|) / deg M`. Rationals take the exact
//! route `log max(|p|, q)`. Every non-rational result is checked against the
//! sandwich `|log|M| − n·h| ≤ n·log 2`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{factor_over_z, BigRational, IntPolynomial};
use crate::field::{minimal_polynomial, NFElement};
use crate::numerics::elementary::{exp_interval, ln2, log_int};
use crate::numerics::roots::{isolate_squarefree, precision_cap};
use crate::numerics::{ComplexBall, Dyadic, Interval};
use crate::report;

/// Certified enclosure `[lower, upper]` of a height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightEnclosure {
    pub lower: Dyadic,
    pub upper: Dyadic,
    pub precision_used: u64,
}

impl HeightEnclosure {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lower.clone(), self.upper.clone())
    }

    pub fn width(&self) -> Dyadic {
        self.upper.sub(&self.lower)
    }

    pub fn to_f64(&self) -> f64 {
        self.interval().to_f64()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lower": report::dyadic(&self.lower),
            "upper": report::dyadic(&self.upper),
            "approx": format!("{:.12e}", self.to_f64()),
            "precision_used": self.precision_used,
        })
    }
}

/// Smallest `k` with `2^-k ≤ tol`.
fn bits_for(tol: f64) -> Result<u64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok((-tol.log2()).ceil().max(1.0) as u64)
}

fn width_ok(i: &Interval, tol: &Dyadic) -> bool {
    &i.width() <= tol
}

/// `h(β)` to within `tol`.
pub fn height(beta: &NFElement, tol: f64) -> Result<HeightEnclosure> {
    if let Some(q) = beta.as_rational() {
        return rational_height(&q, tol);
    }
    height_from_minpoly(&minimal_polynomial(beta), tol)
}

/// `h(p/q) = log max(|p|, q)`, exact up to the logarithm.
pub fn rational_height(q: &BigRational, tol: f64) -> Result<HeightEnclosure> {
    let bits = bits_for(tol)?;
    let m = q.numer().abs().max(q.denom().clone());
    if m.is_one() {
        return Ok(HeightEnclosure {
            lower: Dyadic::zero(),
            upper: Dyadic::zero(),
            precision_used: 0,
        });
    }
    let tol_d = Dyadic::from_f64(tol);
    let mut prec = bits + 8;
    loop {
        let l = log_int(&m, prec);
        if width_ok(&l, &tol_d) {
            return Ok(HeightEnclosure {
                lower: l.lo,
                upper: l.hi,
                precision_used: prec,
            });
        }
        prec *= 2;
        if prec > precision_cap() {
            return Err(Error::PrecisionCap {
                cap: precision_cap(),
            });
        }
    }
}

/// Height shared by all roots of an irreducible integer polynomial.
pub fn height_from_minpoly(m: &IntPolynomial, tol: f64) -> Result<HeightEnclosure> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = m.degree();
    if n == 0 {
        return Err(Error::Invalid("constant polynomial has no roots".into()));
    }
    if n == 1 {
        return rational_height(&BigRational::new(-m.coeff(0), m.coeff(1)), tol);
    }
    let bits = bits_for(tol)?;
    let tol_d = Dyadic::from_f64(tol);
    let nn = Interval::from_i64(n as i64);
    let lc = m.leading().abs();
    let mut prec = (bits + 8 + 64 - (n as u64).leading_zeros() as u64).max(64);
    loop {
        if prec > precision_cap() {
            return Err(Error::PrecisionCap {
                cap: precision_cap(),
            });
        }
        let wp = prec + 16;
        let roots = isolate_squarefree(m, prec)?;
        let mut sum = log_int(&lc, wp);
        let mut indeterminate = false;
        for r in &roots {
            match r.log_plus(wp) {
                Ok(l) => sum = sum.add(&l, wp),
                Err(Error::IndeterminateLog) => {
                    indeterminate = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if !indeterminate {
            let h = sum.div(&nn, wp).expect("degree is positive");
            if width_ok(&h, &tol_d) {
                let lower = h.lo.max_ref(&Dyadic::zero());
                let enc = HeightEnclosure {
                    lower,
                    upper: h.hi,
                    precision_used: prec,
                };
                sandwich_check(m, &enc)?;
                return Ok(enc);
            }
        }
        prec *= 2;
    }
}

/// Interval for `log|M| − n·h` and the bound `n·log 2`.
fn sandwich(m: &IntPolynomial, h: &HeightEnclosure, wp: u64) -> (Interval, Interval) {
    let n = Interval::from_i64(m.degree() as i64);
    let log_norm = log_int(&m.max_abs(), wp);
    let diff = log_norm.sub(&h.interval().mul(&n, wp), wp);
    (diff, ln2(wp).mul(&n, wp))
}

fn sandwich_check(m: &IntPolynomial, h: &HeightEnclosure) -> Result<()> {
    let (diff, bound) = sandwich(m, h, 64);
    let a = diff.abs();
    if a.lo > bound.hi {
        return Err(Error::CrossCheck(format!(
            "|log|M| - n h| = {:?} exceeds n log 2 = {:?} for {m}",
            a, bound
        )));
    }
    Ok(())
}

/// Affine height `log max|a_i|` and projective height `log max|a_i| − log δ`.
#[derive(Clone, Debug)]
pub struct PolyHeights {
    pub affine: Interval,
    pub projective: Interval,
}

impl PolyHeights {
    pub fn to_json(&self) -> Value {
        json!({
            "affine": report::interval(&self.affine),
            "projective": report::interval(&self.projective),
        })
    }
}

pub fn poly_heights(p: &IntPolynomial, prec: u64) -> Result<PolyHeights> {
    let (content, _) = p.content_primitive()?;
    let affine = log_int(&p.max_abs(), prec);
    let projective = affine.sub(&log_int(&content, prec), prec);
    Ok(PolyHeights { affine, projective })
}

/// Outcome of checking `e^{-d·h/δ} ≤ |β| ≤ e^{d·h/δ}`.
#[derive(Clone, Debug)]
pub struct LiouvilleReport {
    pub degree: usize,
    pub delta: u32,
    pub height: HeightEnclosure,
    pub lower: Interval,
    pub abs: Interval,
    pub upper: Interval,
    pub pass: bool,
}

impl LiouvilleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "delta": self.delta,
            "height": self.height.to_json(),
            "lower": report::interval(&self.lower),
            "abs": report::interval(&self.abs),
            "upper": report::interval(&self.upper),
            "pass": self.pass,
        })
    }
}

/// Whether `β` is real, decided by matching its numerical value to a unique
/// certified root of its minimal polynomial.
pub fn is_real(beta: &NFElement) -> Result<bool> {
    if beta.as_rational().is_some() {
        return Ok(true);
    }
    let m = minimal_polynomial(beta);
    let mut prec = 64;
    loop {
        if prec > precision_cap() {
            return Err(Error::PrecisionCap {
                cap: precision_cap(),
            });
        }
        let v = beta.eval(prec)?;
        let roots = isolate_squarefree(&m, prec)?;
        let hits: Vec<&ComplexBall> = roots.iter().filter(|r| r.overlaps(&v)).collect();
        if hits.len() == 1 {
            return Ok(hits[0].is_real());
        }
        prec *= 2;
    }
}

pub fn liouville_check(beta: &NFElement) -> Result<LiouvilleReport> {
    if beta.is_zero() {
        return Err(Error::Invalid(
            "Liouville inequality needs a nonzero number".into(),
        ));
    }
    let wp = 96;
    let degree = minimal_polynomial(beta).degree();
    let delta = if is_real(beta)? { 1 } else { 2 };
    let height = height(beta, 1e-20)?;
    let abs = beta.eval(wp)?.abs();
    let e = height
        .interval()
        .mul(&Interval::from_i64(degree as i64), wp)
        .div(&Interval::from_i64(delta as i64), wp)
        .unwrap();
    let upper = exp_interval(&e, wp);
    let lower = exp_interval(&e.neg(), wp);
    let pass = !(lower.lo > abs.hi || abs.lo > upper.hi);
    Ok(LiouvilleReport {
        degree,
        delta,
        height,
        lower,
        abs,
        upper,
        pass,
    })
}

/// One checked height identity or inequality.
#[derive(Clone, Debug)]
pub struct AuditRecord {
    pub identity: String,
    pub inputs: Vec<String>,
    pub lhs: Interval,
    pub rhs: Interval,
    pub slack: Dyadic,
    pub pass: bool,
}

impl AuditRecord {
    /// `lhs ≤ rhs`, failing only if violated beyond the enclosure widths.
    fn le(identity: &str, inputs: Vec<String>, lhs: Interval, rhs: Interval) -> Self {
        let slack = lhs.width().add(&rhs.width());
        let pass = lhs.lo <= rhs.hi;
        Self {
            identity: identity.into(),
            inputs,
            lhs,
            rhs,
            slack,
            pass,
        }
    }

    /// `lhs = rhs` up to the enclosure widths.
    fn eq(identity: &str, inputs: Vec<String>, lhs: Interval, rhs: Interval) -> Self {
        let slack = lhs.width().add(&rhs.width());
        let pass = lhs.intersects(&rhs);
        Self {
            identity: identity.into(),
            inputs,
            lhs,
            rhs,
            slack,
            pass,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "inputs": self.inputs,
            "lhs": report::interval(&self.lhs),
            "rhs": report::interval(&self.rhs),
            "slack": report::dyadic(&self.slack),
            "pass": self.pass,
        })
    }

    /// Single-line JSON.
    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}

fn describe(beta: &NFElement) -> String {
    format!("{beta:?}")
}

struct Auditor {
    tol: f64,
    wp: u64,
    out: Vec<AuditRecord>,
}

impl Auditor {
    fn h(&self, beta: &NFElement) -> Result<Interval> {
        Ok(height(beta, self.tol)?.interval())
    }

    fn single(&mut self, a: &NFElement, polys: &[IntPolynomial]) -> Result<()> {
        let wp = self.wp;
        let name = describe(a);
        let ha = self.h(a)?;
        for k in [2u64, 3] {
            let lhs = self.h(&a.pow(k))?;
            let rhs = ha.mul(&Interval::from_i64(k as i64), wp);
            self.out.push(AuditRecord::eq(
                &format!("power_{k}"),
                vec![name.clone()],
                lhs,
                rhs,
            ));
        }
        if !a.is_zero() {
            let lhs = self.h(&a.inverse()?)?;
            self.out.push(AuditRecord::eq(
                "power_-1",
                vec![name.clone()],
                lhs,
                ha.clone(),
            ));
        }
        let lhs = self.h(&a.neg())?;
        self.out.push(AuditRecord::eq(
            "root_of_unity_invariance",
            vec![name.clone()],
            lhs,
            ha.clone(),
        ));

        let m = minimal_polynomial(a);
        let henc = height(a, self.tol)?;
        let (diff, bound) = sandwich(&m, &henc, wp);
        self.out.push(AuditRecord::le(
            "minpoly_sandwich",
            vec![name.clone()],
            diff.abs(),
            bound,
        ));

        let hp = poly_heights(&m, wp)?;
        let rhs = hp.projective.add(&ln2(wp), wp);
        self.out.push(AuditRecord::le(
            "root_height_bound",
            vec![name.clone()],
            ha.clone(),
            rhs,
        ));

        for p in polys {
            let deg = p.degree() as i64;
            let lhs = self.h(&eval_in_field(p, a))?;
            let php = poly_heights(p, wp)?;
            let rhs = ha
                .mul(&Interval::from_i64(deg), wp)
                .add(&php.affine, wp)
                .add(&log_int(&BigInt::from(deg + 1), wp), wp);
            self.out.push(AuditRecord::le(
                "poly_value_bound",
                vec![name.clone(), p.to_string()],
                lhs,
                rhs,
            ));
        }
        Ok(())
    }

    fn pair(&mut self, a: &NFElement, b: &NFElement) -> Result<()> {
        let wp = self.wp;
        let names = vec![describe(a), describe(b)];
        let ha = self.h(a)?;
        let hb = self.h(b)?;
        let hsum = ha.add(&hb, wp);
        let lhs = self.h(&a.mul(b)?)?;
        self.out
            .push(AuditRecord::le("product", names.clone(), lhs, hsum.clone()));
        let lhs = self.h(&a.add(b)?)?;
        let rhs = hsum.add(&ln2(wp), wp);
        self.out.push(AuditRecord::le("sum", names, lhs, rhs));
        Ok(())
    }

    /// Factorization and root-sum bounds for a supplied polynomial.
    fn polynomial(&mut self, p: &IntPolynomial) -> Result<()> {
        let wp = self.wp;
        if p.degree() == 0 {
            return Ok(());
        }
        let n = Interval::from_i64(p.degree() as i64);
        let bound = ln2(wp).mul(&n, wp);
        let hp = poly_heights(p, wp)?.projective;
        let fac = factor_over_z(p)?;
        let mut parts = Interval::zero();
        let mut roots = Interval::zero();
        for (f, e) in &fac.factors {
            let e = Interval::from_i64(*e as i64);
            parts = parts.add(&poly_heights(f, wp)?.projective.mul(&e, wp), wp);
            let hf = height_from_minpoly(f, self.tol)?.interval();
            let d = Interval::from_i64(f.degree() as i64);
            roots = roots.add(&hf.mul(&d, wp).mul(&e, wp), wp);
        }
        let name = vec![p.to_string()];
        self.out.push(AuditRecord::le(
            "factorization_bound",
            name.clone(),
            hp.sub(&parts, wp).abs(),
            bound.clone(),
        ));
        self.out.push(AuditRecord::le(
            "root_sum_bound",
            name,
            hp.sub(&roots, wp).abs(),
            bound,
        ));
        Ok(())
    }
}

/// `P(a)` computed in the field of `a`.
fn eval_in_field(p: &IntPolynomial, a: &NFElement) -> NFElement {
    let f = a.field();
    let mut acc = f.zero();
    for c in p.coeffs().iter().rev() {
        let c = f.from_rational(BigRational::from_integer(c.clone()));
        acc = acc.mul(a).and_then(|x| x.add(&c)).expect("same field");
    }
    acc
}

/// Checks the elementary height inequalities on every element and pair of
/// `pairs`, and the polynomial bounds on `polys` (also evaluated at each
/// element). Returns one record per check.
pub fn audit_height_axioms(
    pairs: &[(NFElement, NFElement)],
    polys: &[IntPolynomial],
    tol: f64,
) -> Result<Vec<AuditRecord>> {
    bits_for(tol)?;
    let mut aud = Auditor {
        tol,
        wp: 128,
        out: Vec::new(),
    };
    let mut seen: Vec<NFElement> = Vec::new();
    for (a, b) in pairs {
        if !a.field().same_as(b.field()) {
            return Err(Error::FieldMismatch);
        }
        for x in [a, b] {
            if !seen.contains(x) {
                aud.single(x, polys)?;
                seen.push(x.clone());
            }
        }
        aud.pair(a, b)?;
    }
    for p in polys {
        if !p.is_zero() {
            aud.polynomial(p)?;
        }
    }
    Ok(aud.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic_polynomial;
    use crate::field::NumberField;

    fn poly(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn near(h: &HeightEnclosure, v: f64, tol: f64) -> bool {
        h.lower.to_f64() - tol <= v && v <= h.upper.to_f64() + tol
    }

    #[test]
    fn rational_heights() {
        let h = rational_height(&BigRational::ratio(2, 3), 1e-15).unwrap();
        assert!(near(&h, 3f64.ln(), 1e-15));
        let h = rational_height(&BigRational::ratio(-1, 1), 1e-15).unwrap();
        assert!(h.upper.is_zero());
    }

    #[test]
    fn roots_of_unity_have_height_zero() {
        for n in [1u64, 2, 5, 12] {
            let h = height_from_minpoly(&cyclotomic_polynomial(n), 1e-12).unwrap();
            assert!(h.lower.is_zero() && h.upper.to_f64() <= 1e-12, "n={n}");
        }
    }

    #[test]
    fn radical_heights() {
        for m in 2..=4 {
            let mut c = vec![0i64; m + 1];
            c[0] = -2;
            c[m] = 1;
            let h = height_from_minpoly(&IntPolynomial::from_i64s(&c), 1e-12).unwrap();
            assert!(near(&h, 2f64.ln() / m as f64, 1e-12));
            assert!(h.width().to_f64() <= 1e-12);
        }
    }

    #[test]
    fn polynomial_heights() {
        let p = poly_heights(&poly("6T+4"), 64).unwrap();
        assert!((p.affine.to_f64() - 6f64.ln()).abs() < 1e-15);
        assert!((p.projective.to_f64() - 3f64.ln()).abs() < 1e-15);
        let p = poly_heights(&poly("1"), 64).unwrap();
        assert_eq!(p.affine.to_f64(), 0.0);
        assert!(poly_heights(&IntPolynomial::zero(), 64).is_err());
    }

    #[test]
    fn liouville_examples() {
        let q = NumberField::rationals();
        let r = liouville_check(&q.from_rational(BigRational::ratio(3, 2))).unwrap();
        assert!(r.pass && r.delta == 1);
        let k = NumberField::new(&poly("T^2-2")).unwrap();
        let r = liouville_check(&k.generator()).unwrap();
        assert!(r.pass && r.delta == 1);
        assert!((r.upper.to_f64() - 2.0).abs() < 1e-12);
        let k = NumberField::new(&poly("T^2+1")).unwrap();
        let r = liouville_check(&k.generator()).unwrap();
        assert!(r.pass && r.delta == 2);
        assert!(liouville_check(&k.zero()).is_err());
    }

    #[test]
    fn audit_passes_on_small_sample() {
        let k = NumberField::new(&poly("T^2-2")).unwrap();
        let a = k.generator();
        let b = k
            .element(vec![BigRational::ratio(1, 2), BigRational::one()])
            .unwrap();
        let recs = audit_height_axioms(
            &[(a.clone(), a.clone()), (a.clone(), b), (k.zero(), a)],
            &[poly("T^2+T-1"), poly("4T^2-4")],
            1e-20,
        )
        .unwrap();
        assert!(recs.len() > 20);
        for r in &recs {
            assert!(r.pass, "{}", r.to_json_line());
        }
    }
}
