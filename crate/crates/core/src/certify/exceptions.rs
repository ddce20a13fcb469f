//! Algebraic `α` of bounded degree and height at which every block of the
//! prefix vanishes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::certificate::{CertKind, Certificate};
use super::HEIGHT_TOL;
use crate::error::{Error, Result};
use crate::exact::{factor_over_z, BigRational, IntPolynomial, RatPolynomial};
use crate::heights::height_from_minpoly;
use crate::numerics::elementary::log_int;
use crate::report;
use crate::series::Series;

#[derive(Clone, Debug)]
pub struct ExceptionScan {
    pub candidates: Vec<IntPolynomial>,
    /// Candidates whose height enclosure straddles `log(2A)`.
    pub boundary: Vec<IntPolynomial>,
    pub exceptions: Vec<IntPolynomial>,
    pub certificate: Certificate,
    pub payload: Value,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `z^e mod m` over Q.
fn pow_mod(e: u64, m: &RatPolynomial) -> RatPolynomial {
    let mut acc = RatPolynomial::one().rem(m);
    let mut base = RatPolynomial::x().rem(m);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &base).rem(m);
        }
        e >>= 1;
        if e > 0 {
            base = (&base * &base).rem(m);
        }
    }
    acc
}

/// True when `P_n` vanishes at the roots of the irreducible `m` for all `n ≤ prefix`.
fn vanishes_on_prefix(series: &Series, m: &IntPolynomial, prefix: u64) -> Result<bool> {
    let mq = m.to_rat().monic();
    for n in 1..=prefix {
        let mut acc = RatPolynomial::zero();
        for (k, c) in series.block_terms(n)? {
            acc = &acc + &pow_mod(k, &mq).scale(&BigRational::from_integer(c));
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Candidate minimal polynomials: primitive, irreducible, `lc > 0`, with
/// `|a_i| ≤ min((4A)^d, C(n, i)·(2A)^n)` (the second bound follows from
/// `|a_i| ≤ C(n, i)·M(P)` and `M(P) ≤ (2A)^n`).
fn northcott_box(d: usize, a: &BigInt) -> Result<Vec<IntPolynomial>> {
    let outer = (a * 4u32).pow(d as u32);
    let mut out = Vec::new();
    for n in 1..=d {
        let m_max = (a * 2u32).pow(n as u32);
        let bounds: Vec<BigInt> = (0..=n)
            .map(|i| (binomial(n, i) * &m_max).min(outer.clone()))
            .collect();
        let mut c: Vec<BigInt> = bounds.iter().map(|b| -b).collect();
        c[n] = BigInt::one();
        'odometer: loop {
            let p = IntPolynomial::new(c.clone());
            let ok = p.content().is_one()
                && (n == 1 || (!c[0].is_zero() && factor_over_z(&p)?.is_irreducible()));
            if ok {
                out.push(p);
            }
            for i in 0..=n {
                if c[i] < bounds[i] {
                    c[i] += 1;
                    for (j, slot) in c.iter_mut().enumerate().take(i) {
                        *slot = -&bounds[j];
                    }
                    continue 'odometer;
                }
            }
            break;
        }
    }
    out.sort_by(crate::exact::factor::poly_order);
    Ok(out)
}

/// All `α` with `deg α ≤ d` and `h(α) ≤ log(2A)` such that
/// `P_n(α) = 0` for every `n ≤ prefix`.
pub fn exception_scan(series: &Series, d: usize, prefix: u64) -> Result<ExceptionScan> {
    if d == 0 {
        return Err(Error::Invalid("degree must be ≥ 1".into()));
    }
    if prefix == 0 {
        return Err(Error::Invalid("prefix must be ≥ 1".into()));
    }
    let a = series
        .bounded_a()
        .cloned()
        .ok_or_else(|| Error::Invalid("exception scan needs a series of bounded type".into()))?;
    if !a.is_positive() {
        return Err(Error::Invalid("bounded_A must be positive".into()));
    }
    let prefix = series.block_count().map_or(prefix, |c| prefix.min(c));
    let wp = 64;
    let cutoff = log_int(&(&a * 2u32), wp);
    let mut candidates = Vec::new();
    let mut boundary = Vec::new();
    let mut exceptions = Vec::new();
    for p in northcott_box(d, &a)? {
        let h = height_from_minpoly(&p, HEIGHT_TOL)?;
        if h.lower > cutoff.hi {
            continue;
        }
        if h.upper >= cutoff.lo {
            boundary.push(p.clone());
        }
        if vanishes_on_prefix(series, &p, prefix)? {
            exceptions.push(p.clone());
        }
        candidates.push(p);
    }
    let names = |v: &[IntPolynomial]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let payload = json!({
        "d": d,
        "prefix": prefix,
        "A": a.to_string(),
        "coefficient_bound": (&a * 4u32).pow(d as u32).to_string(),
        "height_bound": report::interval(&cutoff),
        "candidates": names(&candidates),
        "boundary": names(&boundary),
        "exceptions": names(&exceptions),
    });
    let certificate = Certificate {
        kind: CertKind::ExceptionScan,
        series: series.spec().clone(),
        alpha: None,
        payload: payload.clone(),
    };
    Ok(ExceptionScan {
        candidates,
        boundary,
        exceptions,
        certificate,
        payload,
    })
}
