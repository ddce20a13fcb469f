//! `U_m` approximation witnesses: an index `n` with `deg F_n(α) = m` and
//! `|f(α) − F_n(α)| ≤ e^{−w·h(F_n(α))}`.

use serde_json::{json, Value};

use super::certificate::{CertKind, Certificate};
use super::HEIGHT_TOL;
use crate::error::{Error, Result};
use crate::exact::BigRational;
use crate::field::{element_degree, minimal_polynomial, NFElement};
use crate::heights::height;
use crate::numerics::{Dyadic, Interval};
use crate::report;
use crate::series::{abs_upper, block_value, tail_bound, NumStr, Series};

const WP: u64 = 64;

/// Lower end of `−w·h_upper`.
fn threshold(w: &BigRational, h_upper: &Dyadic) -> Dyadic {
    Interval::point(h_upper.clone())
        .mul(&Interval::from_rational(w, WP), WP)
        .neg()
        .lo
}

/// Payload for index `n`, and whether it passes.
fn payload_at(
    series: &Series,
    value: &NFElement,
    abs_hi: &Dyadic,
    n: u64,
    w: &BigRational,
    m: usize,
) -> Result<(Value, bool)> {
    let degree = element_degree(value);
    let h = height(value, HEIGHT_TOL)?;
    let tail = tail_bound(series, abs_hi, n)?;
    let thr = threshold(w, &h.upper);
    let log_tail = tail.log_upper();
    let pass = degree == m && log_tail.as_ref().is_none_or(|l| *l <= thr);
    let payload = json!({
        "n": n,
        "w": report::rational(w),
        "m": m,
        "degree": degree,
        "value": value.coords().iter().map(report::rational).collect::<Vec<_>>(),
        "minimal_polynomial": minimal_polynomial(value).to_string(),
        "height": h.to_json(),
        "tail": tail.to_json(),
        "log_tail_upper": log_tail.as_ref().map(report::dyadic),
        "threshold": report::dyadic(&thr),
        "pass": pass,
    });
    Ok((payload, pass))
}

/// Least `n ≤ cap` that witnesses `|f(α) − F_n(α)| ≤ e^{−w h(F_n(α))}` with
/// `F_n(α)` of degree `m`.
pub fn um_witness(
    series: &Series,
    alpha: &NFElement,
    w: &BigRational,
    m: usize,
    cap: u64,
) -> Result<Certificate> {
    if w.is_negative() {
        return Err(Error::Invalid("w must be nonnegative".into()));
    }
    if m == 0 {
        return Err(Error::Invalid("degree m must be positive".into()));
    }
    let abs_hi = abs_upper(alpha)?;
    let last = series.block_count().map_or(cap, |c| cap.min(c));
    let mut acc = alpha.field().zero();
    for n in 1..=last {
        acc = acc.add(&block_value(series, alpha, n)?)?;
        if element_degree(&acc) != m {
            continue;
        }
        let (payload, pass) = payload_at(series, &acc, &abs_hi, n, w, m)?;
        if pass {
            return Ok(Certificate {
                kind: CertKind::UmWitness,
                series: series.spec().clone(),
                alpha: Some(alpha.clone()),
                payload,
            });
        }
    }
    Err(Error::NoWitness { cap })
}

/// Recomputes a witness payload from the series and `α` alone.
pub(crate) fn check_witness(series: &Series, alpha: &NFElement, payload: &Value) -> Result<()> {
    let n = payload["n"]
        .as_u64()
        .ok_or_else(|| Error::Recheck("missing n".into()))?;
    let m = payload["m"]
        .as_u64()
        .ok_or_else(|| Error::Recheck("missing m".into()))? as usize;
    let w = serde_json::from_value::<NumStr>(payload["w"].clone())
        .map_err(|e| Error::Recheck(format!("bad w: {e}")))?
        .rational()?;
    if n == 0 {
        return Err(Error::Recheck("witness index must be positive".into()));
    }
    let mut acc = alpha.field().zero();
    for i in 1..=n {
        acc = acc.add(&block_value(series, alpha, i)?)?;
    }
    let (again, pass) = payload_at(series, &acc, &abs_upper(alpha)?, n, &w, m)?;
    if !pass {
        return Err(Error::Recheck(format!(
            "index {n} does not satisfy the witness inequality"
        )));
    }
    if &again != payload {
        return Err(Error::Recheck(
            "recorded quantities differ from recomputation".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::series::SeriesSpec;

    fn liouville() -> Series {
        SeriesSpec::factorial(1).compile().unwrap()
    }

    #[test]
    fn half_at_w3() {
        let k = NumberField::rationals();
        let a = k.from_rational(BigRational::ratio(1, 2));
        let c = um_witness(&liouville(), &a, &BigRational::from_i64(3), 1, 20).unwrap();
        assert_eq!(c.payload["n"], 3);
        check_witness(&liouville(), &a, &c.payload).unwrap();
    }

    #[test]
    fn w_zero_takes_first_degree_match() {
        let k = NumberField::rationals();
        let a = k.from_rational(BigRational::ratio(1, 2));
        let c = um_witness(&liouville(), &a, &BigRational::from_i64(0), 1, 20).unwrap();
        assert_eq!(c.payload["n"], 1);
    }

    #[test]
    fn cube_root_degree_three() {
        let poly = "2T^3-1".parse().unwrap();
        let k = (0..3)
            .map(|i| NumberField::with_root(&poly, i).unwrap())
            .find(|k| k.is_real())
            .unwrap();
        let a = k.generator();
        let c = um_witness(&liouville(), &a, &BigRational::from_i64(5), 3, 12).unwrap();
        assert_eq!(c.payload["degree"], 3);
    }

    #[test]
    fn impossible_degree_exhausts_cap() {
        let k = NumberField::rationals();
        let a = k.from_rational(BigRational::ratio(1, 2));
        let e = um_witness(&liouville(), &a, &BigRational::from_i64(3), 2, 4).unwrap_err();
        assert!(matches!(e, Error::NoWitness { cap: 4 }));
    }
}
