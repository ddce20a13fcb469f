//! Exhaustive scan of `log|f(α) − β| + η·h(β)` over a box of algebraic `β`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::HEIGHT_TOL;
use crate::error::{Error, Result};
use crate::exact::{factor_over_z, BigRational, IntPolynomial};
use crate::field::{element_degree, minimal_polynomial, NFElement};
use crate::heights::height_from_minpoly;
use crate::numerics::elementary::{exp_interval, log_interval};
use crate::numerics::roots::{isolate_squarefree, precision_cap};
use crate::numerics::{ComplexBall, Dyadic, Interval};
use crate::report;
use crate::series::{partial_sums, value_enclosure, NumStr, Series};

use super::certificate::{CertKind, Certificate};

pub const DEFAULT_SCAN_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SCAN_PRECISION: u64 = 256;

#[derive(Clone, Debug)]
pub struct ScanParams {
    pub d: usize,
    pub b: u64,
    pub eta: BigRational,
    pub budget: u64,
    /// Starting precision in bits for `f(α)` and the roots.
    pub precision: u64,
}

impl ScanParams {
    pub fn new(d: usize, b: u64, eta: BigRational) -> Self {
        Self {
            d,
            b,
            eta,
            budget: DEFAULT_SCAN_BUDGET,
            precision: DEFAULT_SCAN_PRECISION,
        }
    }

    pub(crate) fn from_json(v: &Value) -> Result<Self> {
        let u = |k: &str| {
            v[k].as_u64()
                .ok_or_else(|| Error::Recheck(format!("missing {k}")))
        };
        let eta = serde_json::from_value::<NumStr>(v["eta"].clone())
            .map_err(|e| Error::Recheck(format!("bad eta: {e}")))?
            .rational()?;
        Ok(Self {
            d: u("d")? as usize,
            b: u("B")?,
            eta,
            budget: u("budget")?,
            precision: u("start_precision")?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub certificate: Certificate,
    pub payload: Value,
}

/// Number of coefficient vectors in the box.
fn box_size(d: usize, b: u64) -> Option<u64> {
    let side = 2 * b + 1;
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 1..=d {
        pow = pow.checked_mul(side)?;
        total = total.checked_add(b.checked_mul(pow)?)?;
    }
    Some(total)
}

/// Primitive irreducible polynomials of degree `1..=d`, `0 < lc ≤ B`,
/// `|a_i| ≤ B`, in lexicographic order of `(deg, lc, a_{deg−1}, …, a_0)`.
pub fn enumerate_box(d: usize, b: u64) -> Result<Vec<IntPolynomial>> {
    let side = 2 * b + 1;
    let mut out = Vec::new();
    for deg in 1..=d {
        let count = side.pow(deg as u32);
        for lc in 1..=b {
            for idx in 0..count {
                let mut c = vec![BigInt::zero(); deg + 1];
                c[deg] = BigInt::from(lc);
                let mut r = idx;
                for slot in c[..deg].iter_mut() {
                    *slot = BigInt::from((r % side) as i64 - b as i64);
                    r /= side;
                }
                if deg >= 2 && c[0].is_zero() {
                    continue;
                }
                let p = IntPolynomial::new(c);
                if p.content().is_one() && (deg == 1 || factor_over_z(&p)?.is_irreducible()) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

fn roots_of(p: &IntPolynomial, prec: u64) -> Result<Vec<ComplexBall>> {
    if p.degree() == 1 {
        return Ok(vec![ComplexBall::from_rational(
            &BigRational::new(-p.coeff(0), p.coeff(1)),
            prec,
        )]);
    }
    isolate_squarefree(p, prec)
}

struct Excluded {
    n: u64,
    poly: IntPolynomial,
    ball: ComplexBall,
}

struct Best {
    value: Interval,
    poly: IntPolynomial,
    root: ComplexBall,
    height: Interval,
}

enum Pass {
    Done(Value),
    Ambiguous,
}

fn run_at(
    partials: &[NFElement],
    gamma: &ComplexBall,
    params: &ScanParams,
    prec: u64,
    polys: &[IntPolynomial],
    prefix: u64,
) -> Result<Pass> {
    let wp = 64;
    let mut excluded = Vec::new();
    for (i, f) in partials.iter().enumerate() {
        if element_degree(f) > params.d {
            continue;
        }
        let mp = minimal_polynomial(f);
        if mp.max_abs() <= BigInt::from(params.b) {
            excluded.push(Excluded {
                n: i as u64 + 1,
                poly: mp,
                ball: f.eval(prec)?,
            });
        }
    }
    let eta = Interval::from_rational(&params.eta, wp);
    let mut best: Option<Best> = None;
    let mut log_c: Option<Dyadic> = None;
    let mut roots_checked = 0u64;
    let mut hits = Vec::new();
    for p in polys {
        let h = height_from_minpoly(p, HEIGHT_TOL)?.interval();
        for r in roots_of(p, prec)? {
            if let Some(e) = excluded
                .iter()
                .find(|e| &e.poly == p && e.ball.overlaps(&r))
            {
                hits.push(json!({"n": e.n, "minimal_polynomial": p.to_string()}));
                continue;
            }
            roots_checked += 1;
            let dist = gamma.sub(&r).abs();
            if !dist.lo.is_positive() {
                return Ok(Pass::Ambiguous);
            }
            let v = log_interval(&dist, wp).add(&eta.mul(&h, wp), wp);
            if log_c.as_ref().is_none_or(|c| v.lo < *c) {
                log_c = Some(v.lo.clone());
            }
            if best.as_ref().is_none_or(|b| v.lo < b.value.lo) {
                best = Some(Best {
                    value: v,
                    poly: p.clone(),
                    root: r,
                    height: h.clone(),
                });
            }
        }
    }
    let min = best.as_ref().map(|b| {
        json!({
            "value": report::interval(&b.value),
            "linear": report::interval(&exp_interval(&b.value, wp)),
            "minimal_polynomial": b.poly.to_string(),
            "root": report::ball(&b.root.with_prec(wp)),
            "height": report::interval(&b.height),
        })
    });
    Ok(Pass::Done(json!({
        "d": params.d,
        "B": params.b,
        "eta": report::rational(&params.eta),
        "budget": params.budget,
        "start_precision": params.precision,
        "precision": prec,
        "prefix": prefix,
        "value": report::ball(&gamma.with_prec(wp)),
        "polynomials": polys.len(),
        "roots_checked": roots_checked,
        "excluded": hits,
        "min": min,
        "log_c": log_c.as_ref().map(report::dyadic),
    })))
}

/// Minimum of `log|f(α) − β| + η h(β)` over every root `β` of every
/// polynomial in the box, excluding partial sums `F_n(α)` up to the prefix
/// used to enclose `f(α)`. The certificate asserts every term is at least
/// `log_c`.
pub fn lower_degree_scan(
    series: &Series,
    alpha: &NFElement,
    params: &ScanParams,
) -> Result<ScanResult> {
    if params.d == 0 || params.b == 0 {
        return Err(Error::Invalid("scan needs d ≥ 1 and B ≥ 1".into()));
    }
    let needed = box_size(params.d, params.b).unwrap_or(u64::MAX);
    if needed > params.budget {
        return Err(Error::Budget {
            needed,
            budget: params.budget,
        });
    }
    let polys = enumerate_box(params.d, params.b)?;
    let mut prec = params.precision.max(64);
    loop {
        let target = Dyadic::pow2(-(prec as i64));
        let ve = value_enclosure(series, alpha, &target)?;
        let partials = partial_sums(series, alpha, ve.n)?;
        match run_at(&partials, &ve.ball, params, prec, &polys, ve.n)? {
            Pass::Done(payload) => {
                let certificate = Certificate {
                    kind: CertKind::LowerScan,
                    series: series.spec().clone(),
                    alpha: Some(alpha.clone()),
                    payload: payload.clone(),
                };
                return Ok(ScanResult {
                    certificate,
                    payload,
                });
            }
            Pass::Ambiguous => {
                prec *= 2;
                if prec > precision_cap() {
                    return Err(Error::PrecisionCap {
                        cap: precision_cap(),
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::series::SeriesSpec;

    fn half() -> NFElement {
        NumberField::rationals().from_rational(BigRational::ratio(1, 2))
    }

    #[test]
    fn box_counts() {
        let one = enumerate_box(1, 1).unwrap();
        let names: Vec<String> = one.iter().map(|p| p.to_string()).collect();
        assert_eq!(names.len(), 3, "{names:?}");
        assert_eq!(box_size(1, 1), Some(3));
        // Primitive linear polynomials qT − p with q ≤ 3, |p| ≤ 3.
        assert_eq!(enumerate_box(1, 3).unwrap().len(), 7 + 4 + 4);
        let quad = enumerate_box(2, 1).unwrap();
        assert!(quad
            .iter()
            .all(|p| p.degree() == 1 || factor_over_z(p).unwrap().is_irreducible()));
        assert_eq!(quad.iter().filter(|p| p.degree() == 2).count(), 5);
    }

    #[test]
    fn liouville_rational_gap() {
        let s = SeriesSpec::factorial(1).compile().unwrap();
        let r = lower_degree_scan(
            &s,
            &half(),
            &ScanParams::new(1, 50, BigRational::from_i64(3)),
        )
        .unwrap();
        let lin = &r.payload["min"]["linear"];
        let approx: f64 = lin["approx"].as_str().unwrap().parse().unwrap();
        assert!(approx > 0.0);
        // Oracle over all p/q in the box at double precision.
        let gamma: f64 = (1..6).map(|k: i32| 0.5f64.powi((1..=k).product())).sum();
        let mut best = f64::INFINITY;
        for q in 1..=50i64 {
            for p in -50..=50i64 {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let excluded = [(1, 2), (3, 4), (49, 64)].contains(&(p, q));
                if excluded {
                    continue;
                }
                let hh = (p.abs().max(q)) as f64;
                best = best.min(hh.powi(3) * (gamma - p as f64 / q as f64).abs());
            }
        }
        assert!(
            (approx - best).abs() < 1e-9 * best.max(1.0),
            "{approx} vs {best}"
        );
    }

    #[test]
    fn partial_sum_is_excluded() {
        let s = SeriesSpec::factorial(1).compile().unwrap();
        let r =
            lower_degree_scan(&s, &half(), &ScanParams::new(1, 4, BigRational::zero())).unwrap();
        let ex = r.payload["excluded"].as_array().unwrap();
        assert!(
            ex.iter().any(|e| e["minimal_polynomial"] == "4T-3"),
            "{ex:?}"
        );
        assert!(ex.iter().any(|e| e["minimal_polynomial"] == "2T-1"));
    }

    #[test]
    fn budget_is_enforced() {
        let s = SeriesSpec::factorial(1).compile().unwrap();
        let mut p = ScanParams::new(3, 10, BigRational::zero());
        p.budget = 100;
        assert!(matches!(
            lower_degree_scan(&s, &half(), &p),
            Err(Error::Budget { .. })
        ));
    }
}
