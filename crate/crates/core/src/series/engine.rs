//! Structure checks, exact partial sums, certified tails and value balls.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::spec::Series;
use crate::error::{Error, Result};
use crate::exact::BigRational;
use crate::field::NFElement;
use crate::numerics::dyadic::Round;
use crate::numerics::elementary::log_dyadic;
use crate::numerics::{ComplexBall, Dyadic, Interval};
use crate::report;

/// Largest exponent for which `α^k` is formed exactly (unless `α ∈ {0, ±1}`).
pub const EXACT_EXPONENT_CAP: u64 = 1 << 24;

const BOUND_PREC: u64 = 64;

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub prefix: u64,
    /// `t_0, …, t_N` (shorter if `t_N` overflows).
    pub t: Vec<u64>,
    /// `s_1, …, s_N`.
    pub s: Vec<u64>,
    /// `t_n / s_n` for `n = 1, …`.
    pub gap_ratios: Vec<BigRational>,
    /// `s_{n+1} / t_n` for `n = 1, …, N − 1`.
    pub restart_ratios: Vec<BigRational>,
    pub max_restart: Option<BigRational>,
    pub restart_bound: Option<BigRational>,
    pub warnings: Vec<String>,
}

impl StructureReport {
    pub fn to_json(&self) -> Value {
        let rats = |v: &[BigRational]| v.iter().map(report::rational).collect::<Vec<_>>();
        json!({
            "prefix": self.prefix,
            "t": self.t.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "s": self.s.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "gap_ratios": rats(&self.gap_ratios),
            "restart_ratios": rats(&self.restart_ratios),
            "max_restart": self.max_restart.as_ref().map(report::rational),
            "restart_bound": self.restart_bound.as_ref().map(report::rational),
            "warnings": self.warnings,
            "pass": true,
        })
    }
}

fn emon(index: u64, detail: String) -> Error {
    Error::Structure {
        condition: "emon",
        index,
        detail,
    }
}

/// Hard-checks the block ordering and the zero gaps on the first `n` blocks
/// and reports the ratio trends.
pub fn validate_structure(series: &Series, n: u64) -> Result<StructureReport> {
    if n < 2 {
        return Err(Error::Invalid("prefix length must be at least 2".into()));
    }
    let mut warnings = Vec::new();
    let mut n = n;
    if let Some(c) = series.block_count() {
        if c < n {
            warnings.push(format!(
                "series defines only {c} blocks; prefix shortened from {n}"
            ));
            n = c;
        }
    }
    let mut t = vec![series.t(0)?];
    let mut s = Vec::new();
    for i in 1..=n {
        let si = series.s(i)?;
        if si < t[i as usize - 1] {
            return Err(emon(
                i,
                format!("s_{i} = {si} < t_{} = {}", i - 1, t[i as usize - 1]),
            ));
        }
        s.push(si);
        match series.t(i) {
            Ok(ti) => {
                if ti <= si {
                    return Err(emon(i, format!("t_{i} = {ti} ≤ s_{i} = {si}")));
                }
                t.push(ti);
            }
            Err(Error::IndexCap(_)) if i == n => warnings.push(format!("t_{i} exceeds 64 bits")),
            Err(e) => return Err(e),
        }
    }
    let limit = if t.len() as u64 > n {
        t[n as usize] - 1
    } else {
        s[n as usize - 1]
    };
    for k in series.support_up_to(limit)? {
        let inside = (0..n as usize).any(|j| t[j] <= k && k <= s[j]);
        if !inside {
            let detail = if k < t[0] {
                format!("a_{k} ≠ 0 below t_0 = {}", t[0])
            } else {
                format!("a_{k} ≠ 0 strictly inside a gap (s_n, t_n)")
            };
            return Err(Error::Structure {
                condition: "ezer",
                index: k,
                detail,
            });
        }
    }
    let gap_ratios: Vec<BigRational> = (1..t.len())
        .map(|i| BigRational::new(BigInt::from(t[i]), BigInt::from(s[i - 1].max(1))))
        .collect();
    let restart_ratios: Vec<BigRational> = (1..s.len())
        .map(|i| BigRational::new(BigInt::from(s[i]), BigInt::from(t[i])))
        .collect();
    let from = series.trend_from().max(1) as usize;
    for i in from..gap_ratios.len() {
        if gap_ratios[i] < gap_ratios[i - 1] {
            warnings.push(format!(
                "t_n/s_n decreases at n = {}: {} < {}",
                i + 1,
                gap_ratios[i],
                gap_ratios[i - 1]
            ));
        }
    }
    let max_restart = restart_ratios.iter().max().cloned();
    let restart_bound = series.restart_bound().cloned();
    match (&max_restart, &restart_bound) {
        (Some(m), Some(b)) if m > b => warnings.push(format!(
            "max s_(n+1)/t_n = {m} exceeds the declared bound {b}"
        )),
        (Some(_), None) => warnings.push("no restart bound declared".into()),
        _ => {}
    }
    Ok(StructureReport {
        prefix: n,
        t,
        s,
        gap_ratios,
        restart_ratios,
        max_restart,
        restart_bound,
        warnings,
    })
}

fn is_trivial(alpha: &NFElement) -> bool {
    alpha
        .as_rational()
        .map(|q| q.is_zero() || q.abs().is_one())
        .unwrap_or(false)
}

fn power(alpha: &NFElement, k: u64) -> Result<NFElement> {
    if k > EXACT_EXPONENT_CAP && !is_trivial(alpha) {
        return Err(Error::IndexCap(format!(
            "exponent {k} above the exact-evaluation cap {EXACT_EXPONENT_CAP}"
        )));
    }
    Ok(alpha.pow(k))
}

/// `P_n(α) = Σ_{t_{n−1} ≤ k ≤ s_n} a_k α^k`.
pub fn block_value(series: &Series, alpha: &NFElement, n: u64) -> Result<NFElement> {
    let terms = series.block_terms(n)?;
    let field = alpha.field();
    let mut acc = field.zero();
    let Some(&(k0, _)) = terms.first() else {
        return Ok(acc);
    };
    let mut pw = power(alpha, k0)?;
    let mut last = k0;
    for (k, c) in &terms {
        if *k > last {
            pw = pw.mul(&power(alpha, k - last)?)?;
            last = *k;
        }
        acc = acc.add(&pw.scale(&BigRational::from_integer(c.clone())))?;
    }
    Ok(acc)
}

/// `F_1(α), …, F_n(α)`.
pub fn partial_sums(series: &Series, alpha: &NFElement, n: u64) -> Result<Vec<NFElement>> {
    let mut out = Vec::with_capacity(n as usize);
    let mut acc = alpha.field().zero();
    for i in 1..=n {
        acc = acc.add(&block_value(series, alpha, i)?)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// `F_n(α) = Σ_{k ≤ s_n} a_k α^k`, exactly.
pub fn partial_sum(series: &Series, alpha: &NFElement, n: u64) -> Result<NFElement> {
    if n == 0 {
        return Err(Error::Invalid("partial sums are indexed from n = 1".into()));
    }
    Ok(partial_sums(series, alpha, n)?.pop().expect("n ≥ 1"))
}

/// Certified `|f(α) − F_n(α)| ≤ C·e^{−θ t_n}`.
#[derive(Clone, Debug)]
pub struct TailBound {
    pub n: u64,
    pub t_n: u64,
    /// `log(r/|α|)`, `+∞` represented by `None` when `α = 0`.
    pub theta: Option<Interval>,
    /// Upper bound on `C = M / (1 − |α|/r)`.
    pub c: Dyadic,
    /// Upper bound on the tail.
    pub bound: Dyadic,
}

impl TailBound {
    /// Upper bound on `log(bound)`, or `None` if the bound is zero.
    pub fn log_upper(&self) -> Option<Dyadic> {
        if self.bound.is_zero() {
            None
        } else {
            Some(log_dyadic(&self.bound, BOUND_PREC).hi)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "t_n": self.t_n.to_string(),
            "theta": self.theta.as_ref().map(report::interval),
            "C": report::dyadic(&self.c),
            "bound": report::dyadic(&self.bound),
            "log_bound": self.log_upper().map(|l| format!("{:.12e}", l.to_f64())),
        })
    }
}

fn pow_up(x: &Dyadic, mut e: u64) -> Dyadic {
    let mut acc = Dyadic::one();
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_round(&base, BOUND_PREC, Round::Up);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_round(&base, BOUND_PREC, Round::Up);
        }
    }
    acc
}

/// Tail bound from an upper bound `abs_hi` on `|α|`.
///
/// Bounded series use `|a_k| ≤ A` on the unit circle; other series need the
/// caller's contour data `(r, M)` with `max_{|z|=r}|f| ≤ M`.
pub fn tail_bound(series: &Series, abs_hi: &Dyadic, n: u64) -> Result<TailBound> {
    let t_n = series.t(n)?;
    if let Some(c) = series.block_count() {
        if n >= c {
            let zero = Dyadic::zero();
            return Ok(TailBound {
                n,
                t_n,
                theta: None,
                c: zero.clone(),
                bound: zero,
            });
        }
    }
    let floor = series
        .radius_floor()
        .ok_or_else(|| Error::Invalid("series has no radius floor".into()))?;
    if abs_hi.to_rational() >= *floor {
        return Err(Error::Invalid(format!(
            "|α| ≤ {} is not certified below the radius floor {floor}",
            abs_hi.to_f64()
        )));
    }
    let (r, m) = match (series.bounded_a(), series.contour()) {
        (Some(a), _) => (BigRational::one(), BigRational::from_integer(a.clone())),
        (None, Some((r, m))) => (r.clone(), m.clone()),
        (None, None) => {
            return Err(Error::Invalid(
                "series is not of bounded type and has no certified contour bound".into(),
            ))
        }
    };
    if abs_hi.to_rational() >= r {
        return Err(Error::Invalid(format!(
            "|α| is not certified below the contour radius {r}"
        )));
    }
    let rho = abs_hi.div_round(
        &Dyadic::from_rational(&r, BOUND_PREC, Round::Down),
        BOUND_PREC,
        Round::Up,
    );
    let m_up = Dyadic::from_rational(&m, BOUND_PREC, Round::Up);
    let one_minus = Dyadic::one().sub_round(&rho, BOUND_PREC, Round::Down);
    if !one_minus.is_positive() {
        return Err(Error::Invalid("|α|/r rounds up to 1; refine |α|".into()));
    }
    let c = m_up.div_round(&one_minus, BOUND_PREC, Round::Up);
    let bound = pow_up(&rho, t_n).mul_round(&c, BOUND_PREC, Round::Up);
    let theta = if rho.is_zero() {
        None
    } else {
        Some(log_dyadic(&rho, BOUND_PREC).neg())
    };
    Ok(TailBound {
        n,
        t_n,
        theta,
        c,
        bound,
    })
}

/// Upper bound on `|α|` from a 64-bit evaluation.
pub fn abs_upper(alpha: &NFElement) -> Result<Dyadic> {
    Ok(alpha.eval(64)?.abs().hi)
}

pub fn tail_bound_at(series: &Series, alpha: &NFElement, n: u64) -> Result<TailBound> {
    tail_bound(series, &abs_upper(alpha)?, n)
}

#[derive(Clone, Debug)]
pub struct ValueEnclosure {
    pub n: u64,
    pub ball: ComplexBall,
    pub tail: TailBound,
}

impl ValueEnclosure {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "value": report::ball(&self.ball),
            "tail": self.tail.to_json(),
        })
    }
}

/// Ball around `f(α)` of radius at most `target`.
pub fn value_enclosure(
    series: &Series,
    alpha: &NFElement,
    target: &Dyadic,
) -> Result<ValueEnclosure> {
    if !target.is_positive() {
        return Err(Error::Invalid("target radius must be positive".into()));
    }
    let half = target.mul_pow2(-1);
    let abs_hi = abs_upper(alpha)?;
    let mut n = 1;
    let tail = loop {
        let tb = tail_bound(series, &abs_hi, n)?;
        if tb.bound <= half {
            break tb;
        }
        n += 1;
    };
    let f = partial_sum(series, alpha, n)?;
    let bits = (-half.top() + 1).max(1) as u64;
    let mut ball = f.eval(bits)?;
    ball.rad = ball.rad.add_round(&tail.bound, 30, Round::Up);
    Ok(ValueEnclosure { n, ball, tail })
}
