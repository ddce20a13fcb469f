//! Serializable series descriptions and their compiled block layout.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::exact::{BigRational, IntPolynomial};

/// A number written as a decimal string (integer or `p/q`). Deserializes
/// from either a JSON string or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct NumStr(pub String);

impl<'de> Deserialize<'de> for NumStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => Ok(NumStr(s)),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(NumStr(n.to_string())),
            other => Err(serde::de::Error::custom(format!(
                "expected integer or string, got {other}"
            ))),
        }
    }
}

impl NumStr {
    pub fn int(&self) -> Result<BigInt> {
        self.0
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {}", self.0)))
    }

    pub fn rational(&self) -> Result<BigRational> {
        self.0.trim().parse()
    }
}

impl From<&BigInt> for NumStr {
    fn from(v: &BigInt) -> Self {
        NumStr(v.to_string())
    }
}

impl From<&BigRational> for NumStr {
    fn from(v: &BigRational) -> Self {
        NumStr(v.to_string())
    }
}

impl From<i64> for NumStr {
    fn from(v: i64) -> Self {
        NumStr(v.to_string())
    }
}

/// Exponent rule for a one-term-per-block series `Σ b_n z^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponents {
    /// `"factorial"` (`e_n = n!`) or `"two_pow_n_squared"` (`e_n = 2^{n²}`).
    Rule(String),
    List(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeriesKind {
    /// `Σ_{n ≥ start} z^{n!}`.
    Factorial {
        #[serde(default = "one_u64")]
        start: u64,
    },
    /// `Σ_{n ≥ 1} b_n z^{e_n}` with `b_n` cycling through `coefficients`.
    Diagonal {
        exponents: Exponents,
        coefficients: Vec<NumStr>,
    },
    /// Explicit block boundaries `t_0, t_1, …` and `s_1, s_2, …` with sparse
    /// coefficients keyed by index.
    Blocks {
        t: Vec<u64>,
        s: Vec<u64>,
        coefficients: BTreeMap<String, NumStr>,
    },
    /// `Σ z^{t_{n−1}} Q_n(z)` with `Q_n = U_1⋯U_n`, truncated after `n` blocks.
    Adversarial { u: Vec<String>, n: usize },
}

fn one_u64() -> u64 {
    1
}

/// Caller-certified bound `max_{|z| = r} |f(z)| ≤ M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contour {
    pub r: NumStr,
    #[serde(rename = "M")]
    pub m: NumStr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSpec {
    #[serde(flatten)]
    pub kind: SeriesKind,
    #[serde(rename = "bounded_A", default, skip_serializing_if = "Option::is_none")]
    pub bounded_a: Option<NumStr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_floor: Option<NumStr>,
    /// Declared bound on `s_{n+1}/t_n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restart_bound: Option<NumStr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contour: Option<Contour>,
    /// Index from which `t_n/s_n` is expected to be non-decreasing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trend_from: Option<u64>,
}

impl SeriesSpec {
    pub(crate) fn with_kind(kind: SeriesKind) -> Self {
        Self {
            kind,
            bounded_a: None,
            radius_floor: None,
            restart_bound: None,
            contour: None,
            trend_from: None,
        }
    }

    /// The Liouville-type series `Σ_{n ≥ start} z^{n!}`, bounded with `A = 1`.
    pub fn factorial(start: u64) -> Self {
        let mut s = Self::with_kind(SeriesKind::Factorial { start });
        s.bounded_a = Some(1.into());
        s.restart_bound = Some(1.into());
        s
    }

    pub fn diagonal(exponents: Exponents, coefficients: &[i64]) -> Self {
        let a = coefficients
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or(0)
            .max(1);
        let mut s = Self::with_kind(SeriesKind::Diagonal {
            exponents,
            coefficients: coefficients.iter().map(|&c| c.into()).collect(),
        });
        s.bounded_a = Some(a.into());
        s
    }

    pub fn blocks(t: Vec<u64>, s: Vec<u64>, coefficients: &[(u64, i64)]) -> Self {
        let a = coefficients
            .iter()
            .map(|c| c.1.abs())
            .max()
            .unwrap_or(0)
            .max(1);
        let coefficients = coefficients
            .iter()
            .map(|&(k, c)| (k.to_string(), c.into()))
            .collect();
        let mut spec = Self::with_kind(SeriesKind::Blocks { t, s, coefficients });
        spec.bounded_a = Some(a.into());
        spec
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("series spec: {e}")))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("spec serializes")
    }

    pub fn compile(&self) -> Result<Series> {
        Series::new(self.clone())
    }
}

/// Exponent `(j)!` as `u64`, or an index-cap error.
pub(crate) fn factorial_u64(j: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for i in 2..=j {
        acc = acc
            .checked_mul(i)
            .ok_or_else(|| Error::IndexCap(format!("{j}! does not fit in 64 bits")))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
enum Layout {
    Factorial {
        start: u64,
    },
    TwoPowSquare,
    List(Vec<u64>),
    Explicit {
        t: Vec<u64>,
        s: Vec<u64>,
        coeffs: BTreeMap<u64, BigInt>,
    },
}

/// A spec with its block structure resolved.
#[derive(Clone, Debug)]
pub struct Series {
    spec: SeriesSpec,
    layout: Layout,
    diag_coeffs: Vec<BigInt>,
    bounded_a: Option<BigInt>,
    radius_floor: Option<BigRational>,
    restart_bound: Option<BigRational>,
    contour: Option<(BigRational, BigRational)>,
    /// `Q_n` for adversarial specs.
    q_polys: Vec<IntPolynomial>,
}

impl Series {
    pub fn new(spec: SeriesSpec) -> Result<Self> {
        let mut diag_coeffs = Vec::new();
        let mut q_polys = Vec::new();
        let mut bounded_a = spec.bounded_a.as_ref().map(|a| a.int()).transpose()?;
        let layout = match &spec.kind {
            SeriesKind::Factorial { start } => {
                if *start == 0 {
                    return Err(Error::Invalid(
                        "factorial series must start at n ≥ 1".into(),
                    ));
                }
                Layout::Factorial { start: *start }
            }
            SeriesKind::Diagonal {
                exponents,
                coefficients,
            } => {
                if coefficients.is_empty() {
                    return Err(Error::Invalid(
                        "diagonal series needs at least one coefficient".into(),
                    ));
                }
                diag_coeffs = coefficients
                    .iter()
                    .map(|c| c.int())
                    .collect::<Result<_>>()?;
                match exponents {
                    Exponents::Rule(r) if r == "factorial" => Layout::Factorial { start: 1 },
                    Exponents::Rule(r) if r == "two_pow_n_squared" => Layout::TwoPowSquare,
                    Exponents::Rule(r) => {
                        return Err(Error::Invalid(format!("unknown exponent rule {r:?}")))
                    }
                    Exponents::List(v) => {
                        if v.is_empty() {
                            return Err(Error::Invalid("empty exponent list".into()));
                        }
                        Layout::List(v.clone())
                    }
                }
            }
            SeriesKind::Blocks { t, s, coefficients } => {
                let mut coeffs = BTreeMap::new();
                for (k, v) in coefficients {
                    let k: u64 = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient index {k:?}")))?;
                    let v = v.int()?;
                    if !v.is_zero() {
                        coeffs.insert(k, v);
                    }
                }
                if s.is_empty() || t.is_empty() {
                    return Err(Error::Invalid("blocks need at least t_0 and s_1".into()));
                }
                Layout::Explicit {
                    t: t.clone(),
                    s: s.clone(),
                    coeffs,
                }
            }
            SeriesKind::Adversarial { u, n } => {
                let us: Vec<IntPolynomial> = u.iter().map(|p| p.parse()).collect::<Result<_>>()?;
                let (t, s, coeffs, qs) = super::adversarial::layout(&us, *n)?;
                if bounded_a.is_none() {
                    bounded_a = Some(
                        coeffs
                            .values()
                            .map(|c| c.abs())
                            .max()
                            .unwrap_or_else(BigInt::one),
                    );
                }
                q_polys = qs;
                Layout::Explicit { t, s, coeffs }
            }
        };
        if let Some(a) = &bounded_a {
            if !a.is_positive() {
                return Err(Error::Invalid("bounded_A must be positive".into()));
            }
        }
        let mut radius_floor = spec
            .radius_floor
            .as_ref()
            .map(|r| r.rational())
            .transpose()?;
        if radius_floor.is_none() && bounded_a.is_some() {
            radius_floor = Some(BigRational::one());
        }
        if let Some(r) = &radius_floor {
            if !r.is_positive() {
                return Err(Error::Invalid("radius_floor must be positive".into()));
            }
        }
        let restart_bound = spec
            .restart_bound
            .as_ref()
            .map(|r| r.rational())
            .transpose()?;
        let contour = match &spec.contour {
            Some(c) => Some((c.r.rational()?, c.m.rational()?)),
            None => None,
        };
        Ok(Self {
            spec,
            layout,
            diag_coeffs,
            bounded_a,
            radius_floor,
            restart_bound,
            contour,
            q_polys,
        })
    }

    pub fn spec(&self) -> &SeriesSpec {
        &self.spec
    }

    pub fn bounded_a(&self) -> Option<&BigInt> {
        self.bounded_a.as_ref()
    }

    pub fn radius_floor(&self) -> Option<&BigRational> {
        self.radius_floor.as_ref()
    }

    pub fn restart_bound(&self) -> Option<&BigRational> {
        self.restart_bound.as_ref()
    }

    pub fn contour(&self) -> Option<&(BigRational, BigRational)> {
        self.contour.as_ref()
    }

    /// `Q_1, …, Q_n` for adversarial specs, empty otherwise.
    pub fn q_polys(&self) -> &[IntPolynomial] {
        &self.q_polys
    }

    pub fn trend_from(&self) -> u64 {
        self.spec.trend_from.unwrap_or(1)
    }

    /// Number of blocks when the series is a finite prefix.
    pub fn block_count(&self) -> Option<u64> {
        match &self.layout {
            Layout::List(v) => Some(v.len() as u64),
            Layout::Explicit { s, .. } => Some(s.len() as u64),
            _ => None,
        }
    }

    fn check_block(&self, n: u64) -> Result<()> {
        match self.block_count() {
            Some(c) if n > c => Err(Error::IndexCap(format!(
                "block {n} beyond the {c} defined blocks"
            ))),
            _ => Ok(()),
        }
    }

    /// Exponent of the single term in block `n ≥ 1` for one-term layouts.
    fn term_exponent(&self, n: u64) -> Result<u64> {
        match &self.layout {
            Layout::Factorial { start } => factorial_u64(n + start - 1),
            Layout::TwoPowSquare => {
                let e = n.checked_mul(n).filter(|&e| e < 64);
                e.map(|e| 1u64 << e)
                    .ok_or_else(|| Error::IndexCap(format!("2^({n}²) does not fit in 64 bits")))
            }
            Layout::List(v) => v
                .get(n as usize - 1)
                .copied()
                .ok_or_else(|| Error::IndexCap(format!("exponent list has no entry {n}"))),
            Layout::Explicit { .. } => unreachable!(),
        }
    }

    /// `t_n` for `n ≥ 0`: the first index of block `n + 1`.
    pub fn t(&self, n: u64) -> Result<u64> {
        match &self.layout {
            Layout::Explicit { t, s, .. } => match t.get(n as usize) {
                Some(&v) => Ok(v),
                None if n as usize == s.len() => Ok(s[s.len() - 1] + 1),
                None => Err(Error::IndexCap(format!("t_{n} beyond the defined blocks"))),
            },
            Layout::List(v) if n as usize == v.len() => Ok(v[v.len() - 1] + 1),
            _ => self.term_exponent(n + 1),
        }
    }

    /// `s_n` for `n ≥ 1`: the last index of block `n`.
    pub fn s(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Invalid("s_n is defined for n ≥ 1".into()));
        }
        self.check_block(n)?;
        match &self.layout {
            Layout::Explicit { s, .. } => Ok(s[n as usize - 1]),
            _ => self.term_exponent(n),
        }
    }

    /// Nonzero terms `(k, a_k)` with `t_{n−1} ≤ k ≤ s_n`.
    pub fn block_terms(&self, n: u64) -> Result<Vec<(u64, BigInt)>> {
        let lo = self.t(n - 1)?;
        let hi = self.s(n)?;
        match &self.layout {
            Layout::Explicit { coeffs, .. } => Ok(coeffs
                .range(lo..=hi)
                .map(|(k, v)| (*k, v.clone()))
                .collect()),
            Layout::Factorial { .. } if self.diag_coeffs.is_empty() => {
                Ok(vec![(hi, BigInt::one())])
            }
            _ => {
                let c = &self.diag_coeffs[(n as usize - 1) % self.diag_coeffs.len()];
                Ok(if c.is_zero() {
                    vec![]
                } else {
                    vec![(hi, c.clone())]
                })
            }
        }
    }

    /// All indices `k ≤ limit` with `a_k ≠ 0`.
    pub fn support_up_to(&self, limit: u64) -> Result<Vec<u64>> {
        if let Layout::Explicit { coeffs, .. } = &self.layout {
            return Ok(coeffs.range(..=limit).map(|(k, _)| *k).collect());
        }
        let mut out = Vec::new();
        let mut n = 1;
        loop {
            if let Some(c) = self.block_count() {
                if n > c {
                    break;
                }
            }
            let e = match self.term_exponent(n) {
                Ok(e) => e,
                Err(Error::IndexCap(_)) => break,
                Err(e) => return Err(e),
            };
            if e > limit {
                break;
            }
            if self.block_terms(n)?.iter().any(|(k, _)| *k == e) {
                out.push(e);
            }
            n += 1;
        }
        Ok(out)
    }

    /// `a_k`.
    pub fn coeff(&self, k: u64) -> Result<BigInt> {
        if let Layout::Explicit { coeffs, .. } = &self.layout {
            return Ok(coeffs.get(&k).cloned().unwrap_or_default());
        }
        let mut n = 1;
        loop {
            let e = self.term_exponent(n)?;
            if e > k {
                return Ok(BigInt::zero());
            }
            if e == k {
                return Ok(self
                    .block_terms(n)?
                    .into_iter()
                    .next()
                    .map(|t| t.1)
                    .unwrap_or_default());
            }
            n += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_blocks() {
        let s = SeriesSpec::factorial(1).compile().unwrap();
        assert_eq!(s.t(0).unwrap(), 1);
        assert_eq!((s.s(1).unwrap(), s.t(1).unwrap()), (1, 2));
        assert_eq!((s.s(3).unwrap(), s.t(3).unwrap()), (6, 24));
        assert_eq!(s.block_terms(3).unwrap(), vec![(6, BigInt::one())]);
        assert!(matches!(s.s(21), Err(Error::IndexCap(_))));
        let s2 = SeriesSpec::factorial(2).compile().unwrap();
        assert_eq!(
            (s2.t(0).unwrap(), s2.s(1).unwrap(), s2.t(1).unwrap()),
            (2, 2, 6)
        );
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"diagonal","exponents":"two_pow_n_squared","coefficients":[1,-2],"bounded_A":2}"#;
        let spec = SeriesSpec::from_json(text).unwrap();
        let back = SeriesSpec::from_json(&spec.to_json().to_string()).unwrap();
        assert_eq!(spec, back);
        let s = spec.compile().unwrap();
        assert_eq!(s.s(2).unwrap(), 16);
        assert_eq!(s.coeff(16).unwrap(), BigInt::from(-2));
        assert_eq!(s.coeff(17).unwrap(), BigInt::zero());
        assert_eq!(s.radius_floor().unwrap(), &BigRational::one());
    }

    #[test]
    fn explicit_blocks() {
        let spec = SeriesSpec::blocks(vec![0, 3, 10], vec![1, 5], &[(0, 1), (1, 2), (4, -1)]);
        let s = spec.compile().unwrap();
        assert_eq!(s.block_terms(2).unwrap(), vec![(4, BigInt::from(-1))]);
        assert_eq!(s.support_up_to(100).unwrap(), vec![0, 1, 4]);
        assert!(s.s(3).is_err());
    }
}
