//! Self-contained certificate records and their re-checking.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::exceptions::exception_scan;
use super::scan::{lower_degree_scan, ScanParams};
use super::witness::check_witness;
use crate::error::{Error, Result};
use crate::exact::{BigRational, IntPolynomial};
use crate::field::{NFElement, NumberField};
use crate::numerics::{ComplexBall, Dyadic};
use crate::report;
use crate::series::SeriesSpec;

pub const CHECKER_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    UmWitness,
    LowerScan,
    ExceptionScan,
}

impl CertKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertKind::UmWitness => "um_witness",
            CertKind::LowerScan => "lower_scan",
            CertKind::ExceptionScan => "exception_scan",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "um_witness" => Ok(CertKind::UmWitness),
            "lower_scan" => Ok(CertKind::LowerScan),
            "exception_scan" => Ok(CertKind::ExceptionScan),
            _ => Err(Error::Recheck(format!("unknown certificate kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub kind: CertKind,
    pub series: SeriesSpec,
    pub alpha: Option<NFElement>,
    pub payload: Value,
}

/// `{field, root, coords}`: the defining polynomial, an isolating box for the
/// chosen root, and power-basis coordinates.
pub fn alpha_to_json(a: &NFElement) -> Value {
    let f = a.field();
    let b = f.embedding_box();
    json!({
        "field": f.defining_poly().to_string(),
        "root": {
            "re": report::dyadic(&b.re),
            "im": report::dyadic(&b.im),
            "rad": report::dyadic(&b.rad),
        },
        "coords": a.coords().iter().map(report::rational).collect::<Vec<_>>(),
    })
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key)
        .and_then(|x| x.as_str())
        .ok_or_else(|| Error::Recheck(format!("missing string field {key:?}")))
}

pub fn alpha_from_json(v: &Value) -> Result<NFElement> {
    let poly: IntPolynomial = str_field(v, "field")?.parse()?;
    let root = v
        .get("root")
        .ok_or_else(|| Error::Recheck("missing root box".into()))?;
    let d = |k: &str| -> Result<Dyadic> { str_field(root, k)?.parse() };
    let ball = ComplexBall::new(d("re")?, d("im")?, d("rad")?, 64);
    let field = if poly == IntPolynomial::from_i64s(&[0, 1]) {
        NumberField::rationals()
    } else {
        NumberField::with_box(&poly, &ball)?
    };
    let coords = v
        .get("coords")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Error::Recheck("missing coords".into()))?
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::Recheck("coordinate is not a string".into()))?
                .parse()
        })
        .collect::<Result<Vec<BigRational>>>()?;
    field.element(coords)
}

fn digest(body: &Value) -> String {
    hex::encode(Sha256::digest(body.to_string().as_bytes()))
}

impl Certificate {
    fn body(&self) -> Value {
        json!({
            "checker_version": CHECKER_VERSION,
            "kind": self.kind.as_str(),
            "series": self.series.to_json(),
            "alpha": self.alpha.as_ref().map(alpha_to_json),
            "payload": self.payload,
        })
    }

    /// Canonical JSON including a SHA-256 digest of the rest of the record.
    pub fn to_json(&self) -> Value {
        let mut body = self.body();
        let d = digest(&body);
        body.as_object_mut()
            .unwrap()
            .insert("digest".into(), Value::String(d));
        body
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut obj: Map<String, Value> = v
            .as_object()
            .cloned()
            .ok_or_else(|| Error::Recheck("certificate is not an object".into()))?;
        let recorded = obj
            .remove("digest")
            .and_then(|d| d.as_str().map(String::from))
            .ok_or_else(|| Error::Recheck("missing digest".into()))?;
        let body = Value::Object(obj);
        if digest(&body) != recorded {
            return Err(Error::Recheck("digest mismatch".into()));
        }
        if str_field(&body, "checker_version")? != CHECKER_VERSION {
            return Err(Error::Recheck("unsupported checker_version".into()));
        }
        let kind = CertKind::parse(str_field(&body, "kind")?)?;
        let series: SeriesSpec = serde_json::from_value(body["series"].clone())
            .map_err(|e| Error::Recheck(format!("bad series: {e}")))?;
        let alpha = match &body["alpha"] {
            Value::Null => None,
            a => Some(alpha_from_json(a)?),
        };
        Ok(Self {
            kind,
            series,
            alpha,
            payload: body["payload"].clone(),
        })
    }
}

fn recheck(e: Error) -> Error {
    match e {
        Error::Recheck(_) => e,
        other => Error::Recheck(other.to_string()),
    }
}

/// Re-derives every claim of a certificate from its own contents.
pub fn verify(v: &Value) -> Result<Value> {
    let cert = Certificate::from_json(v)?;
    let series = cert.series.compile().map_err(recheck)?;
    let need_alpha = || {
        cert.alpha
            .clone()
            .ok_or_else(|| Error::Recheck("certificate has no alpha".into()))
    };
    match cert.kind {
        CertKind::UmWitness => {
            check_witness(&series, &need_alpha()?, &cert.payload).map_err(recheck)?;
        }
        CertKind::LowerScan => {
            let params = ScanParams::from_json(&cert.payload).map_err(recheck)?;
            let again = lower_degree_scan(&series, &need_alpha()?, &params).map_err(recheck)?;
            if again.payload != cert.payload {
                return Err(Error::Recheck(
                    "scan result differs on recomputation".into(),
                ));
            }
        }
        CertKind::ExceptionScan => {
            let get = |k: &str| {
                cert.payload[k]
                    .as_u64()
                    .ok_or_else(|| Error::Recheck(format!("missing {k}")))
            };
            let again =
                exception_scan(&series, get("d")? as usize, get("prefix")?).map_err(recheck)?;
            if again.payload != cert.payload {
                return Err(Error::Recheck(
                    "exception scan differs on recomputation".into(),
                ));
            }
        }
    }
    Ok(json!({
        "kind": cert.kind.as_str(),
        "digest": v["digest"],
        "verified": true,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::um_witness;
    use crate::series::SeriesSpec;

    fn witness_json() -> Value {
        let s = SeriesSpec::factorial(1).compile().unwrap();
        let a = NumberField::rationals().from_rational(BigRational::ratio(1, 2));
        um_witness(&s, &a, &BigRational::from_i64(3), 1, 10)
            .unwrap()
            .to_json()
    }

    #[test]
    fn roundtrip_verifies() {
        let v = witness_json();
        let text = report::to_canonical(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(verify(&back).unwrap()["verified"], true);
    }

    #[test]
    fn tampered_payload_fails() {
        let mut v = witness_json();
        v["payload"]["n"] = json!(2);
        assert!(matches!(verify(&v), Err(Error::Recheck(_))));
    }

    #[test]
    fn tampered_with_fresh_digest_fails() {
        let mut v = witness_json();
        v["payload"]["n"] = json!(2);
        let mut body = v.clone();
        body.as_object_mut().unwrap().remove("digest");
        v["digest"] = json!(digest(&body));
        assert!(matches!(verify(&v), Err(Error::Recheck(_))));
    }

    #[test]
    fn algebraic_alpha_roundtrip() {
        let k = NumberField::new(&"T^2-2".parse().unwrap()).unwrap();
        let a = k
            .element(vec![BigRational::ratio(1, 3), BigRational::from_i64(2)])
            .unwrap();
        let back = alpha_from_json(&alpha_to_json(&a)).unwrap();
        assert!(back.field().same_as(a.field()));
        assert_eq!(back.coords(), a.coords());
    }
}
