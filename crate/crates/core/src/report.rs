//! Helpers for canonical JSON output.
//!
//! Keys are emitted in sorted order (serde_json's default map is ordered) and
//! exact numbers are written as strings, so identical inputs give identical
//! bytes.

use serde_json::{json, Value};

use crate::exact::BigRational;
use crate::numerics::{ComplexBall, Dyadic, Interval};

pub fn dyadic(d: &Dyadic) -> Value {
    Value::String(d.to_string())
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

/// Exact endpoints plus a short decimal reading for humans.
pub fn interval(i: &Interval) -> Value {
    json!({
        "lo": dyadic(&i.lo),
        "hi": dyadic(&i.hi),
        "approx": format!("{:.12e}", i.to_f64()),
    })
}

pub fn ball(b: &ComplexBall) -> Value {
    let (re, im) = b.to_f64_pair();
    json!({
        "re": dyadic(&b.re),
        "im": dyadic(&b.im),
        "rad": dyadic(&b.rad),
        "approx": format!("{:.12e} {:+.12e}i", re, im),
    })
}

/// Pretty-printed canonical form with a trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
