//! `{"ring": tag, "trunc": D, "coeffs": [[exp, value], ...]}`.

use super::TruncSeries;
use crate::error::{Error, Result};
use crate::rings::Ring;
use serde_json::{json, Value};

pub(crate) fn coeffs_json<R: Ring>(s: &TruncSeries<R>) -> Value {
    let coeffs: Vec<Value> = s.terms().map(|(e, c)| json!([e, s.ring().to_json(c)])).collect();
    json!({ "trunc": s.trunc(), "coeffs": coeffs })
}

pub(crate) fn series_from_parts<R: Ring>(ring: &R, v: &Value) -> Result<TruncSeries<R>> {
    let bad = |what: &str| Error::Parse(format!("series JSON: {what}"));
    let trunc = v.get("trunc").and_then(Value::as_i64).ok_or_else(|| bad("missing integer `trunc`"))?;
    let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing array `coeffs`"))?;
    let mut terms = Vec::with_capacity(coeffs.len());
    for pair in coeffs {
        let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("coefficient entries are [exp, value]"))?;
        let e = pair[0].as_i64().ok_or_else(|| bad("exponent must be an integer"))?;
        if e >= trunc {
            return Err(bad("exponent at or beyond the truncation order"));
        }
        terms.push((e, ring.from_json(&pair[1])?));
    }
    Ok(TruncSeries::from_terms(ring, terms, trunc))
}

impl<R: Ring> TruncSeries<R> {
    pub fn to_json(&self) -> Value {
        let mut v = coeffs_json(self);
        v["ring"] = Value::String(self.ring().tag());
        v
    }

    /// Parse a series in `ring`; the stored ring tag must match.
    pub fn from_json(ring: &R, v: &Value) -> Result<Self> {
        match v.get("ring").and_then(Value::as_str) {
            Some(tag) if tag == ring.tag() => {}
            Some(tag) => return Err(Error::RingMismatch { left: tag.to_string(), right: ring.tag() }),
            None => return Err(Error::Parse("series JSON: missing `ring`".into())),
        }
        series_from_parts(ring, v)
    }
}
