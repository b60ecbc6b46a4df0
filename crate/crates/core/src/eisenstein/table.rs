use crate::error::{Error, Result};
use crate::rings::{format_rational, parse_rational, Precision, Ring};
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveDescriptor {
    Weierstrass { g2: BigRational, g3: BigRational },
    Tate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateSystem {
    FormalT,
    LaurentZ,
    TateQ,
}

impl fmt::Display for CoordinateSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoordinateSystem::FormalT => "formal-t",
            CoordinateSystem::LaurentZ => "laurent-z",
            CoordinateSystem::TateQ => "tate-q",
        })
    }
}

impl std::str::FromStr for CoordinateSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formal-t" => Ok(CoordinateSystem::FormalT),
            "laurent-z" => Ok(CoordinateSystem::LaurentZ),
            "tate-q" => Ok(CoordinateSystem::TateQ),
            other => Err(Error::Parse(format!("unknown coordinate system {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentEntry<E> {
    /// Weight; the moment is against the `(k-2)`-th power.
    pub k: u32,
    pub value: E,
    pub system: CoordinateSystem,
    /// Certified p-adic digits, `None` when exact.
    pub precision: Precision,
}

/// Moments of `Eis^(n)` indexed by weight, with their provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<R: Ring> {
    pub ring: R,
    pub curve: CurveDescriptor,
    pub n: i64,
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub q_order: Option<i64>,
    /// Order in `t` of the series the moments were read from.
    pub truncation: Option<i64>,
    pub entries: Vec<MomentEntry<R::Elem>>,
}

impl<R: Ring> MomentTable<R> {
    pub fn get(&self, k: u32) -> Option<&R::Elem> {
        self.entries.iter().find(|e| e.k == k).map(|e| &e.value)
    }

    /// Odd weights and `k = 2` must carry zero.
    pub fn check_vanishing(&self) -> Result<()> {
        for e in &self.entries {
            if (e.k % 2 == 1 || e.k == 2) && !self.ring.vanishes(&e.value) {
                return Err(Error::Inconsistent(format!("moment at k = {} is {}", e.k, self.ring.format(&e.value))));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let curve = match &self.curve {
            CurveDescriptor::Weierstrass { g2, g3 } => json!({"g2": format_rational(g2), "g3": format_rational(g3)}),
            CurveDescriptor::Tate => json!("tate"),
        };
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "k": e.k,
                    "value": self.ring.to_json(&e.value),
                    "system": e.system.to_string(),
                    "precision": e.precision,
                })
            })
            .collect();
        let mut m = Map::new();
        m.insert("curve".into(), curve);
        m.insert("n".into(), json!(self.n));
        m.insert("ring".into(), json!(self.ring.tag()));
        if let Some(p) = self.p {
            m.insert("p".into(), json!(p));
        }
        if let Some(k) = self.precision {
            m.insert("K".into(), json!(k));
        }
        if let Some(q) = self.q_order {
            m.insert("qOrder".into(), json!(q));
        }
        if let Some(t) = self.truncation {
            m.insert("truncation".into(), json!(t));
        }
        m.insert("entries".into(), Value::Array(entries));
        Value::Object(m)
    }

    pub fn from_json(ring: &R, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("moment table: {what}"));
        if v.get("ring").and_then(Value::as_str) != Some(ring.tag().as_str()) {
            return Err(Error::RingMismatch {
                left: ring.tag(),
                right: v.get("ring").map(|r| r.to_string()).unwrap_or_default(),
            });
        }
        let curve = match v.get("curve").ok_or_else(|| bad("missing curve"))? {
            Value::String(s) if s == "tate" => CurveDescriptor::Tate,
            Value::Object(o) => {
                let g = |key: &str| -> Result<BigRational> {
                    parse_rational(o.get(key).and_then(Value::as_str).ok_or_else(|| bad(key))?)
                };
                CurveDescriptor::Weierstrass { g2: g("g2")?, g3: g("g3")? }
            }
            _ => return Err(bad("curve")),
        };
        let mut entries = Vec::new();
        for e in v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("entries"))? {
            entries.push(MomentEntry {
                k: e.get("k").and_then(Value::as_u64).ok_or_else(|| bad("k"))? as u32,
                value: ring.from_json(e.get("value").ok_or_else(|| bad("value"))?)?,
                system: e.get("system").and_then(Value::as_str).ok_or_else(|| bad("system"))?.parse()?,
                precision: e.get("precision").and_then(Value::as_u64).map(|x| x as u32),
            });
        }
        Ok(Self {
            ring: ring.clone(),
            curve,
            n: v.get("n").and_then(Value::as_i64).ok_or_else(|| bad("n"))?,
            p: v.get("p").and_then(Value::as_u64),
            precision: v.get("K").and_then(Value::as_u64).map(|x| x as u32),
            q_order: v.get("qOrder").and_then(Value::as_i64),
            truncation: v.get("truncation").and_then(Value::as_i64),
            entries,
        })
    }

    /// `k,value,system,precision`, one row per entry.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(format!("csv: {e}"));
        w.write_record(["k", "value", "system", "precision"]).map_err(io)?;
        for e in &self.entries {
            let prec = e.precision.map(|p| p.to_string()).unwrap_or_else(|| "exact".into());
            w.write_record([e.k.to_string(), self.ring.format(&e.value), e.system.to_string(), prec]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(format!("csv: {e}")))
    }
}
