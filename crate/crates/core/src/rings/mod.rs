//! Coefficient rings and the combinatorial scalars used throughout the crate.
//!
//! A [`Ring`] is a context object: it knows how to build, combine and print
//! its elements. Series and measures carry their ring, so mismatched rings are
//! detected at the first operation that mixes them.

mod combinat;
mod padic;
mod rational;

pub use combinat::{
    bernoulli, bernoulli_numbers, binomial, binomial_int, divisor_sigma, factorial, is_prime, vp, vp_factorial, vp_int,
};
pub use padic::{PAdicRing, PAdicScalar};
pub use rational::{format_rational, is_integer, parse_rational, Rationals};

use crate::error::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// Exact rational number. Always reduced with a positive denominator.
pub type ExactRational = BigRational;

/// Guaranteed p-adic precision of a value: `None` means exact.
pub type Precision = Option<u32>;

pub fn min_precision(a: Precision, b: Precision) -> Precision {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    /// Human-readable ring tag, e.g. `rational`, `padic(5,6)`.
    fn tag(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Exact zero. A p-adic zero known only to finite precision is not exact.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Zero to the precision the element is known to.
    fn vanishes(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Certified absolute precision of `a`.
    fn precision(&self, _a: &Self::Elem) -> Precision {
        None
    }

    /// Exact denominator of `a`, for rings of fractions.
    fn denominator(&self, _a: &Self::Elem) -> Option<BigInt> {
        None
    }

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn to_json(&self, a: &Self::Elem) -> serde_json::Value {
        serde_json::Value::String(self.format(a))
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<Self::Elem> {
        match v {
            serde_json::Value::String(s) => self.parse(s),
            serde_json::Value::Number(n) => self.parse(&n.to_string()),
            other => Err(crate::Error::Parse(format!("expected a scalar, found {other}"))),
        }
    }

    fn scale_i64(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_i64(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}
