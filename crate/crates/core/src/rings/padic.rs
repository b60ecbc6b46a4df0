//! Residues modulo `p^K` with a tracked guaranteed precision.
//!
//! A [`PAdicScalar`] stands for the set of p-adic integers congruent to
//! `value` modulo `p^prec`. The stored value is always reduced modulo
//! `p^prec`, so two scalars compare equal exactly when they carry the same
//! information. Precision only ever goes down:
//!
//! ```text
//! (a + O(p^r)) + (b + O(p^s)) = a + b + O(p^min(r, s))
//! (a + O(p^r)) (b + O(p^s))   = ab + O(p^min(r + v(b), s + v(a)))
//! ```
//!
//! and division by an element of valuation `s` costs `s` digits (more when
//! the divisor itself is imprecise).

use super::{combinat, Precision, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

const MODULUS_BITS: u32 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicScalar {
    p: u64,
    k: u32,
    value: u64,
    prec: u32,
}

/// `Z/p^K` viewed as a truncation of `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicRing {
    p: u64,
    k: u32,
}

fn pow_u64(p: u64, e: u32) -> u64 {
    p.pow(e)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn vp_u64(mut x: u64, p: u64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Inverse of a unit modulo `m` by the extended Euclidean algorithm.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

impl PAdicRing {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !combinat::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Precondition("modulus exponent K must be at least 1".into()));
        }
        match p.checked_pow(k) {
            Some(m) if m < 1 << MODULUS_BITS => {}
            _ => return Err(Error::ModulusTooLarge { p, k }),
        }
        Ok(PAdicRing { p, k })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        pow_u64(self.p, self.k)
    }

    /// Element known to `prec` digits; `value` may be any integer.
    pub fn element(&self, value: &BigInt, prec: u32) -> PAdicScalar {
        let prec = prec.min(self.k);
        let m = BigInt::from(pow_u64(self.p, prec));
        let v = value.mod_floor(&m).to_u64().expect("reduced below 2^62");
        PAdicScalar { p: self.p, k: self.k, value: v, prec }
    }

    pub fn from_u64(&self, value: u64) -> PAdicScalar {
        let m = self.modulus();
        PAdicScalar { p: self.p, k: self.k, value: value % m, prec: self.k }
    }
}

impl PAdicScalar {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn modulus_exponent(&self) -> u32 {
        self.k
    }
    /// Representative in `[0, p^prec)`.
    pub fn value(&self) -> u64 {
        self.value
    }
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `min(v_p(value), prec)`; a zero known to `r` digits has valuation `r`.
    pub fn valuation(&self) -> u32 {
        if self.value == 0 {
            self.prec
        } else {
            vp_u64(self.value, self.p).min(self.prec)
        }
    }

    fn with(&self, value: u64, prec: u32) -> PAdicScalar {
        let prec = prec.min(self.k);
        PAdicScalar { p: self.p, k: self.k, value: value % pow_u64(self.p, prec), prec }
    }

    fn check_same(&self, other: &PAdicScalar) {
        assert!(
            self.p == other.p && self.k == other.k,
            "mixing residues mod {}^{} and {}^{}",
            self.p,
            self.k,
            other.p,
            other.k
        );
    }

    pub fn add(&self, other: &PAdicScalar) -> PAdicScalar {
        self.check_same(other);
        let m = pow_u64(self.p, self.k);
        self.with((self.value as u128 + other.value as u128).rem_euclid(m as u128) as u64, self.prec.min(other.prec))
    }

    pub fn neg(&self) -> PAdicScalar {
        let m = pow_u64(self.p, self.prec);
        self.with((m - self.value) % m, self.prec)
    }

    pub fn sub(&self, other: &PAdicScalar) -> PAdicScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PAdicScalar) -> PAdicScalar {
        self.check_same(other);
        let prec = (self.prec + other.valuation()).min(other.prec + self.valuation());
        self.with(mul_mod(self.value, other.value, pow_u64(self.p, self.k)), prec)
    }

    /// Lower the claimed precision to at most `prec` digits.
    pub fn truncate(&self, prec: u32) -> PAdicScalar {
        self.with(self.value, self.prec.min(prec))
    }

    /// Division with precision accounting.
    ///
    /// For `self = x + O(p^r)` and `d = p^s u + O(p^t)` with `t > s`, the
    /// quotient is known to `min(r - s, v(x) - 2s + t)` digits.
    pub fn div(&self, d: &PAdicScalar) -> Result<PAdicScalar> {
        self.check_same(d);
        if d.value == 0 {
            return Err(Error::NotInvertible(format!("0 + O({}^{})", d.p, d.prec)));
        }
        let s = d.valuation();
        let vx = self.valuation();
        if vx < s {
            return Err(Error::NotIntegral(format!(
                "{self} / {d}: dividend valuation {vx} below divisor valuation {s}"
            )));
        }
        let ps = pow_u64(self.p, s);
        let m = pow_u64(self.p, self.k);
        let unit = d.value / ps;
        let uinv = inv_mod(unit % m, m).expect("unit part is invertible");
        let q = mul_mod(self.value / ps, uinv, m);
        let prec = (self.prec - s).min(vx + d.prec - 2 * s);
        Ok(self.with(q, prec))
    }

    pub fn is_unit(&self) -> bool {
        self.prec >= 1 && !self.value.is_multiple_of(self.p)
    }

    /// The residue as a signed integer in `(-p^prec/2, p^prec/2]`.
    pub fn centered(&self) -> i64 {
        let m = pow_u64(self.p, self.prec) as i64;
        let v = self.value as i64;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    }

    /// Whether `self` and `other` agree modulo `p^r`. Both must be known to at
    /// least `r` digits.
    pub fn congruent(&self, other: &PAdicScalar, r: u32) -> bool {
        self.check_same(other);
        if self.prec < r || other.prec < r {
            return false;
        }
        let m = pow_u64(self.p, r);
        self.value % m == other.value % m
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.value, self.p, self.prec)
    }
}

impl Ring for PAdicRing {
    type Elem = PAdicScalar;

    fn tag(&self) -> String {
        format!("padic({},{})", self.p, self.k)
    }
    fn zero(&self) -> PAdicScalar {
        self.from_u64(0)
    }
    fn from_i64(&self, n: i64) -> PAdicScalar {
        let m = self.modulus() as i128;
        PAdicScalar { p: self.p, k: self.k, value: (n as i128).rem_euclid(m) as u64, prec: self.k }
    }
    fn from_bigint(&self, n: &BigInt) -> PAdicScalar {
        self.element(n, self.k)
    }
    fn from_rational(&self, q: &BigRational) -> Result<PAdicScalar> {
        let num = self.from_bigint(q.numer());
        if q.denom().is_one() {
            return Ok(num);
        }
        // The denominator is an exact integer; only its p-part costs digits.
        let p = BigInt::from(self.p);
        let mut d = q.denom().clone();
        let mut s = 0u32;
        while (&d % &p).is_zero() {
            d /= &p;
            s += 1;
        }
        if s > 0 {
            let vn = combinat::vp_int(q.numer(), self.p)?;
            if vn < s {
                return Err(Error::NotIntegral(format!("{} has negative {}-adic valuation", q, self.p)));
            }
            // Exact numerator, so cancelling p^s loses nothing.
            let reduced = q.numer() / p.pow(s);
            return self.from_bigint(&reduced).div(&self.from_bigint(&d));
        }
        num.div(&self.from_bigint(&d))
    }
    fn add(&self, a: &PAdicScalar, b: &PAdicScalar) -> PAdicScalar {
        a.add(b)
    }
    fn sub(&self, a: &PAdicScalar, b: &PAdicScalar) -> PAdicScalar {
        a.sub(b)
    }
    fn neg(&self, a: &PAdicScalar) -> PAdicScalar {
        a.neg()
    }
    fn mul(&self, a: &PAdicScalar, b: &PAdicScalar) -> PAdicScalar {
        a.mul(b)
    }
    fn is_zero(&self, a: &PAdicScalar) -> bool {
        a.value == 0 && a.prec == self.k
    }
    fn vanishes(&self, a: &PAdicScalar) -> bool {
        a.value == 0
    }
    fn is_unit(&self, a: &PAdicScalar) -> bool {
        a.is_unit()
    }
    fn inv(&self, a: &PAdicScalar) -> Result<PAdicScalar> {
        self.one().div(a)
    }
    fn precision(&self, a: &PAdicScalar) -> Precision {
        Some(a.prec)
    }
    fn format(&self, a: &PAdicScalar) -> String {
        if a.prec == self.k {
            a.value.to_string()
        } else {
            format!("{}+O({}^{})", a.value, self.p, a.prec)
        }
    }
    fn parse(&self, s: &str) -> Result<PAdicScalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a {} residue: {s:?}", self.tag()));
        if let Some((v, rest)) = s.split_once("+O(") {
            let (base, e) = rest.trim_end_matches(')').split_once('^').ok_or_else(bad)?;
            if base.trim().parse::<u64>().map_err(|_| bad())? != self.p {
                return Err(bad());
            }
            let prec: u32 = e.trim().parse().map_err(|_| bad())?;
            let v: BigInt = v.trim().parse().map_err(|_| bad())?;
            return Ok(self.element(&v, prec));
        }
        if s.contains('/') {
            return self.from_rational(&super::rational::parse_rational(s)?);
        }
        let v: BigInt = s.parse().map_err(|_| bad())?;
        Ok(self.from_bigint(&v))
    }
}
