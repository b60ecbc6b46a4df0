//! Measures on `Z_p` through their Amice transforms `Σ μ(C(z, n)) t^n`, the
//! integration pairing with certified precision, and finite-level Cartier
//! duality.

mod finite;
mod growth;

pub use finite::{
    convolve_finite, finite_level_transform, level_compatibility_check, pascal_matrix, poly_mul_mod, CompatibilityReport,
    DiagramCheck, Direction, FiniteLevelData, Side,
};
pub use growth::{growth_profile, GrowthClass, GrowthProfile};

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::mahler::{amice_tail_bound, amice_tail_valuation, mahler_of_masked_power, Mask, MahlerCoeffs, Regularity};
use crate::rings::{binomial, binomial_int, is_prime, min_precision, PAdicRing, PAdicScalar, Precision, Ring};
use crate::series::TruncSeries;
use num_bigint::BigInt;
use serde_json::{json, Value};

/// A value together with the number of p-adic digits it is guaranteed to.
#[derive(Debug, Clone, PartialEq)]
pub struct Certified<T> {
    pub value: T,
    /// `None`: exact.
    pub precision: Precision,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmiceMeasure<R: Ring> {
    p: u64,
    series: TruncSeries<R>,
    /// `v_p(b_n) >= norm_exponent` for every `n`.
    norm_exponent: i64,
}

impl<R: Ring> AmiceMeasure<R> {
    pub fn new(p: u64, series: TruncSeries<R>, norm_exponent: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if series.ord() < 0 {
            return Err(Error::Precondition("an Amice series has no negative powers".into()));
        }
        Ok(Self { p, series, norm_exponent })
    }

    /// The point mass at an integer: `(1 + t)^a`.
    pub fn dirac(ring: &R, p: u64, a: &BigInt, degree: i64) -> Result<Self> {
        let terms = (0..degree.max(0)).map(|n| (n, ring.from_bigint(&binomial_int(a, n as u64))));
        Self::new(p, TruncSeries::from_terms(ring, terms, degree), 0)
    }

    pub fn zero(ring: &R, p: u64, degree: i64) -> Result<Self> {
        Self::new(p, TruncSeries::zero(ring, degree), 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn series(&self) -> &TruncSeries<R> {
        &self.series
    }

    pub fn ring(&self) -> &R {
        self.series.ring()
    }

    /// Coefficients `b_n` are known for `n < degree`.
    pub fn degree(&self) -> i64 {
        self.series.trunc()
    }

    pub fn norm_exponent(&self) -> i64 {
        self.norm_exponent
    }

    pub fn precision(&self) -> Precision {
        self.series.precision()
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::Precondition(format!("measures on Z_{} and Z_{}", self.p, other.p)));
        }
        Ok(())
    }

    /// `∫ f dμ = Σ a_n(f) b_n`, certified by the Amice bound on the tail.
    pub fn evaluate(&self, f: &MahlerCoeffs<R>) -> Result<Certified<R::Elem>> {
        if f.p() != self.p {
            return Err(Error::Precondition(format!("function on Z_{} against a measure on Z_{}", f.p(), self.p)));
        }
        let ring = self.ring();
        let a = f.coeffs();
        let known = self.degree().max(0) as usize;
        let last_nonzero = a.iter().rposition(|c| !ring.is_zero(c)).map_or(0, |i| i + 1);
        let exact_sum = f.is_finitely_supported() && last_nonzero <= known;
        let upto = if exact_sum { last_nonzero } else { a.len().min(known) };
        let mut value = ring.zero();
        for (n, an) in a.iter().enumerate().take(upto) {
            value = ring.add(&value, &ring.mul(an, &self.series.coeff(n as i64)));
        }
        let mut precision = ring.precision(&value);
        if !exact_sum {
            let reg = f.regularity().ok_or(Error::UncertifiableTail)?;
            let tail = amice_tail_valuation(self.p, reg, upto as u64) + self.norm_exponent;
            precision = min_precision(precision, Some(tail.max(0) as u32));
        }
        Ok(Certified { value, precision })
    }

    /// Convolution, the product of Amice series.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Self::new(self.p, self.series.mul(&other.series)?, self.norm_exponent + other.norm_exponent)
    }

    /// `z μ`, with series `(1 + t) dF/dt`.
    pub fn apply_coordinate(&self) -> Result<Self> {
        if self.degree() < 1 {
            return Err(Error::InsufficientOrder { requested: 1, achievable: 0 });
        }
        let d = self.series.derive();
        let s = d.add(&d.shift(1).with_trunc(d.trunc()))?;
        Self::new(self.p, s, self.norm_exponent)
    }

    /// `μ(z^k) = ((1 + t) d/dt)^k F` at `t = 0`.
    pub fn moment(&self, k: u32) -> Result<R::Elem> {
        if k as i64 >= self.degree() {
            return Err(Error::InsufficientOrder { requested: k as i64, achievable: self.degree() - 1 });
        }
        let mut m = Self::new(self.p, self.series.with_trunc(k as i64 + 1), self.norm_exponent)?;
        for _ in 0..k {
            m = m.apply_coordinate()?;
        }
        m.series.constant_term()
    }

    /// Pushforward along `z -> -z`: `F((1 + t)^-1 - 1)`.
    pub fn antipode(&self) -> Result<Self> {
        let ring = self.ring();
        let inv = TruncSeries::from_i64s(ring, &[1, 1], self.degree().max(1)).invert_unit()?.add_scalar(&ring.from_i64(-1));
        Self::new(self.p, self.series.compose(&inv)?, self.norm_exponent)
    }

    /// Series JSON plus `{p, K, norm_exponent}`.
    pub fn to_json(&self) -> Value {
        let mut v = self.series.to_json();
        let obj = v.as_object_mut().expect("series JSON is an object");
        obj.insert("p".into(), json!(self.p));
        obj.insert("K".into(), json!(self.precision()));
        obj.insert("norm_exponent".into(), json!(self.norm_exponent));
        v
    }

    pub fn from_json(ring: &R, v: &Value) -> Result<Self> {
        let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| Error::Parse("measure JSON needs p".into()))?;
        let c = v
            .get("norm_exponent")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("measure JSON needs norm_exponent".into()))?;
        Self::new(p, TruncSeries::from_json(ring, v)?, c)
    }

    /// `μ(z^k 1_{Z_p^×}) = μ(z^k) - Σ_{n<N} a_n(z^k 1_{pZ_p}) b_n` with `N`
    /// from the Amice tail bound at level 1.
    pub fn restrict_units(&self, ks: &[u32], target: u32) -> Result<Vec<Certified<R::Elem>>> {
        self.restrict_units_with(Executor::default(), ks, target)
    }

    pub fn restrict_units_with(&self, exec: Executor, ks: &[u32], target: u32) -> Result<Vec<Certified<R::Elem>>> {
        let n = amice_tail_bound(self.p, 1, self.norm_exponent, target);
        if (self.degree().max(0) as u64) < n {
            return Err(Error::InsufficientDegree { have: self.degree(), need: n as i64, precision: target });
        }
        exec.map(ks, |&k| self.restrict_one(k, n)).into_iter().collect()
    }

    fn restrict_one(&self, k: u32, n: u64) -> Result<Certified<R::Elem>> {
        let ring = self.ring();
        let full = self.moment(k)?;
        let masked = if n == 0 {
            MahlerCoeffs::new(ring, self.p, vec![], Some(Regularity { level: 1, norm_exponent: 0 }), false)
        } else {
            mahler_of_masked_power(ring, self.p, k, Mask::PZp, n - 1)?
        };
        let part = self.evaluate(&masked)?;
        let value = ring.sub(&full, &part.value);
        let precision = min_precision(part.precision, ring.precision(&value));
        Ok(Certified { value, precision })
    }
}

impl AmiceMeasure<PAdicRing> {
    /// The point mass at a p-adic residue; `C(a, n)` loses `v_p(n!)` digits.
    pub fn dirac_scalar(ring: &PAdicRing, a: &PAdicScalar, degree: i64) -> Result<Self> {
        let mut terms = Vec::new();
        for n in 0..degree.max(0) {
            terms.push((n, binomial(a, n as u64)?));
        }
        Self::new(ring.p(), TruncSeries::from_terms(ring, terms, degree), 0)
    }
}

/// Certified digits of a restriction computed at degree `D`: the largest `K`
/// whose tail bound `D` satisfies.
pub fn certifiable_precision(p: u64, norm_exponent: i64, degree: i64) -> u32 {
    let reg = Regularity { level: 1, norm_exponent };
    amice_tail_valuation(p, reg, degree.max(0) as u64).max(0) as u32
}
