//! Truncated power and Laurent series over a pluggable coefficient ring.
//!
//! A series is a sparse map from exponents to nonzero coefficients together
//! with an explicit truncation order `D`: everything at exponent `>= D` is
//! unknown. Every operation derives its output truncation from its inputs:
//!
//! * `add`, `sub`: `min(D1, D2)`
//! * `mul`: `min(D1 + ord2, D2 + ord1)`, with `ord` the lowest stored exponent
//!   (or `D` for a series with no known nonzero terms)
//! * `compose(f, g)`: Horner evaluation, so the product rule above bounds it
//!   by `ord(g) * Df` and by `Dg` plus the order of `f - f(0)`.

mod bivariate;
mod json;
mod qring;

pub use bivariate::BivarTruncSeries;
pub use qring::SeriesRing;

use crate::error::{Error, Result};
use crate::rings::{min_precision, Precision, Rationals, Ring};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

/// Truncation used for intermediate constants that must never limit a result.
pub(crate) const EXACT: i64 = 1 << 40;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<R: Ring> {
    ring: R,
    coeffs: BTreeMap<i64, R::Elem>,
    trunc: i64,
}

impl<R: Ring> TruncSeries<R> {
    pub fn zero(ring: &R, trunc: i64) -> Self {
        TruncSeries { ring: ring.clone(), coeffs: BTreeMap::new(), trunc }
    }

    /// Builds a series, dropping exact zeros and anything at or beyond `trunc`.
    /// Repeated exponents are summed.
    pub fn from_terms<I>(ring: &R, terms: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = (i64, R::Elem)>,
    {
        let mut coeffs: BTreeMap<i64, R::Elem> = BTreeMap::new();
        for (e, c) in terms {
            if e >= trunc {
                continue;
            }
            match coeffs.get_mut(&e) {
                Some(old) => *old = ring.add(old, &c),
                None => {
                    coeffs.insert(e, c);
                }
            }
        }
        coeffs.retain(|_, c| !ring.is_zero(c));
        TruncSeries { ring: ring.clone(), coeffs, trunc }
    }

    /// `c_0 + c_1 t + ...` from small integers.
    pub fn from_i64s(ring: &R, cs: &[i64], trunc: i64) -> Self {
        Self::from_terms(ring, cs.iter().enumerate().map(|(e, &c)| (e as i64, ring.from_i64(c))), trunc)
    }

    pub fn monomial(ring: &R, c: R::Elem, e: i64, trunc: i64) -> Self {
        Self::from_terms(ring, [(e, c)], trunc)
    }

    pub fn constant(ring: &R, c: R::Elem, trunc: i64) -> Self {
        Self::monomial(ring, c, 0, trunc)
    }

    pub fn one(ring: &R, trunc: i64) -> Self {
        Self::constant(ring, ring.one(), trunc)
    }

    /// The coordinate `t`.
    pub fn var(ring: &R, trunc: i64) -> Self {
        Self::monomial(ring, ring.one(), 1, trunc)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Lowest stored exponent, or the truncation order when nothing is stored.
    pub fn ord(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.trunc)
    }

    pub fn pole_order(&self) -> i64 {
        (-self.ord()).max(0)
    }

    pub fn is_power_series(&self) -> bool {
        self.ord() >= 0
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R::Elem)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of `t^e`, or `None` when `e` is at or past the truncation.
    pub fn get(&self, e: i64) -> Option<R::Elem> {
        if e >= self.trunc {
            None
        } else {
            Some(self.coeffs.get(&e).cloned().unwrap_or_else(|| self.ring.zero()))
        }
    }

    /// Coefficient of `t^e`; panics when `e` is not known.
    pub fn coeff(&self, e: i64) -> R::Elem {
        self.get(e).unwrap_or_else(|| panic!("coefficient of t^{e} requested from a series known mod t^{}", self.trunc))
    }

    /// Value at `t = 0` of a power series.
    pub fn constant_term(&self) -> Result<R::Elem> {
        if self.pole_order() > 0 {
            return Err(Error::ResidualPole(self.pole_order()));
        }
        self.get(0).ok_or(Error::InsufficientOrder { requested: 1, achievable: self.trunc })
    }

    /// Minimum certified precision over the stored coefficients.
    pub fn precision(&self) -> Precision {
        self.coeffs.values().fold(None, |acc, c| min_precision(acc, self.ring.precision(c)))
    }

    pub fn with_trunc(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        TruncSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.range(..trunc).map(|(e, c)| (*e, c.clone())).collect(),
            trunc,
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            trunc: self.trunc + k,
        }
    }

    pub fn map_coeffs<S: Ring, F>(&self, target: &S, f: F) -> Result<TruncSeries<S>>
    where
        F: Fn(&R::Elem) -> Result<S::Elem>,
    {
        let terms = self.coeffs.iter().map(|(e, c)| Ok((*e, f(c)?))).collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries::from_terms(target, terms, self.trunc))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch { left: self.ring.tag(), right: other.ring.tag() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.with_trunc(trunc);
        for (e, c) in other.coeffs.range(..trunc) {
            let sum = match out.coeffs.get(e) {
                Some(old) => self.ring.add(old, c),
                None => c.clone(),
            };
            if self.ring.is_zero(&sum) {
                out.coeffs.remove(e);
            } else {
                out.coeffs.insert(*e, sum);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, self.ring.neg(c))).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(&self.ring, self.coeffs.iter().map(|(e, a)| (*e, self.ring.mul(a, c))), self.trunc)
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        Self::from_terms(&self.ring, self.coeffs.iter().map(|(e, a)| (*e, self.ring.scale_i64(a, n))), self.trunc)
    }

    /// Add a scalar to the constant term.
    pub fn add_scalar(&self, c: &R::Elem) -> Self {
        let mut out = self.clone();
        if self.trunc <= 0 {
            return out;
        }
        let sum = match out.coeffs.get(&0) {
            Some(old) => self.ring.add(old, c),
            None => c.clone(),
        };
        if self.ring.is_zero(&sum) {
            out.coeffs.remove(&0);
        } else {
            out.coeffs.insert(0, sum);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let trunc = (self.trunc + other.ord()).min(other.trunc + self.ord());
        let lo = self.ord() + other.ord();
        if self.coeffs.is_empty() || other.coeffs.is_empty() || trunc <= lo {
            return Ok(Self::zero(&self.ring, trunc));
        }
        let mut acc = vec![self.ring.zero(); (trunc - lo) as usize];
        for (i, a) in &self.coeffs {
            for (j, b) in other.coeffs.range(..trunc - i) {
                let slot = &mut acc[(i + j - lo) as usize];
                *slot = self.ring.add(slot, &self.ring.mul(a, b));
            }
        }
        Ok(Self::from_terms(&self.ring, acc.into_iter().enumerate().map(|(k, c)| (k as i64 + lo, c)), trunc))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring, EXACT);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        if self.coeffs.is_empty() && acc.trunc == EXACT {
            acc.trunc = self.trunc;
        }
        Ok(acc)
    }

    /// Termwise derivative; the truncation drops by one.
    pub fn derive(&self) -> Self {
        Self::from_terms(
            &self.ring,
            self.coeffs.iter().filter(|(e, _)| **e != 0).map(|(e, c)| (e - 1, self.ring.scale_i64(c, *e))),
            self.trunc - 1,
        )
    }

    /// Termwise antiderivative with constant zero; the truncation rises by one.
    ///
    /// Every `k + 1` dividing a coefficient of `t^k` must be a unit of the ring;
    /// in p-adic mode `p | k + 1` is refused rather than silently losing digits.
    pub fn integrate(&self) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (e, c) in &self.coeffs {
            if *e == -1 {
                return Err(Error::Precondition("cannot integrate a t^-1 term".into()));
            }
            let d = self.ring.from_i64(e + 1);
            if !self.ring.is_unit(&d) {
                return Err(Error::NonInvertibleDenominator { denominator: e + 1, ring: self.ring.tag() });
            }
            terms.push((e + 1, self.ring.mul(c, &self.ring.inv(&d)?)));
        }
        Ok(Self::from_terms(&self.ring, terms, self.trunc + 1))
    }

    /// Inverse of a power series with unit constant term.
    pub fn invert_unit(&self) -> Result<Self> {
        if self.ord() < 0 {
            return Err(Error::NotInvertible("series with a pole; use invert".into()));
        }
        let d = self.trunc;
        let c0 = self.get(0).ok_or(Error::InsufficientOrder { requested: 1, achievable: d })?;
        if !self.ring.is_unit(&c0) {
            return Err(Error::NotInvertible(format!("constant term {}", self.ring.format(&c0))));
        }
        let c0inv = self.ring.inv(&c0)?;
        let f: Vec<(i64, R::Elem)> = self.coeffs.range(1..).map(|(e, c)| (*e, c.clone())).collect();
        let mut g: Vec<R::Elem> = Vec::with_capacity(d.max(0) as usize);
        for n in 0..d {
            if n == 0 {
                g.push(c0inv.clone());
                continue;
            }
            let mut s = self.ring.zero();
            for (i, fi) in f.iter().take_while(|(i, _)| *i <= n) {
                s = self.ring.add(&s, &self.ring.mul(fi, &g[(n - i) as usize]));
            }
            g.push(self.ring.neg(&self.ring.mul(&s, &c0inv)));
        }
        Ok(Self::from_terms(&self.ring, g.into_iter().enumerate().map(|(e, c)| (e as i64, c)), d))
    }

    /// Inverse of a Laurent series whose leading coefficient is a unit.
    pub fn invert(&self) -> Result<Self> {
        let o = self.ord();
        if self.coeffs.is_empty() {
            return Err(Error::NotInvertible("series with no known nonzero term".into()));
        }
        Ok(self.shift(-o).invert_unit()?.shift(-o))
    }

    /// `f(g(t))`.
    ///
    /// For a power series `f` this needs `ord(g) >= 1`. A Laurent `f` further
    /// needs `ord(g) = 1` with a unit leading coefficient, so that
    /// `g^-1 = t^-1 (g / t)^-1` expands as a geometric series.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_ring(g)?;
        let v = g.ord();
        if v < 1 {
            return Err(Error::Composition(format!("ord(g) >= 1, found {v}")));
        }
        let ring = &self.ring;

        // Regular part by Horner; the initial accumulator stands for the
        // unknown tail O(g^(Df - top)).
        let top = self.coeffs.range(0..).next_back().map(|(e, _)| *e);
        let mut acc = match top {
            Some(top) => Self::zero(ring, v.saturating_mul(self.trunc - 1 - top)),
            None => Self::zero(ring, v.saturating_mul(self.trunc)),
        };
        if let Some(top) = top {
            for i in (0..=top).rev() {
                acc = acc.mul(g)?;
                if let Some(c) = self.coeffs.get(&i) {
                    acc = acc.add_scalar(c);
                }
            }
        }

        if self.ord() >= 0 {
            return Ok(acc);
        }

        // Principal part.
        if v != 1 {
            return Err(Error::Composition(format!("ord(g) = 1 for a Laurent series, found {v}")));
        }
        let lead = g.coeff(1);
        if !ring.is_unit(&lead) {
            return Err(Error::Composition(format!("unit leading coefficient, found {}", ring.format(&lead))));
        }
        let ginv = g.shift(-1).invert_unit()?.shift(-1);
        let pole = self.pole_order();
        let mut neg = Self::constant(ring, self.coeff(-pole), EXACT);
        for i in (1..pole).rev() {
            neg = neg.mul(&ginv)?;
            if let Some(c) = self.coeffs.get(&-i) {
                neg = neg.add_scalar(c);
            }
        }
        neg = neg.mul(&ginv)?;
        acc.add(&neg)
    }

    /// Compositional inverse of a series `f = a t + O(t^2)` with `a` a unit,
    /// by Newton iteration `g <- g - (f(g) - t) / f'(g)`.
    pub fn reverse(&self) -> Result<Self> {
        if self.ord() != 1 {
            return Err(Error::Composition(format!("ord(f) = 1 for reversion, found {}", self.ord())));
        }
        let lead = self.coeff(1);
        if !self.ring.is_unit(&lead) {
            return Err(Error::NotInvertible(format!("leading coefficient {}", self.ring.format(&lead))));
        }
        let d = self.trunc;
        let t = Self::var(&self.ring, EXACT);
        let fprime = self.derive();
        let mut g = Self::monomial(&self.ring, self.ring.inv(&lead)?, 1, d);
        let mut correct = 2i64;
        while correct < d {
            let err = self.compose(&g)?.sub(&t)?;
            let step = err.mul(&fprime.compose(&g)?.invert_unit()?)?;
            g = g.sub(&step)?.with_trunc(d);
            correct *= 2;
        }
        // Newton's step can leave a truncation below d only if f itself was
        // inconsistent; the result is determined modulo t^d.
        g.trunc = d;
        Ok(g)
    }
}

impl TruncSeries<Rationals> {
    /// Reduce a rational series into another ring (for instance `Z/p^K`).
    pub fn reduce_into<S: Ring>(&self, target: &S) -> Result<TruncSeries<S>> {
        self.map_coeffs(target, |c| target.from_rational(c))
    }

    pub fn from_rationals(terms: &[(i64, BigRational)], trunc: i64) -> Self {
        Self::from_terms(&Rationals, terms.iter().cloned(), trunc)
    }
}

impl<R: Ring> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.coeffs {
            let c = self.ring.format(c);
            match e {
                0 => write!(f, "{c} + ")?,
                1 => write!(f, "({c})*t + ")?,
                _ => write!(f, "({c})*t^{e} + ")?,
            }
        }
        write!(f, "O(t^{})", self.trunc)
    }
}

#[cfg(test)]
mod tests;
