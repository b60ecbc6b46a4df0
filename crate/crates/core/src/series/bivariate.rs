use super::TruncSeries;
use crate::error::{Error, Result};
use crate::rings::Ring;
use std::collections::BTreeMap;

/// Power series in `t1, t2` known modulo total degree `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivarTruncSeries<R: Ring> {
    ring: R,
    coeffs: BTreeMap<(i64, i64), R::Elem>,
    trunc: i64,
    symmetric: bool,
}

impl<R: Ring> BivarTruncSeries<R> {
    pub fn zero(ring: &R, trunc: i64) -> Self {
        BivarTruncSeries { ring: ring.clone(), coeffs: BTreeMap::new(), trunc, symmetric: true }
    }

    pub fn from_terms<I>(ring: &R, terms: I, trunc: i64) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), R::Elem)>,
    {
        let mut coeffs: BTreeMap<(i64, i64), R::Elem> = BTreeMap::new();
        for ((i, j), c) in terms {
            assert!(i >= 0 && j >= 0, "bivariate series have no negative exponents");
            if i + j >= trunc {
                continue;
            }
            match coeffs.get_mut(&(i, j)) {
                Some(old) => *old = ring.add(old, &c),
                None => {
                    coeffs.insert((i, j), c);
                }
            }
        }
        coeffs.retain(|_, c| !ring.is_zero(c));
        let symmetric = coeffs.iter().all(|(&(i, j), c)| coeffs.get(&(j, i)) == Some(c));
        BivarTruncSeries { ring: ring.clone(), coeffs, trunc, symmetric }
    }

    /// `f(t1)`.
    pub fn from_first(f: &TruncSeries<R>) -> Result<Self> {
        if !f.is_power_series() {
            return Err(Error::Precondition("bivariate embedding of a Laurent series".into()));
        }
        Ok(Self::from_terms(f.ring(), f.terms().map(|(e, c)| ((e, 0), c.clone())), f.trunc()))
    }

    /// `f(t2)`.
    pub fn from_second(f: &TruncSeries<R>) -> Result<Self> {
        if !f.is_power_series() {
            return Err(Error::Precondition("bivariate embedding of a Laurent series".into()));
        }
        Ok(Self::from_terms(f.ring(), f.terms().map(|(e, c)| ((0, e), c.clone())), f.trunc()))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Total-degree truncation.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Lowest total degree with a stored coefficient, or the truncation.
    pub fn ord(&self) -> i64 {
        self.coeffs.keys().map(|(i, j)| i + j).min().unwrap_or(self.trunc)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &R::Elem)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, i: i64, j: i64) -> Option<R::Elem> {
        if i + j >= self.trunc {
            None
        } else {
            Some(self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| self.ring.zero()))
        }
    }

    pub fn with_trunc(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        Self::from_terms(&self.ring, self.coeffs.iter().map(|(k, c)| (*k, c.clone())), trunc)
    }

    /// `f(t2, t1)`.
    pub fn swap(&self) -> Self {
        Self::from_terms(&self.ring, self.coeffs.iter().map(|(&(i, j), c)| ((j, i), c.clone())), self.trunc)
    }

    fn check_ring(&self, other_ring: &R) -> Result<()> {
        if &self.ring != other_ring {
            return Err(Error::RingMismatch { left: self.ring.tag(), right: other_ring.tag() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(&other.ring)?;
        let trunc = self.trunc.min(other.trunc);
        Ok(Self::from_terms(
            &self.ring,
            self.coeffs.iter().chain(other.coeffs.iter()).map(|(k, c)| (*k, c.clone())),
            trunc,
        ))
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(&self.ring, self.coeffs.iter().map(|(k, c)| (*k, self.ring.neg(c))), self.trunc)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn add_scalar(&self, c: &R::Elem) -> Self {
        if self.trunc <= 0 {
            return self.clone();
        }
        Self::from_terms(
            &self.ring,
            self.coeffs.iter().map(|(k, a)| (*k, a.clone())).chain([((0, 0), c.clone())]),
            self.trunc,
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(&other.ring)?;
        let trunc = (self.trunc + other.ord()).min(other.trunc + self.ord());
        let mut acc: BTreeMap<(i64, i64), R::Elem> = BTreeMap::new();
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &other.coeffs {
                if i1 + j1 + i2 + j2 >= trunc {
                    continue;
                }
                let prod = self.ring.mul(a, b);
                let slot = acc.entry((i1 + i2, j1 + j2)).or_insert_with(|| self.ring.zero());
                *slot = self.ring.add(slot, &prod);
            }
        }
        Ok(Self::from_terms(&self.ring, acc, trunc))
    }

    /// Multiply by a univariate series in `t2`.
    pub fn mul_second(&self, f: &TruncSeries<R>) -> Result<Self> {
        self.mul(&Self::from_second(f)?)
    }

    /// `d/dt2`; the total truncation drops by one.
    pub fn derive_second(&self) -> Self {
        Self::from_terms(
            &self.ring,
            self.coeffs.iter().filter(|((_, j), _)| *j > 0).map(|(&(i, j), c)| ((i, j - 1), self.ring.scale_i64(c, j))),
            self.trunc - 1,
        )
    }

    /// `f(B(t1, t2))` for a univariate power series `f` and `ord(B) >= 1`.
    pub fn compose_into(f: &TruncSeries<R>, b: &Self) -> Result<Self> {
        b.check_ring(f.ring())?;
        if !f.is_power_series() {
            return Err(Error::Composition("a power series on the outside".into()));
        }
        let v = b.ord();
        if v < 1 {
            return Err(Error::Composition(format!("ord(B) >= 1, found {v}")));
        }
        let top = f.max_exponent();
        let mut acc = match top {
            Some(top) => Self::zero(&b.ring, v.saturating_mul(f.trunc() - 1 - top)),
            None => return Ok(Self::zero(&b.ring, v.saturating_mul(f.trunc()))),
        };
        for i in (0..=top.unwrap_or(0)).rev() {
            acc = acc.mul(b)?;
            if let Some(c) = f.get(i).filter(|c| !b.ring.is_zero(c)) {
                acc = acc.add_scalar(&c);
            }
        }
        Ok(acc)
    }
}
