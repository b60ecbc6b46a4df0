//! One-dimensional formal group laws: additive, multiplicative, elliptic
//! (from Weierstrass data) and the Tate curve over a q-ring.

mod tate;
mod weierstrass;

pub use tate::{tate_x_series, TateCurveCoefficients};
pub use weierstrass::{elliptic_formal_x, elliptic_group_law, WeierstrassData};

use crate::error::{Error, Result};
use crate::rings::{Rationals, Ring};
use crate::series::{BivarTruncSeries, TruncSeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    Weierstrass(WeierstrassData),
    Tate { q_order: i64 },
}

/// Laurent expansions of the curve coordinates in the formal parameter
/// `t = -2x/y` (Weierstrass) or `u = 1 + t` (Tate).
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticFormalCoordinates<R: Ring> {
    pub curve: Curve,
    pub x: TruncSeries<R>,
    pub y: TruncSeries<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupKind {
    Additive,
    Multiplicative,
    Elliptic(WeierstrassData),
    Tate { q_order: i64 },
}

#[derive(Debug)]
pub struct FormalGroupLaw<R: Ring> {
    ring: R,
    trunc: i64,
    kind: GroupKind,
    log: Option<TruncSeries<R>>,
    log_derivative: TruncSeries<R>,
    inv_derivation_factor: TruncSeries<R>,
    /// Denominators allowed in `F` and `[n]`; `None` skips the check.
    integral_over: Option<BigInt>,
    law: OnceLock<BivarTruncSeries<R>>,
    log_inverse: OnceLock<TruncSeries<R>>,
    mult_cache: RwLock<BTreeMap<i64, TruncSeries<R>>>,
}

impl<R: Ring> Clone for FormalGroupLaw<R> {
    fn clone(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            trunc: self.trunc,
            kind: self.kind.clone(),
            log: self.log.clone(),
            log_derivative: self.log_derivative.clone(),
            inv_derivation_factor: self.inv_derivation_factor.clone(),
            integral_over: self.integral_over.clone(),
            law: self.law.clone(),
            log_inverse: self.log_inverse.clone(),
            mult_cache: RwLock::new(self.mult_cache.read().expect("mult cache poisoned").clone()),
        }
    }
}

/// Checks that every denominator in `f` divides a power of `allowed`.
pub(crate) fn check_integral<R: Ring>(ring: &R, coeffs: impl IntoIterator<Item = R::Elem>, allowed: &BigInt, what: &str) -> Result<()> {
    for c in coeffs {
        let Some(mut d) = ring.denominator(&c) else { continue };
        loop {
            let g = d.gcd(allowed);
            if g.is_one() {
                break;
            }
            d /= g;
        }
        if !d.is_one() {
            return Err(Error::Integrality(format!("{what}: coefficient {} is not integral", ring.format(&c))));
        }
    }
    Ok(())
}

impl<R: Ring> FormalGroupLaw<R> {
    fn build(ring: &R, trunc: i64, kind: GroupKind, log_derivative: TruncSeries<R>, integral_over: Option<BigInt>) -> Result<Self> {
        let log_derivative = log_derivative.with_trunc(trunc - 1);
        let inv_derivation_factor = log_derivative.invert_unit()?;
        let log = log_derivative.integrate().ok();
        Ok(Self {
            ring: ring.clone(),
            trunc,
            kind,
            log,
            log_derivative,
            inv_derivation_factor,
            integral_over,
            law: OnceLock::new(),
            log_inverse: OnceLock::new(),
            mult_cache: RwLock::new(BTreeMap::new()),
        })
    }

    /// `F = t1 + t2`, `λ = t`.
    pub fn additive(ring: &R, trunc: i64) -> Result<Self> {
        Self::build(ring, trunc, GroupKind::Additive, TruncSeries::one(ring, trunc), None)
    }

    /// `F = t1 + t2 + t1 t2`, `λ = log(1 + t)`.
    pub fn multiplicative(ring: &R, trunc: i64) -> Result<Self> {
        let one_plus_t = TruncSeries::from_i64s(ring, &[1, 1], trunc);
        Self::build(ring, trunc, GroupKind::Multiplicative, one_plus_t.invert_unit()?, None)
    }

    /// The multiplicative law viewed as the formal group of the Tate curve.
    pub fn tate(ring: &R, trunc: i64, q_order: i64) -> Result<Self> {
        let mut fg = Self::multiplicative(ring, trunc)?;
        fg.kind = GroupKind::Tate { q_order };
        Ok(fg)
    }

    pub(crate) fn from_log_derivative(ring: &R, trunc: i64, kind: GroupKind, log_derivative: TruncSeries<R>, integral_over: Option<BigInt>) -> Result<Self> {
        Self::build(ring, trunc, kind, log_derivative, integral_over)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Series in `t` are known modulo `t^trunc`.
    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    fn is_multiplicative(&self) -> bool {
        matches!(self.kind, GroupKind::Multiplicative | GroupKind::Tate { .. })
    }

    /// Formal logarithm, when the ring admits the integration.
    pub fn log(&self) -> Result<&TruncSeries<R>> {
        self.log
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("the logarithm is not defined over {}", self.ring.tag())))
    }

    /// `λ'`, the expansion of the invariant differential.
    pub fn log_derivative(&self) -> &TruncSeries<R> {
        &self.log_derivative
    }

    /// `1 / λ'`, so that `∂ = (1/λ') d/dt`.
    pub fn inv_derivation_factor(&self) -> &TruncSeries<R> {
        &self.inv_derivation_factor
    }

    pub fn log_inverse(&self) -> Result<&TruncSeries<R>> {
        if let Some(g) = self.log_inverse.get() {
            return Ok(g);
        }
        let g = self.log()?.reverse()?;
        Ok(self.log_inverse.get_or_init(|| g))
    }

    fn check(&self, coeffs: impl IntoIterator<Item = R::Elem>, what: &str) -> Result<()> {
        match &self.integral_over {
            Some(allowed) => check_integral(&self.ring, coeffs, allowed, what),
            None => Ok(()),
        }
    }

    /// The bivariate law `F(t1, t2)` modulo total degree `trunc`.
    pub fn law(&self) -> Result<&BivarTruncSeries<R>> {
        if let Some(f) = self.law.get() {
            return Ok(f);
        }
        let r = &self.ring;
        let d = self.trunc;
        let f = match self.kind {
            GroupKind::Additive => {
                BivarTruncSeries::from_terms(r, [((1, 0), r.one()), ((0, 1), r.one())], d)
            }
            GroupKind::Multiplicative | GroupKind::Tate { .. } => {
                BivarTruncSeries::from_terms(r, [((1, 0), r.one()), ((0, 1), r.one()), ((1, 1), r.one())], d)
            }
            GroupKind::Elliptic(_) => {
                let log = self.log()?;
                let sum = BivarTruncSeries::from_first(log)?.add(&BivarTruncSeries::from_second(log)?)?;
                let f = BivarTruncSeries::compose_into(self.log_inverse()?, &sum)?;
                self.check(f.terms().map(|(_, c)| c.clone()), "group law")?;
                f
            }
        };
        Ok(self.law.get_or_init(|| f))
    }

    /// `[n](t)`, cached. Composite `n` is assembled from its factors.
    pub fn mult(&self, n: i64) -> Result<TruncSeries<R>> {
        if let Some(s) = self.mult_cache.read().expect("mult cache poisoned").get(&n) {
            return Ok(s.clone());
        }
        let s = self.compute_mult(n)?;
        self.mult_cache.write().expect("mult cache poisoned").entry(n).or_insert_with(|| s.clone());
        Ok(s)
    }

    fn compute_mult(&self, n: i64) -> Result<TruncSeries<R>> {
        let r = &self.ring;
        let d = self.trunc;
        if n == 0 {
            return Ok(TruncSeries::zero(r, d));
        }
        if n == 1 {
            return Ok(TruncSeries::var(r, d));
        }
        match self.kind {
            GroupKind::Additive => return Ok(TruncSeries::monomial(r, r.from_i64(n), 1, d)),
            GroupKind::Multiplicative | GroupKind::Tate { .. } => {
                let base = TruncSeries::from_i64s(r, &[1, 1], d);
                let pow = base.pow(n.unsigned_abs() as u32)?;
                let pow = if n < 0 { pow.invert_unit()? } else { pow };
                return Ok(pow.add_scalar(&r.from_i64(-1)));
            }
            GroupKind::Elliptic(_) => {}
        }
        let a = smallest_factor(n.unsigned_abs());
        let s = if a < n.unsigned_abs() {
            self.mult(a as i64)?.compose(&self.mult(n / a as i64)?)?
        } else {
            self.log_inverse()?.compose(&self.log()?.scale_i64(n))?
        };
        self.check(s.terms().map(|(_, c)| c.clone()), &format!("[{n}]"))?;
        Ok(s.with_trunc(d))
    }

    /// Formal inverse `ι(t)`.
    pub fn inverse(&self) -> Result<TruncSeries<R>> {
        match self.kind {
            GroupKind::Elliptic(_) | GroupKind::Additive => Ok(TruncSeries::var(&self.ring, self.trunc).neg()),
            _ => self.mult(-1),
        }
    }

    /// `∂^j f` with `∂ = (1/λ') d/dt`; the truncation drops by one per step.
    pub fn invariant_derive(&self, f: &TruncSeries<R>, j: u32) -> Result<TruncSeries<R>> {
        let mut g = f.clone();
        for i in 0..j {
            if g.trunc() <= 1 {
                return Err(Error::InsufficientOrder { requested: j as i64, achievable: i as i64 });
            }
            g = if self.is_multiplicative() {
                // (1 + t) d/dt, exact in the factor.
                let dg = g.derive();
                dg.add(&dg.shift(1).with_trunc(dg.trunc()))?
            } else {
                g.derive().mul(&self.inv_derivation_factor)?
            };
        }
        Ok(g)
    }

    /// `∂^j f` evaluated at the identity `t = 0`.
    pub fn moment_at_origin(&self, f: &TruncSeries<R>, j: u32) -> Result<R::Elem> {
        self.invariant_derive(f, j)?.constant_term()
    }
}

impl FormalGroupLaw<Rationals> {
    /// The same law over another ring, through the integral `λ'`; `[n]` and
    /// `F` are then only available where that ring admits `λ`.
    pub fn reduce_into<S: Ring>(&self, ring: &S) -> Result<FormalGroupLaw<S>> {
        FormalGroupLaw::build(ring, self.trunc, self.kind.clone(), self.log_derivative.reduce_into(ring)?, None)
    }
}

fn smallest_factor(n: u64) -> u64 {
    (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n)
}

/// `[n]` via the logarithm, without the factorization shortcut.
pub fn mult_via_log<R: Ring>(fg: &FormalGroupLaw<R>, n: i64) -> Result<TruncSeries<R>> {
    fg.log_inverse()?.compose(&fg.log()?.scale_i64(n))
}

pub fn multiplicative_group<R: Ring>(ring: &R, trunc: i64) -> Result<FormalGroupLaw<R>> {
    FormalGroupLaw::multiplicative(ring, trunc)
}

pub fn additive_group<R: Ring>(ring: &R, trunc: i64) -> Result<FormalGroupLaw<R>> {
    FormalGroupLaw::additive(ring, trunc)
}
