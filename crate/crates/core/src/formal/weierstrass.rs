use super::{check_integral, Curve, EllipticFormalCoordinates, FormalGroupLaw, GroupKind};
use crate::error::{Error, Result};
use crate::rings::{Rationals, Ring};
use crate::series::TruncSeries;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// The curve `y^2 = 4x^3 - g2 x - g3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassData {
    pub g2: BigRational,
    pub g3: BigRational,
}

impl WeierstrassData {
    pub fn new(g2: BigRational, g3: BigRational) -> Self {
        Self { g2, g3 }
    }

    pub fn from_i64(g2: i64, g3: i64) -> Self {
        Self::new(BigRational::from_integer(g2.into()), BigRational::from_integer(g3.into()))
    }

    /// `y^2 = 4x^3 - 4x`, with complex multiplication by `Z[i]`.
    pub fn lemniscate() -> Self {
        Self::from_i64(4, 0)
    }

    pub fn discriminant(&self) -> BigRational {
        let g2 = &self.g2;
        let g3 = &self.g3;
        g2 * g2 * g2 - BigRational::from_integer(27.into()) * g3 * g3
    }

    /// The coordinates are polynomial in `g2/4` and `g3/4` over `Z`; this is
    /// the only denominator they may carry.
    pub fn integrality_denominator(&self) -> BigInt {
        let four = BigRational::from_integer(4.into());
        (&self.g2 / &four).denom().lcm((&self.g3 / &four).denom())
    }
}

/// Solves the Weierstrass relation for `x(t) = t^-2 (1 + u(t))` with
/// `y = -2x/t`; `x` is returned modulo `t^trunc`.
///
/// With `w = t^2 x` the relation reads `w^2 (w - 1) = (g2/4) t^4 w + (g3/4) t^6`,
/// and `u = w - 1` is the fixed point of
/// `u = ((g2/4) t^4 (1 + u) + (g3/4) t^6) / (1 + u)^2`, each pass fixing four
/// more coefficients.
pub fn elliptic_formal_x(w: &WeierstrassData, trunc: i64) -> Result<EllipticFormalCoordinates<Rationals>> {
    if trunc < 6 {
        return Err(Error::Precondition(format!("elliptic_formal_x needs D >= 6, got {trunc}")));
    }
    let r = Rationals;
    let n = trunc + 2;
    let four = BigRational::from_integer(4.into());
    let a = TruncSeries::monomial(&r, &w.g2 / &four, 4, n);
    let b = TruncSeries::monomial(&r, &w.g3 / &four, 6, n);
    let mut u = TruncSeries::zero(&r, n);
    for _ in 0..=(n / 4 + 1) {
        let one_u = u.add_scalar(&r.one());
        let next = a.mul(&one_u)?.add(&b)?.mul(&one_u.mul(&one_u)?.invert_unit()?)?.with_trunc(n);
        if next == u {
            break;
        }
        u = next;
    }
    let x = u.add_scalar(&r.one()).shift(-2).with_trunc(trunc);
    let y = x.shift(-1).scale_i64(-2);

    check_integral(&r, x.terms().map(|(_, c)| c.clone()), &w.integrality_denominator(), "x(t)")?;
    let residual = weierstrass_residual(w, &x, &y)?;
    if let Some((e, c)) = residual.terms().next() {
        return Err(Error::Inconsistent(format!("Weierstrass residual has t^{e} coefficient {c}")));
    }
    Ok(EllipticFormalCoordinates { curve: Curve::Weierstrass(w.clone()), x, y })
}

/// `y^2 - 4x^3 + g2 x + g3`, as far as the inputs determine it.
pub fn weierstrass_residual(
    w: &WeierstrassData,
    x: &TruncSeries<Rationals>,
    y: &TruncSeries<Rationals>,
) -> Result<TruncSeries<Rationals>> {
    let x3 = x.mul(x)?.mul(x)?;
    Ok(y.mul(y)?.sub(&x3.scale_i64(4))?.add(&x.scale(&w.g2))?.add_scalar(&w.g3))
}

/// The formal group of the curve: `λ' = x'/y` (so `λ'(0) = 1`), `λ = ∫ λ'`
/// and `F = λ^-1(λ(t1) + λ(t2))`, all exact; integrality of `F` and of every
/// `[n]` is asserted when they are built.
pub fn elliptic_group_law(coords: &EllipticFormalCoordinates<Rationals>, trunc: i64) -> Result<FormalGroupLaw<Rationals>> {
    let Curve::Weierstrass(w) = &coords.curve else {
        return Err(Error::Precondition("elliptic_group_law needs Weierstrass coordinates".into()));
    };
    if coords.x.trunc() < trunc {
        return Err(Error::InsufficientOrder { requested: trunc, achievable: coords.x.trunc() });
    }
    if w.discriminant().is_zero() {
        return Err(Error::Precondition("singular curve: discriminant 0".into()));
    }
    let dlog = coords.x.derive().mul(&coords.y.invert()?)?;
    FormalGroupLaw::from_log_derivative(
        &Rationals,
        trunc,
        GroupKind::Elliptic(w.clone()),
        dlog,
        Some(w.integrality_denominator()),
    )
}
