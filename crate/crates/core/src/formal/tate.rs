use super::{Curve, EllipticFormalCoordinates};
use crate::error::Result;
use crate::rings::{binomial_int, divisor_sigma, Ring};
use crate::series::{SeriesRing, TruncSeries};
use num_bigint::BigInt;

/// `x = Σ_m q^m u/(1 - q^m u)^2 - 2 Σ_{m>=1} q^m/(1 - q^m)^2` with `u = 1 + t`,
/// together with `y = ((1+t) x' - x)/2`, as Laurent series in `t` over
/// `base[[q]]/q^M`. The pair satisfies `y^2 + xy = x^3 + a4 x + a6`.
pub fn tate_x_series<R: Ring>(base: &R, q_order: i64, trunc: i64) -> Result<EllipticFormalCoordinates<SeriesRing<R>>> {
    let qr = SeriesRing::new(base.clone(), q_order);
    // Σ_{N>=1} q^N Σ_{r|N} r [u^r + u^-r - 2], coefficient of t^i for i >= 1.
    let mut terms = vec![(-2, qr.one()), (-1, qr.one())];
    for i in 1..trunc {
        let mut q_terms = Vec::new();
        for n in 1..q_order {
            let mut c = BigInt::from(0);
            for r in (1..=n).filter(|r| n % r == 0) {
                let plus = binomial_int(&BigInt::from(r), i as u64);
                let minus = binomial_int(&BigInt::from(-r), i as u64);
                c += BigInt::from(r) * (plus + minus);
            }
            q_terms.push((n, base.from_bigint(&c)));
        }
        terms.push((i, qr.from_coeffs(q_terms)));
    }
    let x = TruncSeries::from_terms(&qr, terms, trunc);
    let dx = x.derive();
    let u_dx = dx.add(&dx.shift(1).with_trunc(dx.trunc()))?;
    let half = qr.inv(&qr.from_i64(2))?;
    let y = u_dx.sub(&x)?.scale(&half);
    Ok(EllipticFormalCoordinates { curve: Curve::Tate { q_order }, x, y })
}

/// `a4 = -5 s3` and `a6 = -(5 s3 + 7 s5)/12` with `s_k = Σ σ_k(m) q^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct TateCurveCoefficients<R: Ring> {
    pub a4: TruncSeries<R>,
    pub a6: TruncSeries<R>,
}

impl<R: Ring> TateCurveCoefficients<R> {
    pub fn new(base: &R, q_order: i64) -> Self {
        let qr = SeriesRing::new(base.clone(), q_order);
        let (mut a4, mut a6) = (Vec::new(), Vec::new());
        for m in 1..q_order as u64 {
            let s3 = divisor_sigma(3, m);
            let s5 = divisor_sigma(5, m);
            a4.push((m as i64, base.from_bigint(&(BigInt::from(-5) * &s3))));
            // 5 σ3 + 7 σ5 ≡ 0 mod 12 termwise.
            a6.push((m as i64, base.from_bigint(&(-(BigInt::from(5) * s3 + BigInt::from(7) * s5) / 12))));
        }
        Self { a4: qr.from_coeffs(a4), a6: qr.from_coeffs(a6) }
    }

    /// `y^2 + xy - x^3 - a4 x - a6` for coordinates over the q-ring.
    pub fn residual(&self, coords: &EllipticFormalCoordinates<SeriesRing<R>>) -> Result<TruncSeries<SeriesRing<R>>> {
        let (x, y) = (&coords.x, &coords.y);
        let lhs = y.mul(y)?.add(&x.mul(y)?)?;
        let rhs = x.mul(x)?.mul(x)?.add(&x.scale(&self.a4))?.add_scalar(&self.a6);
        lhs.sub(&rhs)
    }
}
