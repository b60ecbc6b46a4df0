use super::TruncSeries;
use crate::error::{Error, Result};
use crate::rings::{Precision, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Power series in `q` modulo `q^M` over a base ring, used as a coefficient
/// ring in its own right (`Z/p^K[[q]]/q^M` for the Tate curve).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRing<R: Ring> {
    base: R,
    order: i64,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, order: i64) -> Self {
        assert!(order >= 1, "q-order must be at least 1");
        SeriesRing { base, order }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// `q` itself.
    pub fn q(&self) -> TruncSeries<R> {
        TruncSeries::var(&self.base, self.order)
    }

    pub fn embed(&self, c: R::Elem) -> TruncSeries<R> {
        TruncSeries::constant(&self.base, c, self.order)
    }

    /// Element from its coefficients in `q`.
    pub fn from_coeffs<I: IntoIterator<Item = (i64, R::Elem)>>(&self, terms: I) -> TruncSeries<R> {
        TruncSeries::from_terms(&self.base, terms, self.order)
    }

    fn normalize(&self, s: TruncSeries<R>) -> TruncSeries<R> {
        s.with_trunc(self.order)
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = TruncSeries<R>;

    fn tag(&self) -> String {
        format!("qring({},{})", self.base.tag(), self.order)
    }
    fn zero(&self) -> TruncSeries<R> {
        TruncSeries::zero(&self.base, self.order)
    }
    fn from_i64(&self, n: i64) -> TruncSeries<R> {
        self.embed(self.base.from_i64(n))
    }
    fn from_bigint(&self, n: &BigInt) -> TruncSeries<R> {
        self.embed(self.base.from_bigint(n))
    }
    fn from_rational(&self, q: &BigRational) -> Result<TruncSeries<R>> {
        Ok(self.embed(self.base.from_rational(q)?))
    }
    fn add(&self, a: &TruncSeries<R>, b: &TruncSeries<R>) -> TruncSeries<R> {
        a.add(b).expect("q-ring elements share a base ring")
    }
    fn neg(&self, a: &TruncSeries<R>) -> TruncSeries<R> {
        a.neg()
    }
    fn mul(&self, a: &TruncSeries<R>, b: &TruncSeries<R>) -> TruncSeries<R> {
        self.normalize(a.mul(b).expect("q-ring elements share a base ring"))
    }
    fn is_zero(&self, a: &TruncSeries<R>) -> bool {
        a.is_known_zero() && a.trunc() >= self.order
    }
    fn vanishes(&self, a: &TruncSeries<R>) -> bool {
        a.terms().all(|(_, c)| self.base.vanishes(c))
    }
    fn is_unit(&self, a: &TruncSeries<R>) -> bool {
        a.get(0).map(|c| self.base.is_unit(&c)).unwrap_or(false)
    }
    fn inv(&self, a: &TruncSeries<R>) -> Result<TruncSeries<R>> {
        Ok(self.normalize(a.invert_unit()?))
    }
    fn precision(&self, a: &TruncSeries<R>) -> Precision {
        a.precision()
    }
    fn denominator(&self, a: &TruncSeries<R>) -> Option<BigInt> {
        let mut acc = BigInt::from(1);
        for (_, c) in a.terms() {
            acc = num_integer::Integer::lcm(&acc, &self.base.denominator(c)?);
        }
        Some(acc)
    }
    fn format(&self, a: &TruncSeries<R>) -> String {
        let mut out = String::new();
        for (e, c) in a.terms() {
            let c = self.base.format(c);
            match e {
                0 => out.push_str(&format!("{c} + ")),
                1 => out.push_str(&format!("({c})*q + ")),
                _ => out.push_str(&format!("({c})*q^{e} + ")),
            }
        }
        out.push_str(&format!("O(q^{})", a.trunc()));
        out
    }
    fn parse(&self, s: &str) -> Result<TruncSeries<R>> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("q-ring element: {e}")))?;
        self.from_json(&v)
    }
    fn to_json(&self, a: &TruncSeries<R>) -> serde_json::Value {
        super::json::coeffs_json(a)
    }
    fn from_json(&self, v: &serde_json::Value) -> Result<TruncSeries<R>> {
        let s = super::json::series_from_parts(&self.base, v)?;
        Ok(self.normalize(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{PAdicRing, Rationals};

    #[test]
    fn geometric_inverse() {
        let r = SeriesRing::new(Rationals, 6);
        let one_minus_q = r.sub(&r.one(), &r.q());
        let inv = r.inv(&one_minus_q).unwrap();
        assert_eq!(inv, TruncSeries::from_i64s(&Rationals, &[1, 1, 1, 1, 1, 1], 6));
        assert!(!r.is_unit(&r.q()));
    }

    #[test]
    fn padic_base_and_json() {
        let base = PAdicRing::new(5, 3).unwrap();
        let r = SeriesRing::new(base, 4);
        let x = r.from_coeffs([(0, base.from_i64(-1)), (2, base.from_i64(7))]);
        let text = serde_json::to_string(&r.to_json(&x)).unwrap();
        assert_eq!(r.parse(&text).unwrap(), x);
        assert_eq!(r.format(&x), "124 + (7)*q^2 + O(q^4)");
        assert_eq!(r.tag(), "qring(padic(5,3),4)");
    }
}
