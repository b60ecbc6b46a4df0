use super::*;
use crate::rings::{binomial_int, factorial, PAdicRing, Rationals};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rat(terms: &[(i64, BigRational)], trunc: i64) -> TruncSeries<Rationals> {
    TruncSeries::from_rationals(terms, trunc)
}

#[test]
fn arithmetic_examples() {
    let r = Rationals;
    let t = TruncSeries::var(&r, 10);
    let t2 = t.mul(&t).unwrap();
    assert_eq!(t2, TruncSeries::monomial(&r, r.one(), 2, 11));

    let laurent = TruncSeries::monomial(&r, r.one(), -2, 10).mul(&TruncSeries::monomial(&r, r.one(), 3, 10)).unwrap();
    assert_eq!(laurent.terms().map(|(e, _)| e).collect::<Vec<_>>(), vec![1]);
    assert_eq!(laurent.trunc(), 8);

    let sum = TruncSeries::from_i64s(&r, &[1, 1], 5).add(&TruncSeries::constant(&r, r.from_i64(-1), 5)).unwrap();
    assert_eq!(sum, TruncSeries::var(&r, 5));
}

#[test]
fn truncation_rules() {
    let r = Rationals;
    let f = TruncSeries::from_i64s(&r, &[0, 0, 1], 7); // t^2 + O(t^7)
    let g = TruncSeries::from_i64s(&r, &[1, 1], 4); // 1 + t + O(t^4)
    assert_eq!(f.add(&g).unwrap().trunc(), 4);
    assert_eq!(f.mul(&g).unwrap().trunc(), 6); // min(7 + 0, 4 + 2)
    assert_eq!(f.derive().trunc(), 6);
    assert_eq!(f.integrate().unwrap().trunc(), 8);
    let z = TruncSeries::zero(&r, 3);
    assert_eq!(z.ord(), 3);
    assert_eq!(z.mul(&f).unwrap().trunc(), 5);
}

#[test]
fn ring_mismatch_is_reported() {
    let a = TruncSeries::var(&PAdicRing::new(5, 3).unwrap(), 4);
    let b = TruncSeries::var(&PAdicRing::new(7, 3).unwrap(), 4);
    assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
}

#[test]
fn composition_examples() {
    let r = Rationals;
    let f = TruncSeries::from_i64s(&r, &[0, 1, 1], 3);
    let g = TruncSeries::from_i64s(&r, &[0, 2], 10);
    assert_eq!(f.compose(&g).unwrap(), TruncSeries::from_i64s(&r, &[0, 2, 4], 3));

    // t^-1 composed with t + t^2 (known mod t^3) is t^-1 - 1 + O(t).
    let inv = TruncSeries::monomial(&r, r.one(), -1, 5);
    let g = TruncSeries::from_i64s(&r, &[0, 1, 1], 3);
    let h = inv.compose(&g).unwrap();
    assert_eq!(h, rat(&[(-1, q(1, 1)), (0, q(-1, 1))], 1));

    let f = TruncSeries::from_i64s(&r, &[3, 1, 4, 1, 5], 6);
    assert_eq!(f.compose(&TruncSeries::var(&r, 20)).unwrap(), f);

    assert!(matches!(f.compose(&TruncSeries::from_i64s(&r, &[1, 1], 5)), Err(Error::Composition(_))));
    let pole = TruncSeries::monomial(&r, r.one(), -2, 5);
    assert!(matches!(pole.compose(&TruncSeries::from_i64s(&r, &[0, 0, 1], 5)), Err(Error::Composition(_))));
    let p = PAdicRing::new(5, 3).unwrap();
    let pole = TruncSeries::monomial(&p, p.one(), -1, 5);
    assert!(pole.compose(&TruncSeries::from_i64s(&p, &[0, 5, 1], 5)).is_err());
}

#[test]
fn reversion_examples() {
    let r = Rationals;
    assert_eq!(TruncSeries::var(&r, 9).reverse().unwrap(), TruncSeries::var(&r, 9));

    // reverse(t + t^2) has coefficients (-1)^(n-1) Catalan(n-1).
    let g = TruncSeries::from_i64s(&r, &[0, 1, 1], 12).reverse().unwrap();
    for n in 1..12i64 {
        let m = (n - 1) as u64;
        let catalan = binomial_int(&BigInt::from(2 * m), m) / (m + 1);
        let sign = if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(g.coeff(n), BigRational::from_integer(catalan * sign));
    }
    assert_eq!(g.trunc(), 12);

    // reverse(log(1 + t)) = exp(t) - 1
    let d = 14;
    let log = rat(&(1..d).map(|n| (n, q(if n % 2 == 1 { 1 } else { -1 }, n))).collect::<Vec<_>>(), d);
    let expm1 = log.reverse().unwrap();
    for n in 1..d {
        assert_eq!(expm1.coeff(n), BigRational::new(1.into(), factorial(n as u64)));
    }
    assert!(TruncSeries::from_i64s(&r, &[0, 0, 1], 5).reverse().is_err());
}

#[test]
fn calculus_examples() {
    let r = Rationals;
    assert_eq!(TruncSeries::monomial(&r, r.one(), 3, 8).derive(), TruncSeries::monomial(&r, r.from_i64(3), 2, 7));
    assert!(TruncSeries::constant(&r, r.from_i64(5), 8).derive().is_known_zero());

    let d = 10;
    let geom = TruncSeries::one(&r, d).add(&TruncSeries::var(&r, d)).unwrap().invert_unit().unwrap();
    let log = geom.integrate().unwrap();
    for n in 1..=d {
        assert_eq!(log.coeff(n), q(if n % 2 == 1 { 1 } else { -1 }, n));
    }

    let p = PAdicRing::new(3, 4).unwrap();
    let f = TruncSeries::monomial(&p, p.one(), 2, 6);
    assert!(matches!(f.integrate(), Err(Error::NonInvertibleDenominator { denominator: 3, .. })));
}

#[test]
fn inversion_examples() {
    let r = Rationals;
    let d = 9;
    let inv = TruncSeries::from_i64s(&r, &[1, 1], d).invert_unit().unwrap();
    assert_eq!(inv, TruncSeries::from_i64s(&r, &[1, -1, 1, -1, 1, -1, 1, -1, 1], d));
    assert_eq!(TruncSeries::one(&r, d).invert_unit().unwrap(), TruncSeries::one(&r, d));

    // Long division of 1 by 2 + t: the remainder after n steps is (-t/2)^n.
    let inv = TruncSeries::from_i64s(&r, &[2, 1], d).invert_unit().unwrap();
    let mut remainder = q(1, 1);
    for n in 0..d {
        let quotient = &remainder / BigInt::from(2);
        assert_eq!(inv.coeff(n), quotient);
        remainder = -quotient;
    }
    let p = PAdicRing::new(5, 3).unwrap();
    assert!(TruncSeries::from_i64s(&p, &[5, 1], 4).invert_unit().is_err());
}

#[test]
fn laurent_inverse_truncation() {
    // x = t^-2 (1 + t^4) + O(t^6) inverts to t^2 (1 - t^4 + ...) + O(t^10)
    let x = rat(&[(-2, q(1, 1)), (2, q(1, 1))], 6);
    let inv = x.invert().unwrap();
    assert_eq!(inv.trunc(), 10);
    assert_eq!(inv, rat(&[(2, q(1, 1)), (6, q(-1, 1))], 10));
}

#[test]
fn json_round_trip() {
    let r = Rationals;
    let f = rat(&[(-1, q(3, 2)), (4, q(-7, 1))], 6);
    let v = f.to_json();
    assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"coeffs":[[-1,"3/2"],[4,"-7"]],"ring":"rational","trunc":6}"#);
    assert_eq!(TruncSeries::from_json(&r, &v).unwrap(), f);
    let p = PAdicRing::new(5, 2).unwrap();
    assert!(matches!(TruncSeries::from_json(&p, &v), Err(Error::RingMismatch { .. })));
}

// Equality on the coefficients both sides actually know.
fn agree<R: Ring>(a: &TruncSeries<R>, b: &TruncSeries<R>) -> bool
where
    R::Elem: PartialEq,
{
    let d = a.trunc().min(b.trunc());
    a.clone().with_trunc(d) == b.clone().with_trunc(d)
}

fn unit_leading(coeffs: Vec<i64>, lead: i64, d: i64) -> TruncSeries<Rationals> {
    let r = Rationals;
    let mut terms = vec![(1i64, r.from_i64(lead))];
    terms.extend(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64 + 2, r.from_i64(c))));
    TruncSeries::from_terms(&r, terms, d)
}

fn arb_series(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 0..max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reversion_is_two_sided(cs in arb_series(14), lead in prop::sample::select(vec![-3i64, -1, 1, 2, 5]), d in 2i64..=16) {
        let f = unit_leading(cs, lead, d);
        let g = f.reverse().unwrap();
        let t = TruncSeries::var(&Rationals, d);
        prop_assert_eq!(g.compose(&f).unwrap().with_trunc(d), t.clone());
        prop_assert_eq!(f.compose(&g).unwrap().with_trunc(d), t);
    }

    #[test]
    fn composition_is_associative(a in arb_series(8), b in arb_series(6), c in arb_series(6)) {
        let r = Rationals;
        let d = 9;
        let f = TruncSeries::from_i64s(&r, &a, d);
        let g = unit_leading(b, 1, d);
        let h = unit_leading(c, 2, d);
        let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs.trunc(), rhs.trunc());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derive_undoes_integrate(a in arb_series(12)) {
        let r = Rationals;
        let f = TruncSeries::from_i64s(&r, &a, 12).add(&TruncSeries::constant(&r, r.from_i64(a.first().copied().unwrap_or(0)), 12)).unwrap();
        let f = f.shift(1).with_trunc(12).shift(-1);
        prop_assert_eq!(f.integrate().unwrap().derive(), f);
    }

    #[test]
    fn product_is_commutative_and_distributive(a in arb_series(10), b in arb_series(10), c in arb_series(10), k in 1u32..5) {
        let r = Rationals;
        let (f, g, h) = (TruncSeries::from_i64s(&r, &a, 10), TruncSeries::from_i64s(&r, &b, 9), TruncSeries::from_i64s(&r, &c, 8));
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert!(agree(&f.mul(&g.add(&h).unwrap()).unwrap(), &f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()));

        let p = PAdicRing::new(5, k).unwrap();
        let (f, g, h) = (f.reduce_into(&p).unwrap(), g.reduce_into(&p).unwrap(), h.reduce_into(&p).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert!(agree(&f.mul(&g.add(&h).unwrap()).unwrap(), &f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()));
    }

    #[test]
    fn json_round_trips(a in arb_series(10), d in 0i64..12) {
        let p = PAdicRing::new(7, 3).unwrap();
        let f = TruncSeries::from_i64s(&p, &a, d).shift(-2);
        prop_assert_eq!(TruncSeries::from_json(&p, &f.to_json()).unwrap(), f);
    }
}
