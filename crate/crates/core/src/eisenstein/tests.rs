use super::*;
use crate::rings::{PAdicRing, Ring};
use num_traits::Zero;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn lattice_sums_of_the_lemniscate() {
    let l = wp_recursion(&q(4, 1), &q(0, 1), 12);
    assert_eq!(l.a(4), q(1, 15));
    assert_eq!(l.a(6), q(0, 1));
    assert_eq!(l.a(8), q(1, 525));
    assert!(l.c.iter().skip(3).step_by(2).all(|c| c.is_zero()));
}

#[test]
fn depleted_additive_curve_vanishes() {
    let fg = FormalGroupLaw::additive(&Rationals, 12).unwrap();
    let x = TruncSeries::monomial(&Rationals, q(1, 1), -2, 12);
    let coords = EllipticFormalCoordinates { curve: Curve::Weierstrass(WeierstrassData::from_i64(0, 0)), y: x.clone(), x };
    let xn = x_depleted(&coords, &fg, 3).unwrap();
    assert!(xn.is_known_zero());
}

#[test]
fn depleted_lemniscate_is_even_with_zero_constant() {
    let (xn, _) = depleted_formal(&WeierstrassData::lemniscate(), 2, 13).unwrap();
    assert!(xn.trunc() >= 12);
    assert!(xn.get(0).unwrap().is_zero());
    let xm = xn.compose(&TruncSeries::var(&Rationals, 40).neg()).unwrap();
    assert_eq!(xm.with_trunc(12), xn.with_trunc(12));
}

#[test]
fn formal_spot_values() {
    let t = eis_moments_formal(&WeierstrassData::lemniscate(), 2, 8).unwrap();
    assert_eq!(t.get(4), Some(&q(-6, 1)));
    assert_eq!(t.get(5), Some(&q(0, 1)));
    assert_eq!(t.get(8), Some(&q(-2448, 1)));
    t.check_vanishing().unwrap();
}

#[test]
fn rational_spot_values() {
    let w = WeierstrassData::lemniscate();
    assert_eq!(eis_moments_rational(&w, 2, 4).get(4), Some(&q(-6, 1)));
    assert_eq!(eis_moments_rational(&w, 3, 4).get(4), Some(&q(-32, 1)));
    assert!(eis_moments_rational(&WeierstrassData::from_i64(8, 3), 1, 10).entries.iter().all(|e| e.value.is_zero()));
}

#[test]
fn q_expansion_of_weight_four() {
    let e = eisenstein_q_expansion(4, 4);
    assert_eq!(e.coeff(0), q(1, 120));
    assert_eq!(e.coeff(1), q(2, 1));
    assert_eq!(e.coeff(2), q(18, 1));
    assert_eq!(e.coeff(3), q(56, 1));
}

#[test]
fn tate_weight_four_q_terms() {
    let t = tate_katz_moments(2, 2, 3, 5, 6).unwrap();
    let ring = PAdicRing::new(5, 6).unwrap();
    let m = t.get(4).unwrap();
    assert_eq!(m.coeff(0), ring.from_rational(&q(-1, 8)).unwrap());
    assert_eq!(m.coeff(1), ring.from_i64(-30));
    assert!(t.ring.vanishes(t.get(2).unwrap()));
}

#[test]
fn nodal_moments_match_zeta() {
    let t = nodal_moments(2, 8).unwrap();
    for k in 2..=8u32 {
        let expected = if k % 2 == 0 && k > 2 {
            let nk = BigRational::from_integer(BigInt::from(2).pow(k));
            (BigRational::one() - nk) * -bernoulli(k as usize) / BigRational::from_integer(k.into())
        } else {
            BigRational::zero()
        };
        assert_eq!(t.get(k), Some(&expected), "k = {k}");
    }
}

#[test]
fn zeta_value_at_six() {
    let z = padic_zeta_value(5, 2, 6, 6).unwrap();
    let ring = PAdicRing::new(5, 6).unwrap();
    assert_eq!(zeta_expected(5, 2, 6), q(-781, 1));
    assert!(z.precision.unwrap() >= 5);
    assert!(z.value.congruent(&ring.from_i64(-781), z.precision.unwrap()));
}

#[test]
fn zeta_trivial_cases() {
    assert!(!padic_zeta_value(5, 1, 6, 4).unwrap().value.is_unit());
    assert_eq!(padic_zeta_value(7, 2, 5, 4).unwrap().value.value(), 0);
}

#[test]
fn zeta_degree_too_small_reports_need() {
    let err = padic_zeta_value_with_degree(5, 2, 6, 6, Some(50)).unwrap_err();
    assert_eq!(err, Error::InsufficientDegree { have: 50, need: 125, precision: 6 });
}

#[test]
fn preconditions_on_p_and_n() {
    assert!(matches!(padic_zeta_value(3, 2, 6, 4), Err(Error::Precondition(_))));
    assert!(matches!(padic_zeta_value(5, 10, 6, 4), Err(Error::Precondition(_))));
    assert!(matches!(supersingular_integrality_check(5, 2, 8, 4), Err(Error::Precondition(_))));
}
