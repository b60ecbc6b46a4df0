use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use padic_eisenstein::eisenstein::*;
use padic_eisenstein::formal::WeierstrassData;
use padic_eisenstein::rings::{bernoulli, PAdicRing, Rationals, Ring};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `(1 - n^k)(k-1)! A_k` straight from the Weierstrass ODE, with `A_k`
/// read off a Laurent series of ℘ obtained by repeated squaring rather than
/// the convolution recursion.
fn moment_by_ode(g2: &BigRational, g3: &BigRational, n: i64, k: u32) -> BigRational {
    if k % 2 == 1 || k < 4 {
        return BigRational::zero();
    }
    // ℘'' = 6℘² - g2/2 on Laurent coefficients: w_i is the coefficient of z^(2i-2).
    let h = (k / 2) as usize;
    let mut w = vec![BigRational::zero(); h + 1];
    w[0] = BigRational::one();
    for i in 2..=h {
        // Coefficient of z^(2i-4): (2i-2)(2i-3) w_i on the left, 6 Σ_{a+b=i} w_a w_b
        // on the right, whose two w_0 w_i terms move across.
        let mut s = BigRational::zero();
        for a in 1..i {
            s += &w[a] * &w[i - a];
        }
        s *= BigRational::from_integer(6.into());
        if i == 2 {
            s -= g2 / BigRational::from_integer(2.into());
        }
        if i == 3 {
            // w_3 carries g3 through ℘'^2 = 4℘^3 - g2 ℘ - g3; fix it there.
            w[3] = g3 / BigRational::from_integer(28.into());
            continue;
        }
        let lead = BigRational::from_integer(BigInt::from((2 * i as i64 - 2) * (2 * i as i64 - 3) - 12));
        w[i] = s / lead;
    }
    let a = &w[h] / BigRational::from_integer(BigInt::from(k - 1));
    let fact: BigInt = (1..k as u64).product();
    (BigRational::one() - BigRational::from_integer(BigInt::from(n).pow(k))) * BigRational::from_integer(fact) * a
}

#[test]
fn recursion_agrees_with_second_order_ode() {
    for (g2, g3) in [(4, 0), (8, 3), (-3, 5)] {
        let w = WeierstrassData::from_i64(g2, g3);
        let t = eis_moments_rational(&w, 2, 16);
        for e in &t.entries {
            assert_eq!(e.value, moment_by_ode(&w.g2, &w.g3, 2, e.k), "({g2},{g3}) k = {}", e.k);
        }
    }
}

#[test]
fn formal_and_rational_pipelines_agree() {
    for w in [WeierstrassData::lemniscate(), WeierstrassData::from_i64(8, 3)] {
        for n in [2, 3] {
            let f = eis_moments_formal(&w, n, 12).unwrap();
            let r = eis_moments_rational(&w, n, 12);
            for k in 3..=12 {
                assert_eq!(f.get(k), r.get(k), "{w:?} n = {n} k = {k}");
            }
            f.check_vanishing().unwrap();
            r.check_vanishing().unwrap();
        }
    }
}

#[test]
fn katz_comparison_at_five() {
    let report = katz_comparison(2, &[2, 4, 6], 8, 5, 6).unwrap();
    assert!(report.calibration.congruent(&PAdicRing::new(5, 6).unwrap().one(), 6));
    assert!(report.j0_vanishes);
    assert!(report.passed(), "{report:?}");
}

#[test]
fn tate_collapse_matches_classical_values() {
    let t = tate_katz_moments(2, 6, 4, 7, 5).unwrap();
    let nodal = nodal_moments(2, 8).unwrap();
    let ring = PAdicRing::new(7, 5).unwrap();
    for k in 2..=8 {
        let at_cusp = t.get(k).unwrap().coeff(0);
        assert_eq!(at_cusp, ring.from_rational(nodal.get(k).unwrap()).unwrap(), "k = {k}");
        let expected = if k % 2 == 0 && k > 2 {
            (BigRational::one() - BigRational::from_integer(BigInt::from(2).pow(k))) * -bernoulli(k as usize) / q(k as i64, 1)
        } else {
            BigRational::zero()
        };
        assert_eq!(nodal.get(k), Some(&expected));
    }
}

#[test]
fn zeta_values_match_euler_factor_removed_bernoulli() {
    for (p, n, k, prec) in [(5, 2, 6, 8), (7, 2, 4, 5), (7, 3, 8, 5), (11, 2, 6, 4)] {
        let z = padic_zeta_value(p, n, k, prec).unwrap();
        let ring = PAdicRing::new(p, prec).unwrap();
        let expected = ring.from_rational(&zeta_expected(p, n, k)).unwrap();
        let digits = z.precision.unwrap();
        assert!(digits >= prec - 1, "p = {p} k = {k}: {digits} digits");
        assert!(z.value.congruent(&expected, digits), "p = {p} n = {n} k = {k}: {} vs {}", z.value, expected);
    }
}

#[test]
fn kummer_pairs() {
    let r5 = kummer_congruence_check(5, 2, &[(6, 10), (8, 12), (6, 6)], 0, 3).unwrap();
    assert!(r5.passed(), "{r5:?}");
    assert_eq!(r5.entries[0].mode, KummerMode::Divided);
    assert_eq!(r5.entries[1].mode, KummerMode::Raw);
    assert!(r5.entries[1].notice.is_some());
    let r7 = kummer_congruence_check(7, 2, &[(4, 10)], 0, 3).unwrap();
    assert!(r7.passed(), "{r7:?}");
    assert!(kummer_congruence_check(5, 2, &[(6, 8)], 0, 3).is_err());
}

#[test]
fn synthetic_measures_satisfy_kummer() {
    assert_eq!(synthetic_kummer_check(5, 20, 11).unwrap(), 20);
    assert_eq!(synthetic_kummer_check(7, 5, 12).unwrap(), 5);
}

#[test]
fn supersingular_lemniscate_at_seven() {
    let r = supersingular_integrality_check(7, 2, 20, 6).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    let e8 = r.entries.iter().find(|e| e.0 == 8).unwrap();
    assert_eq!(e8.1, q(-2448, 1));
    assert_eq!(e8.2, Some(0));
    assert_eq!(supersingular_integrality_check(11, 2, 4, 4).unwrap().entries.last().unwrap().1, q(-6, 1));
}

#[test]
fn moment_table_round_trips() {
    let t = eis_moments_formal(&WeierstrassData::from_i64(8, 3), 2, 8).unwrap();
    let back = MomentTable::from_json(&Rationals, &t.to_json()).unwrap();
    assert_eq!(back, t);
    let csv = t.to_csv().unwrap();
    assert!(csv.starts_with("k,value,system,precision\n"));
    assert_eq!(csv.lines().count(), 8);
    let tate = tate_katz_moments(2, 4, 3, 5, 4).unwrap();
    assert_eq!(MomentTable::from_json(&tate.ring, &tate.to_json()).unwrap(), tate);
}
