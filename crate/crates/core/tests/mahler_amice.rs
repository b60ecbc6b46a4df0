use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use padic_eisenstein::mahler::{mahler_coeffs, mahler_of_masked_power, Mask, SampledFunction};
use padic_eisenstein::rings::{factorial, PAdicRing, Rationals, Ring};
use proptest::prelude::*;

// Valuation of n! by repeated division of the integer itself.
fn vp_of_factorial_direct(n: u64, p: u64) -> u64 {
    let mut f = factorial(n);
    let p = BigInt::from(p);
    let mut k = 0;
    while !f.is_zero() && f.is_multiple_of(&p) {
        f /= &p;
        k += 1;
    }
    k
}

fn vp_rational(x: &BigRational, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    assert!(x.is_integer());
    let mut v = x.numer().abs();
    let p = BigInt::from(p);
    let mut k = 0;
    while v.is_multiple_of(&p) {
        v /= &p;
        k += 1;
    }
    Some(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn polynomials_have_finite_mahler_expansions(
        cs in prop::collection::vec(-50i64..=50, 1..=17),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
    ) {
        let r = Rationals;
        let coeffs: Vec<BigInt> = cs.iter().map(|&c| c.into()).collect();
        let degree = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        let n = 24u64;
        let f = SampledFunction::polynomial(&r, p, &coeffs, n).unwrap();
        let a = mahler_coeffs(&f);
        prop_assert!(a.coeffs()[degree + 1..].iter().all(|c| c.is_zero()));
        prop_assert!(a.is_finitely_supported());
        for z in 0..=n {
            prop_assert_eq!(&a.reconstruct(z), &f.samples()[z as usize]);
        }
        // Integer values give integer coefficients.
        prop_assert!(a.coeffs().iter().all(|c| c.is_integer()));
    }

    #[test]
    fn shift_moves_the_differences(vals in prop::collection::vec(-1000i64..=1000, 9), level in 0u32..=2) {
        let r = Rationals;
        let p = 3u64;
        let values: Vec<BigInt> = (0..3u64.pow(level)).map(|i| vals[i as usize].into()).collect();
        let f = SampledFunction::locally_constant(&r, p, level, values, 20).unwrap();
        let a = mahler_coeffs(&f);
        let b = mahler_coeffs(&f.shifted().unwrap());
        for n in 0..b.coeffs().len() {
            prop_assert_eq!(&b.coeffs()[n], &(&a.coeffs()[n] + &a.coeffs()[n + 1]));
        }
    }
}

#[test]
fn amice_bound_for_locally_constant_functions() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let r = Rationals;
    for trial in 0..200 {
        let p = [2u64, 3, 5, 7][trial % 4];
        let level = rng.gen_range(0..=3u32);
        let values: Vec<BigInt> = (0..p.pow(level)).map(|_| rng.gen_range(-10_000i64..10_000).into()).collect();
        let f = SampledFunction::locally_constant(&r, p, level, values, 60).unwrap();
        let a = mahler_coeffs(&f);
        let reg = a.regularity().unwrap();
        assert_eq!(reg.level, level);
        for (n, c) in a.coeffs().iter().enumerate() {
            if let Some(v) = vp_rational(c, p) {
                let bound = vp_of_factorial_direct(n as u64 / p.pow(level), p);
                assert!(v >= bound, "p={p} level={level} n={n}: v={v} < {bound}");
                assert!(v as i64 >= reg.norm_exponent + bound as i64);
            }
        }
    }
}

#[test]
fn masked_powers_agree_in_both_rings() {
    let p = PAdicRing::new(5, 6).unwrap();
    for k in 0..6 {
        let exact = mahler_of_masked_power(&Rationals, 5, k, Mask::Units, 40).unwrap();
        let reduced = mahler_of_masked_power(&p, 5, k, Mask::Units, 40).unwrap();
        for (x, y) in exact.coeffs().iter().zip(reduced.coeffs()) {
            assert_eq!(p.from_rational(x).unwrap(), *y);
        }
        // Units plus pZ_p is everything.
        let rest = mahler_of_masked_power(&Rationals, 5, k, Mask::PZp, 40).unwrap();
        let all = mahler_of_masked_power(&Rationals, 5, k, Mask::All, 40).unwrap();
        for n in 0..=40 {
            assert_eq!(&exact.coeffs()[n] + &rest.coeffs()[n], all.coeffs()[n]);
        }
    }
}
