use num_bigint::BigInt;
use padic_eisenstein::fourier::{
    convolve_finite, finite_level_transform, level_compatibility_check, pascal_matrix, poly_mul_mod, AmiceMeasure,
    Direction, FiniteLevelData, Side,
};
use padic_eisenstein::mahler::{mahler_coeffs, SampledFunction};
use padic_eisenstein::rings::{binomial_int, PAdicRing, PAdicScalar, Ring};
use padic_eisenstein::series::TruncSeries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const K: u32 = 6;
const D: i64 = 64;

fn random_measure(ring: &PAdicRing, rng: &mut ChaCha8Rng) -> AmiceMeasure<PAdicRing> {
    let m = ring.modulus();
    let terms = (0..D).map(|n| (n, ring.from_u64(rng.gen_range(0..m))));
    AmiceMeasure::new(ring.p(), TruncSeries::from_terms(ring, terms, D), 0).unwrap()
}

fn binom(m: u32, i: u32) -> i64 {
    i64::try_from(binomial_int(&BigInt::from(m), i as u64)).unwrap()
}

#[test]
fn convolution_is_the_series_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [5u64, 7] {
        let r = PAdicRing::new(p, K).unwrap();
        for _ in 0..50 {
            let (mu, nu) = (random_measure(&r, &mut rng), random_measure(&r, &mut rng));
            let conv = mu.convolve(&nu).unwrap();
            assert_eq!(conv.series(), &mu.series().mul(nu.series()).unwrap());
            assert_eq!(conv.degree(), D);
            for m in 0..=8u32 {
                let mut expect = r.zero();
                for i in 0..=m {
                    let term = r.mul(&mu.moment(i).unwrap(), &nu.moment(m - i).unwrap());
                    expect = r.add(&expect, &r.scale_i64(&term, binom(m, i)));
                }
                assert_eq!(conv.moment(m).unwrap(), expect, "p={p} m={m}");
            }
            assert_eq!(mu.moment(0).unwrap(), mu.series().coeff(0));
        }
    }
}

#[test]
fn coordinate_multiplication_is_the_invariant_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = PAdicRing::new(5, K).unwrap();
    for _ in 0..100 {
        let mu = random_measure(&r, &mut rng);
        let z = mu.apply_coordinate().unwrap();
        let f = mu.series();
        let df = f.derive();
        // (1 + t) F', coefficientwise: (n + 1) b_(n+1) + n b_n
        for n in 0..D - 1 {
            let expect = r.add(&r.scale_i64(&f.coeff(n + 1), n + 1), &r.scale_i64(&f.coeff(n), n));
            assert_eq!(z.series().coeff(n), expect);
            assert_eq!(df.coeff(n), r.scale_i64(&f.coeff(n + 1), n + 1));
        }
        assert_eq!(z.degree(), D - 1);
        for k in 0..8 {
            assert_eq!(z.moment(k).unwrap(), mu.moment(k + 1).unwrap());
        }
    }
}

#[test]
fn antipode_negates_the_coordinate() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let r = PAdicRing::new(7, K).unwrap();
    for _ in 0..30 {
        let mu = random_measure(&r, &mut rng);
        let s = mu.antipode().unwrap();
        for k in 0..10u32 {
            let m = mu.moment(k).unwrap();
            assert_eq!(s.moment(k).unwrap(), if k % 2 == 0 { m } else { r.neg(&m) });
        }
        assert_eq!(s.antipode().unwrap(), mu);
    }
}

#[test]
fn polynomial_pairings_have_no_tail() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let r = PAdicRing::new(5, K).unwrap();
    for _ in 0..20 {
        let mu = random_measure(&r, &mut rng);
        let cs: Vec<BigInt> = (0..10).map(|_| rng.gen_range(-100i64..100).into()).collect();
        let f = mahler_coeffs(&SampledFunction::polynomial(&r, 5, &cs, 30).unwrap());
        let v = mu.evaluate(&f).unwrap();
        assert_eq!(v.precision, Some(K));
        let mut expect = r.zero();
        for n in 0..10 {
            expect = r.add(&expect, &r.mul(&f.coeffs()[n], &mu.series().coeff(n as i64)));
        }
        assert_eq!(v.value, expect);
        // The same pairing through moments.
        let mut by_moments = r.zero();
        for (j, c) in cs.iter().enumerate() {
            by_moments = r.add(&by_moments, &r.mul(&r.from_bigint(c), &mu.moment(j as u32).unwrap()));
        }
        assert_eq!(v.value, by_moments);
    }
}

fn vec_of(d: &FiniteLevelData) -> Vec<i64> {
    d.entries.iter().map(|&x| x as i64).collect()
}

#[test]
fn finite_level_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (p, n, k) in [(2u64, 2u32, 6u32), (3, 2, 5), (2, 1, 3), (3, 1, 4)] {
        let size = p.pow(n) as usize;
        let m = p.pow(k);
        let pascal = pascal_matrix(p, n, k).unwrap();
        for j in 0..size {
            assert_eq!(pascal[j][j], 1);
            for a in 0..j {
                assert_eq!(pascal[j][a], 0);
            }
        }
        for _ in 0..50 {
            let mu = FiniteLevelData::random(p, n, k, Side::Measure, &mut rng).unwrap();
            let f = finite_level_transform(&mu, Direction::ToFunction).unwrap();
            assert_eq!(finite_level_transform(&f, Direction::ToMeasure).unwrap(), mu);
            let g = FiniteLevelData::random(p, n, k, Side::Function, &mut rng).unwrap();
            assert_eq!(finite_level_transform(&finite_level_transform(&g, Direction::ToMeasure).unwrap(), Direction::ToFunction).unwrap(), g);
        }
        // Inverse matrix entries (-1)^(a+j) C(j, a), checked against the Pascal matrix.
        for a in 0..size {
            for c in 0..size {
                let mut s: i128 = 0;
                for j in 0..size {
                    let inv = if (a + j) % 2 == 0 { 1 } else { -1 } * i128::try_from(binomial_int(&BigInt::from(j), a as u64)).unwrap();
                    s += inv * pascal[j][c] as i128;
                }
                assert_eq!(s.rem_euclid(m as i128), if a == c { 1 } else { 0 });
            }
        }
        // Convolution goes to the product: exhaustive on point masses, then random.
        let mut pairs = Vec::new();
        for a in 0..size as i64 {
            for b in 0..size as i64 {
                pairs.push((FiniteLevelData::dirac(p, n, k, a).unwrap(), FiniteLevelData::dirac(p, n, k, b).unwrap()));
            }
        }
        for _ in 0..30 {
            pairs.push((
                FiniteLevelData::random(p, n, k, Side::Measure, &mut rng).unwrap(),
                FiniteLevelData::random(p, n, k, Side::Measure, &mut rng).unwrap(),
            ));
        }
        for (x, y) in &pairs {
            let lhs = finite_level_transform(&convolve_finite(x, y).unwrap(), Direction::ToFunction).unwrap();
            let fx = finite_level_transform(x, Direction::ToFunction).unwrap();
            let fy = finite_level_transform(y, Direction::ToFunction).unwrap();
            assert_eq!(lhs, poly_mul_mod(&fx, &fy).unwrap(), "{:?} * {:?}", vec_of(x), vec_of(y));
        }
    }
}

#[test]
fn limit_diagrams_commute() {
    for (p, n, k) in [(2u64, 1u32, 6u32), (2, 2, 6), (3, 1, 4), (3, 2, 5)] {
        let report = level_compatibility_check(p, n, k, 20, p * 100 + n as u64).unwrap();
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn padic_point_masses_pair_like_integers() {
    let r = PAdicRing::new(5, K).unwrap();
    let a: PAdicScalar = r.from_i64(-7);
    let mu = AmiceMeasure::dirac_scalar(&r, &a, 12).unwrap();
    for k in 0..6u32 {
        let m = mu.moment(k).unwrap();
        assert!(m.congruent(&r.pow(&a, k as u64), m.prec()));
        assert!(m.prec() >= K - 2);
    }
}
