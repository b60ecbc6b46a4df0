//! Self-checks grouped by module, with seeded randomness and output that
//! does not depend on the number of worker threads.

use crate::eisenstein::{
    eis_moments_formal, eis_moments_rational, katz_comparison, kummer_congruence_check, padic_zeta_value,
    supersingular_integrality_check, synthetic_kummer_check,
};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::formal::{
    elliptic_formal_x, elliptic_group_law, mult_via_log, multiplicative_group, tate_x_series, FormalGroupLaw,
    TateCurveCoefficients, WeierstrassData,
};
use crate::fourier::{
    convolve_finite, finite_level_transform, level_compatibility_check, poly_mul_mod, AmiceMeasure, Direction,
    FiniteLevelData, Side,
};
use crate::mahler::{mahler_coeffs, SampledFunction};
use crate::rings::{bernoulli, binomial_int, divisor_sigma, vp, vp_factorial, PAdicRing, Rationals, Ring};
use crate::series::{BivarTruncSeries, TruncSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Rings,
    Series,
    Formal,
    Mahler,
    Fourier,
    Eisenstein,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Rings, Suite::Series, Suite::Formal, Suite::Mahler, Suite::Fourier, Suite::Eisenstein];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rings => "rings",
            Suite::Series => "series",
            Suite::Formal => "formal",
            Suite::Mahler => "mahler",
            Suite::Fourier => "fourier",
            Suite::Eisenstein => "eisenstein",
        }
    }

    fn checks(self) -> &'static [(&'static str, Check)] {
        match self {
            Suite::Rings => &[("padic-ring-laws", padic_ring_laws), ("bernoulli-and-sigma", bernoulli_and_sigma)],
            Suite::Series => &[("reversion", reversion), ("composition-associative", composition_associative), ("derive-integrate", derive_integrate)],
            Suite::Formal => &[("group-law-axioms", group_law_axioms), ("multiplication-by-n", multiplication_by_n), ("elliptic-x-integral", elliptic_x_integral), ("tate-curve-equation", tate_curve_equation)],
            Suite::Mahler => &[("polynomial-exactness", polynomial_exactness), ("amice-growth-bound", amice_growth_bound)],
            Suite::Fourier => &[("finite-level-duality", finite_level_duality), ("limit-diagrams", limit_diagrams), ("hopf-and-equivariance", hopf_and_equivariance)],
            Suite::Eisenstein => &[("two-pipelines-agree", two_pipelines_agree), ("supersingular-integrality", supersingular), ("katz-comparison", katz), ("padic-zeta-and-kummer", zeta_and_kummer)],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name, or `all`.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(vec![s.parse()?])
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

type Check = fn(Executor, u64) -> Result<String>;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAIL" };
        write!(f, "{:<11}{:<28}{:<5}{}", self.suite.name(), self.name, status, self.detail)
    }
}

/// Runs every check of the given suites; checks run concurrently under a
/// parallel executor but are reported in a fixed order.
pub fn run_suites(suites: &[Suite], exec: Executor, seed: u64) -> Vec<CheckOutcome> {
    let jobs: Vec<(Suite, &'static str, Check)> =
        suites.iter().flat_map(|&s| s.checks().iter().map(move |&(name, f)| (s, name, f))).collect();
    exec.map(&jobs, |&(suite, name, f)| {
        let (passed, detail) = match f(exec, seed) {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        CheckOutcome { suite, name, passed, detail }
    })
}

fn fail(msg: String) -> Error {
    Error::Inconsistent(msg)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn padic_ring_laws(_: Executor, seed: u64) -> Result<String> {
    let mut rng = rng(seed, 1);
    let mut cases = 0;
    for (p, k) in [(2u64, 20u32), (5, 6), (7, 5), (11, 4)] {
        let r = PAdicRing::new(p, k)?;
        for _ in 0..100 {
            let (x, y) = (rng.gen_range(-10_000i64..10_000), rng.gen_range(1i64..10_000));
            let (a, b) = (r.from_i64(x), r.from_i64(y));
            ensure(r.sub(&r.add(&a, &b), &b) == a, || format!("(a + b) - b in {}", r.tag()))?;
            ensure(r.mul(&a, &b) == r.mul(&b, &a), || format!("ab = ba in {}", r.tag()))?;
            if !(y as u64).is_multiple_of(p) {
                let q = r.from_rational(&BigRational::new(x.into(), y.into()))?;
                ensure(r.mul(&q, &b) == a, || format!("{x}/{y} times {y} in {}", r.tag()))?;
                ensure(r.mul(&r.inv(&b)?, &b) == r.one(), || format!("1/{y} in {}", r.tag()))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn bernoulli_and_sigma(_: Executor, _: u64) -> Result<String> {
    let known = [(2, 1, 6), (4, -1, 30), (6, 1, 42), (8, -1, 30), (10, 5, 66), (12, -691, 2730)];
    for (k, n, d) in known {
        ensure(bernoulli(k) == BigRational::new(n.into(), d.into()), || format!("B_{k}"))?;
    }
    ensure(divisor_sigma(3, 6) == BigInt::from(252), || "sigma_3(6)".into())?;
    ensure(vp(&BigRational::new(50.into(), 3.into()), 5)? == 2, || "v_5(50/3)".into())?;
    ensure(vp_factorial(125, 5) == 31, || "v_5(125!)".into())?;
    Ok(format!("{} Bernoulli numbers", known.len()))
}

fn random_series(r: &PAdicRing, rng: &mut ChaCha8Rng, from: i64, d: i64) -> TruncSeries<PAdicRing> {
    let terms: Vec<_> = (from..d).map(|e| (e, r.from_u64(rng.gen_range(0..r.modulus())))).collect();
    TruncSeries::from_terms(r, terms, d)
}

fn reversion(_: Executor, seed: u64) -> Result<String> {
    let mut rng = rng(seed, 2);
    let r = PAdicRing::new(7, 6)?;
    for _ in 0..20 {
        let f = random_series(&r, &mut rng, 2, 24).add(&TruncSeries::var(&r, 24))?;
        let g = f.reverse()?;
        let t = TruncSeries::var(&r, 24);
        ensure(f.compose(&g)? == t && g.compose(&f)? == t, || "f(g(t)) = g(f(t)) = t".into())?;
    }
    Ok("20 series mod t^24".into())
}

fn composition_associative(_: Executor, seed: u64) -> Result<String> {
    let mut rng = rng(seed, 3);
    let r = PAdicRing::new(5, 6)?;
    for _ in 0..20 {
        let f = random_series(&r, &mut rng, 0, 16);
        let g = random_series(&r, &mut rng, 1, 16);
        let h = random_series(&r, &mut rng, 1, 16);
        ensure(f.compose(&g)?.compose(&h)? == f.compose(&g.compose(&h)?)?, || "(f∘g)∘h = f∘(g∘h)".into())?;
    }
    Ok("20 triples mod t^16".into())
}

fn derive_integrate(_: Executor, seed: u64) -> Result<String> {
    let mut rng = rng(seed, 4);
    for _ in 0..20 {
        let terms: Vec<_> = (0..20).map(|e| (e, BigRational::new(rng.gen_range(-99i64..99).into(), rng.gen_range(1i64..20).into()))).collect();
        let f = TruncSeries::from_rationals(&terms, 20);
        ensure(f.integrate()?.derive() == f, || "d/dt ∫ f = f".into())?;
    }
    Ok("20 rational series".into())
}

fn lemniscate_law(d: i64) -> Result<FormalGroupLaw<Rationals>> {
    elliptic_group_law(&elliptic_formal_x(&WeierstrassData::lemniscate(), d + 4)?, d)
}

fn group_law_axioms(_: Executor, _: u64) -> Result<String> {
    let d = 12;
    for (name, fg) in [("multiplicative", multiplicative_group(&Rationals, d)?), ("lemniscate", lemniscate_law(d)?)] {
        let law = fg.law()?;
        ensure(law.is_symmetric(), || format!("{name}: F(t1, t2) = F(t2, t1)"))?;
        for i in 0..d {
            let c = law.coeff(i, 0).unwrap_or_else(BigRational::zero);
            ensure(c == BigRational::from_integer((i == 1).into()), || format!("{name}: F(t, 0) = t at t^{i}"))?;
        }
        let log = fg.log()?;
        let sum = BivarTruncSeries::from_first(log)?.add(&BivarTruncSeries::from_second(log)?)?;
        let diff = BivarTruncSeries::compose_into(log, law)?.sub(&sum)?;
        ensure(diff.terms().next().is_none(), || format!("{name}: λ(F) = λ(t1) + λ(t2)"))?;
    }
    Ok("multiplicative and lemniscate to total degree 12".into())
}

fn multiplication_by_n(_: Executor, _: u64) -> Result<String> {
    let d = 12;
    for (name, fg) in [("multiplicative", multiplicative_group(&Rationals, d)?), ("lemniscate", lemniscate_law(d)?)] {
        let six = fg.mult(6)?;
        ensure(six == fg.mult(2)?.compose(&fg.mult(3)?)?.with_trunc(d), || format!("{name}: [6] = [2]∘[3]"))?;
        ensure(six == mult_via_log(&fg, 6)?.with_trunc(d), || format!("{name}: [6] through the logarithm"))?;
    }
    Ok("[6] = [2]∘[3] = λ^-1(6λ)".into())
}

fn elliptic_x_integral(_: Executor, _: u64) -> Result<String> {
    let coords = elliptic_formal_x(&WeierstrassData::lemniscate(), 20)?;
    ensure(coords.x.terms().all(|(_, c)| c.is_integer()), || "x(t) has a non-integral coefficient".into())?;
    Ok(format!("{} nonzero coefficients to t^20", coords.x.num_terms()))
}

fn tate_curve_equation(_: Executor, _: u64) -> Result<String> {
    let r = PAdicRing::new(5, 6)?;
    let coords = tate_x_series(&r, 5, 10)?;
    let res = TateCurveCoefficients::new(&r, 5).residual(&coords)?;
    ensure(res.terms().all(|(_, c)| c.terms().all(|(_, x)| r.vanishes(x))), || format!("residual {res}"))?;
    Ok("y^2 + xy = x^3 + a4 x + a6 mod (5^6, q^5)".into())
}

fn polynomial_exactness(_: Executor, seed: u64) -> Result<String> {
    let mut rng = rng(seed, 5);
    let mut cases = 0;
    for p in [2u64, 3, 5, 7, 11] {
        for _ in 0..10 {
            let deg = rng.gen_range(0..=16usize);
            let cs: Vec<BigInt> = (0..=deg).map(|_| rng.gen_range(-1000i64..1000).into()).collect();
            let f = SampledFunction::polynomial(&Rationals, p, &cs, 24)?;
            let a = mahler_coeffs(&f);
            ensure(a.coeffs()[deg + 1..].iter().all(|c| c.is_zero()), || format!("p = {p}: coefficient past degree {deg}"))?;
            ensure((0..=24).all(|z| a.reconstruct(z) == f.samples()[z as usize]), || format!("p = {p}: reconstruction"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} polynomials"))
}

fn amice_growth_bound(_: Executor, seed: u64) -> Result<String> {
    let mut rng = rng(seed, 6);
    for trial in 0..200 {
        let p = [2u64, 3, 5, 7][trial % 4];
        let level = rng.gen_range(0..=3u32);
        let values: Vec<BigInt> = (0..p.pow(level)).map(|_| rng.gen_range(-10_000i64..10_000).into()).collect();
        let a = mahler_coeffs(&SampledFunction::locally_constant(&Rationals, p, level, values, 60)?);
        for (n, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let bound = vp_factorial(n as u64 / p.pow(level), p) as i64;
                ensure(vp(c, p)? >= bound, || format!("p = {p}, level {level}, n = {n}"))?;
            }
        }
    }
    Ok("200 functions, n <= 60".into())
}

fn finite_level_duality(_: Executor, seed: u64) -> Result<String> {
    let mut rng = rng(seed, 7);
    for (p, n, k) in [(2u64, 2u32, 6u32), (3, 2, 5)] {
        for _ in 0..50 {
            let mu = FiniteLevelData::random(p, n, k, Side::Measure, &mut rng)?;
            let f = finite_level_transform(&mu, Direction::ToFunction)?;
            ensure(finite_level_transform(&f, Direction::ToMeasure)? == mu, || format!("({p},{n},{k}): inverse"))?;
            let nu = FiniteLevelData::random(p, n, k, Side::Measure, &mut rng)?;
            let g = finite_level_transform(&nu, Direction::ToFunction)?;
            let conv = finite_level_transform(&convolve_finite(&mu, &nu)?, Direction::ToFunction)?;
            ensure(conv == poly_mul_mod(&f, &g)?, || format!("({p},{n},{k}): convolution"))?;
        }
    }
    Ok("(2,2,6) and (3,2,5), 50 vectors each".into())
}

fn limit_diagrams(_: Executor, seed: u64) -> Result<String> {
    let mut cases = 0;
    for (p, n, k) in [(2u64, 2u32, 6u32), (3, 2, 5)] {
        let report = level_compatibility_check(p, n, k, 20, seed)?;
        if let Some(c) = report.checks.iter().find(|c| c.failure.is_some()) {
            return Err(fail(format!("({p},{n},{k}) {}: {}", c.name, c.failure.clone().unwrap_or_default())));
        }
        cases += report.checks.iter().map(|c| c.cases).sum::<usize>();
    }
    Ok(format!("{cases} cases"))
}

fn hopf_and_equivariance(exec: Executor, seed: u64) -> Result<String> {
    let r = PAdicRing::new(5, 6)?;
    let d = 64;
    let seeds: Vec<u64> = (0..100).collect();
    let results = exec.map(&seeds, |&i| -> Result<()> {
        let mut rng = rng(seed, 100 + i);
        let mu = AmiceMeasure::new(5, random_series(&r, &mut rng, 0, d), 0)?;
        let nu = AmiceMeasure::new(5, random_series(&r, &mut rng, 0, d), 0)?;
        let conv = mu.convolve(&nu)?;
        for m in 0..=8u32 {
            let mut expect = r.zero();
            for i in 0..=m {
                let c = i64::try_from(binomial_int(&BigInt::from(m), i as u64)).expect("small binomial");
                expect = r.add(&expect, &r.scale_i64(&r.mul(&mu.moment(i)?, &nu.moment(m - i)?), c));
            }
            ensure(conv.moment(m)? == expect, || format!("measure {i}: moment {m} of a convolution"))?;
        }
        let z = mu.apply_coordinate()?;
        let f = mu.series();
        for n in 0..d - 1 {
            let expect = r.add(&r.scale_i64(&f.coeff(n + 1), n + 1), &r.scale_i64(&f.coeff(n), n));
            ensure(z.series().coeff(n) == expect, || format!("measure {i}: (1+t)d/dt at t^{n}"))?;
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<()>>>()?;
    Ok("100 measures mod (5^6, t^64)".into())
}

fn two_pipelines_agree(exec: Executor, _: u64) -> Result<String> {
    let cases: Vec<(i64, i64, i64)> = [(4, 0), (8, 3)].into_iter().flat_map(|(a, b)| [(a, b, 2), (a, b, 3)]).collect();
    let results = exec.map(&cases, |&(g2, g3, n)| -> Result<()> {
        let w = WeierstrassData::from_i64(g2, g3);
        let f = eis_moments_formal(&w, n, 12)?;
        let r = eis_moments_rational(&w, n, 12);
        for k in 2..=12 {
            ensure(f.get(k) == r.get(k), || format!("({g2},{g3}) n = {n} k = {k}"))?;
        }
        f.check_vanishing()
    });
    results.into_iter().collect::<Result<Vec<()>>>()?;
    let l = eis_moments_formal(&WeierstrassData::lemniscate(), 2, 8)?;
    let int = |v: i64| BigRational::from_integer(v.into());
    ensure(l.get(4) == Some(&int(-6)) && l.get(8) == Some(&int(-2448)), || "lemniscate spot values".into())?;
    Ok("(4,0), (8,3); n = 2, 3; k <= 12".into())
}

fn supersingular(_: Executor, _: u64) -> Result<String> {
    let report = supersingular_integrality_check(7, 2, 40, 6)?;
    ensure(report.passed(), || report.failures.join("; "))?;
    let nonzero = report.entries.iter().filter(|e| !e.1.is_zero()).count();
    let max = report.entries.iter().map(|e| e.1.numer().abs().bits()).max().unwrap_or(0);
    Ok(format!("p = 7, k <= 40: {nonzero} nonzero moments, up to {max} bits"))
}

fn katz(_: Executor, _: u64) -> Result<String> {
    let report = katz_comparison(2, &[2, 4, 6], 8, 5, 6)?;
    ensure(report.passed(), || format!("calibration {}, entries {:?}", report.calibration, report.entries.iter().map(|e| (e.0, e.3)).collect::<Vec<_>>()))?;
    Ok("j = 2, 4, 6 mod (5^6, q^8)".into())
}

fn zeta_and_kummer(_: Executor, seed: u64) -> Result<String> {
    let z = padic_zeta_value(5, 2, 6, 6)?;
    let digits = z.precision.unwrap_or(6);
    let r = PAdicRing::new(5, 6)?;
    ensure(digits >= 5 && z.value.congruent(&r.from_i64(-781), digits), || format!("zeta(5, 2, 6) = {}", z.value))?;
    let k5 = kummer_congruence_check(5, 2, &[(6, 10), (8, 12)], 0, 3)?;
    ensure(k5.passed(), || format!("{:?}", k5.entries))?;
    let k7 = kummer_congruence_check(7, 2, &[(4, 10)], 0, 3)?;
    ensure(k7.passed(), || format!("{:?}", k7.entries))?;
    let count = synthetic_kummer_check(5, 50, seed)?;
    Ok(format!("-781 to {digits} digits, 3 pairs, {count} synthetic measures"))
}
