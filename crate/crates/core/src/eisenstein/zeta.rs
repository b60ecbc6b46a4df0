//! The Tate curve at the cusp: Katz moments as q-series, p-adic zeta values
//! by restriction to the units, and the congruence and integrality checks.

use super::{derivation_chain, eis_moments_from_series, eis_moments_rational, eisenstein_q_expansion, x_depleted};
use super::{CoordinateSystem, CurveDescriptor, MomentEntry, MomentTable};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::formal::{tate_x_series, Curve, EllipticFormalCoordinates, FormalGroupLaw, WeierstrassData};
use crate::fourier::{AmiceMeasure, Certified};
use crate::mahler::amice_tail_bound;
use crate::rings::{bernoulli, is_prime, vp, PAdicRing, PAdicScalar, Rationals, Ring};
use crate::series::{SeriesRing, TruncSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_prime_and_n(p: u64, n: i64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= 3 {
        return Err(Error::Precondition(format!("p = {p} must exceed 3")));
    }
    if n == 0 || n.unsigned_abs().is_multiple_of(p) {
        return Err(Error::Precondition(format!("n = {n} must be prime to p = {p}")));
    }
    Ok(())
}

/// `((1+t) d/dt)^j x^(n)(t, q)` at `t = 0` for `j <= j_max`, as q-series
/// modulo `(p^K, q^M)`. Entries are indexed by weight `k = j + 2`.
pub fn tate_katz_moments(n: i64, j_max: u32, q_order: i64, p: u64, prec: u32) -> Result<MomentTable<SeriesRing<PAdicRing>>> {
    check_prime_and_n(p, n)?;
    let base = PAdicRing::new(p, prec)?;
    let trunc = j_max as i64 + 4;
    let coords = tate_x_series(&base, q_order, trunc)?;
    let qr = coords.x.ring().clone();
    let fg = FormalGroupLaw::tate(&qr, trunc, q_order)?;
    let xn = x_depleted(&coords, &fg, n)?;
    let mut table = eis_moments_from_series(CurveDescriptor::Tate, &xn, &fg, n, j_max + 2, CoordinateSystem::TateQ)?;
    table.p = Some(p);
    table.precision = Some(prec);
    table.q_order = Some(q_order);
    Ok(table)
}

/// The nodal cubic `q = 0`: `x = u/(1-u)^2 + 1/12` over `ring`, depleted,
/// with the multiplicative formal group.
pub(crate) fn nodal_depleted<R: Ring>(ring: &R, n: i64, trunc: i64) -> Result<(TruncSeries<R>, FormalGroupLaw<R>)> {
    let coords = tate_x_series(ring, 1, trunc)?;
    let at_cusp = |s: &TruncSeries<SeriesRing<R>>| s.map_coeffs(ring, |c| Ok(c.coeff(0)));
    let nodal = EllipticFormalCoordinates { curve: Curve::Tate { q_order: 1 }, x: at_cusp(&coords.x)?, y: at_cusp(&coords.y)? };
    let fg = FormalGroupLaw::tate(ring, trunc, 1)?;
    let xn = x_depleted(&nodal, &fg, n)?;
    Ok((xn, fg))
}

/// Moments of the nodal specialization over `Q`, indexed by weight.
pub fn nodal_moments(n: i64, k_max: u32) -> Result<MomentTable<Rationals>> {
    let (xn, fg) = nodal_depleted(&Rationals, n, k_max as i64 + 2)?;
    eis_moments_from_series(CurveDescriptor::Tate, &xn, &fg, n, k_max, CoordinateSystem::FormalT)
}

/// `(1 - n^k)(1 - p^(k-1)) ζ(1 - k)`, zero for odd `k`.
pub fn zeta_expected(p: u64, n: i64, k: u32) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let one = BigRational::one();
    let nk = BigRational::from_integer(BigInt::from(n).pow(k));
    let pk = BigRational::from_integer(BigInt::from(p).pow(k - 1));
    let zeta = -bernoulli(k as usize) / BigRational::from_integer(k.into());
    (&one - nk) * (one - pk) * zeta
}

/// `padic_zeta_value_with_degree` at the smallest degree that certifies `K` digits.
pub fn padic_zeta_value(p: u64, n: i64, k: u32, prec: u32) -> Result<Certified<PAdicScalar>> {
    padic_zeta_value_with_degree(p, n, k, prec, None)
}

/// The unit moment `∫_{Z_p^×} z^(k-2) dμ` of the q = 0 Eisenstein measure,
/// whose Amice transform is `x^(n)(t)`. With an explicit degree below the
/// tail bound the call fails and reports what is needed.
pub fn padic_zeta_value_with_degree(p: u64, n: i64, k: u32, prec: u32, degree: Option<i64>) -> Result<Certified<PAdicScalar>> {
    check_prime_and_n(p, n)?;
    if k < 3 {
        return Err(Error::Precondition(format!("k = {k} must be at least 3")));
    }
    let ring = PAdicRing::new(p, prec)?;
    let need = amice_tail_bound(p, 1, 0, prec) as i64;
    let d = degree.unwrap_or(need);
    if d < need {
        return Err(Error::InsufficientDegree { have: d, need, precision: prec });
    }
    let (xn, _) = nodal_depleted(&ring, n, d + 4)?;
    if xn.trunc() < d {
        return Err(Error::InsufficientOrder { requested: d, achievable: xn.trunc() });
    }
    let mu = AmiceMeasure::new(p, xn.with_trunc(d), 0)?;
    let mut out = mu.restrict_units_with(Executor::Sequential, &[k - 2], prec)?;
    Ok(out.remove(0))
}

/// Outcome of the Katz comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct KatzReport {
    pub p: u64,
    pub n: i64,
    pub q_order: i64,
    pub precision: u32,
    /// Measured `j = 2` constant term over the oracle's; must be 1.
    pub calibration: PAdicScalar,
    /// `(j, measured, expected, agrees)`.
    pub entries: Vec<(u32, TruncSeries<PAdicRing>, TruncSeries<PAdicRing>, bool)>,
    pub j0_vanishes: bool,
}

impl KatzReport {
    pub fn passed(&self) -> bool {
        self.j0_vanishes && self.calibration.congruent(&self.calibration_one(), self.precision) && self.entries.iter().all(|e| e.3)
    }

    fn calibration_one(&self) -> PAdicScalar {
        PAdicRing::new(self.p, self.precision).expect("ring already built").one()
    }
}

/// Compares Tate moments at the given `j` with `(1 - n^(j+2))` times the
/// q-expansion oracle, after fixing the normalization at weight 4.
pub fn katz_comparison(n: i64, js: &[u32], q_order: i64, p: u64, prec: u32) -> Result<KatzReport> {
    let j_max = js.iter().copied().max().unwrap_or(0).max(2);
    let table = tate_katz_moments(n, j_max, q_order, p, prec)?;
    let base = PAdicRing::new(p, prec)?;
    let expected = |j: u32| -> Result<TruncSeries<PAdicRing>> {
        let k = j + 2;
        let factor = BigRational::one() - BigRational::from_integer(BigInt::from(n).pow(k));
        eisenstein_q_expansion(k, q_order).scale(&factor).reduce_into(&base)
    };
    let measured = |j: u32| -> Result<TruncSeries<PAdicRing>> {
        table.get(j + 2).cloned().ok_or(Error::InsufficientOrder { requested: j as i64 + 2, achievable: 0 })
    };

    // Weight 4: the oracle's constant term against the measured one.
    let m4 = measured(2)?.coeff(0);
    let e4 = expected(2)?.coeff(0);
    let calibration = base.mul(&m4, &base.inv(&e4)?);

    let mut entries = Vec::new();
    for &j in js {
        let (m, e) = (measured(j)?, expected(j)?);
        let diff = m.sub(&e)?;
        let agrees = diff.trunc() >= q_order && diff.terms().all(|(_, c)| base.vanishes(c));
        entries.push((j, m, e, agrees));
    }
    let j0_vanishes = table.ring.vanishes(&measured(0)?);
    Ok(KatzReport { p, n, q_order, precision: prec, calibration, entries, j0_vanishes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KummerMode {
    /// Values divided by their unit factors `1 - n^k`.
    Divided,
    /// Raw unit moments, used when a factor `1 - n^k` is not a unit.
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KummerEntry {
    pub k: u32,
    pub k2: u32,
    pub mode: KummerMode,
    pub left: PAdicScalar,
    pub right: PAdicScalar,
    /// Digits certified on both sides.
    pub precision: u32,
    pub congruent: bool,
    pub notice: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KummerReport {
    pub p: u64,
    pub n: i64,
    pub m: u32,
    pub entries: Vec<KummerEntry>,
}

impl KummerReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.congruent)
    }
}

/// `ζ_p(1-k) ≡ ζ_p(1-k')` modulo `p^(m+1)` for `k ≡ k' mod (p-1) p^m`,
/// through unit moments computed to `K >= m + 2` digits.
pub fn kummer_congruence_check(p: u64, n: i64, pairs: &[(u32, u32)], m: u32, prec: u32) -> Result<KummerReport> {
    check_prime_and_n(p, n)?;
    if prec < m + 2 {
        return Err(Error::Precondition(format!("K = {prec} must be at least m + 2 = {}", m + 2)));
    }
    let period = (p - 1) * p.pow(m);
    for &(k, k2) in pairs {
        if k < 4 || k2 < 4 || k % 2 == 1 || k2 % 2 == 1 || !(k as u64).abs_diff(k2 as u64).is_multiple_of(period) {
            return Err(Error::Precondition(format!("({k}, {k2}) is not an admissible pair mod {period}")));
        }
    }
    let ring = PAdicRing::new(p, prec)?;
    let mut entries = Vec::new();
    for &(k, k2) in pairs {
        let a = padic_zeta_value(p, n, k, prec)?;
        let b = padic_zeta_value(p, n, k2, prec)?;
        let fa = ring.from_bigint(&(BigInt::one() - BigInt::from(n).pow(k)));
        let fb = ring.from_bigint(&(BigInt::one() - BigInt::from(n).pow(k2)));
        let (mode, left, right, notice) = if ring.is_unit(&fa) && ring.is_unit(&fb) {
            (KummerMode::Divided, ring.inv(&fa).map(|i| ring.mul(&a.value, &i))?, ring.inv(&fb).map(|i| ring.mul(&b.value, &i))?, None)
        } else {
            let msg = format!("1 - {n}^k is not a unit for k in ({k}, {k2}); comparing raw unit moments");
            (KummerMode::Raw, a.value, b.value, Some(msg))
        };
        let precision = left.prec().min(right.prec()).min(a.precision.unwrap_or(prec)).min(b.precision.unwrap_or(prec));
        let congruent = precision > m && left.congruent(&right, m + 1);
        entries.push(KummerEntry { k, k2, mode, left, right, precision, congruent, notice });
    }
    Ok(KummerReport { p, n, m, entries })
}

/// Unit moments of random bounded measures satisfy
/// `μ(z^k 1_units) ≡ μ(z^k' 1_units) mod p` for `k ≡ k' mod (p - 1)`.
/// Returns the number of measures checked, or the first failure.
pub fn synthetic_kummer_check(p: u64, count: usize, seed: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let prec = 2;
    let ring = PAdicRing::new(p, prec)?;
    let degree = amice_tail_bound(p, 1, 0, prec) as i64;
    let step = (p - 1) as u32;
    let ks: Vec<u32> = (1..=step).flat_map(|k| [k, k + step, k + 2 * step]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let terms: Vec<_> = (0..degree).map(|e| (e, ring.from_u64(rng.gen_range(0..ring.modulus())))).collect();
        let mu = AmiceMeasure::new(p, TruncSeries::from_terms(&ring, terms, degree), 0)?;
        let values = mu.restrict_units_with(Executor::Sequential, &ks, prec)?;
        for (k, v) in ks.chunks(3).zip(values.chunks(3)) {
            for r in 1..3 {
                if !v[0].value.congruent(&v[r].value, 1) {
                    return Err(Error::Inconsistent(format!(
                        "measure {i}: unit moments at k = {} and {} differ mod {p}: {} vs {}",
                        k[0], k[r], v[0].value, v[r].value
                    )));
                }
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupersingularReport {
    pub p: u64,
    pub n: i64,
    pub k_max: u32,
    pub precision: u32,
    /// `(k, rational moment, v_p or None for zero, formal moment mod p^K)`.
    pub entries: Vec<(u32, BigRational, Option<i64>, PAdicScalar)>,
    pub failures: Vec<String>,
}

impl SupersingularReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For the lemniscate `y^2 = 4x^3 - 4x` at `p ≡ 3 mod 4`: every rational
/// moment is p-integral and reduces to the formal-group moment mod `p^K`.
pub fn supersingular_integrality_check(p: u64, n: i64, k_max: u32, prec: u32) -> Result<SupersingularReport> {
    check_prime_and_n(p, n)?;
    if p % 4 != 3 {
        return Err(Error::Precondition(format!("p = {p} is not 3 mod 4")));
    }
    let w = WeierstrassData::lemniscate();
    let rational = eis_moments_rational(&w, n, k_max);
    let ring = PAdicRing::new(p, prec)?;
    let (xn, fg) = super::depleted_formal(&w, n, k_max)?;
    let formal = derivation_chain(&fg.reduce_into(&ring)?, &xn.reduce_into(&ring)?, k_max - 2)?;

    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for (e, f) in rational.entries.iter().zip(formal) {
        let v = if e.value.is_zero() { None } else { Some(vp(&e.value, p)?) };
        if let Some(v) = v.filter(|v| *v < 0) {
            failures.push(format!("k = {}: v_{p} = {v} < 0", e.k));
        } else {
            let r = ring.from_rational(&e.value)?;
            if !r.congruent(&f, prec) {
                failures.push(format!("k = {}: rational {} reduces to {r}, formal gives {f}", e.k, e.value));
            }
        }
        entries.push((e.k, e.value.clone(), v, f));
    }
    Ok(SupersingularReport { p, n, k_max, precision: prec, entries, failures })
}

/// Rebuilds a table with every value reduced into `Z/p^K`.
pub fn reduce_table(table: &MomentTable<Rationals>, p: u64, prec: u32) -> Result<MomentTable<PAdicRing>> {
    let ring = PAdicRing::new(p, prec)?;
    let entries = table
        .entries
        .iter()
        .map(|e| {
            Ok(MomentEntry { k: e.k, value: ring.from_rational(&e.value)?, system: e.system, precision: Some(prec) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentTable {
        ring,
        curve: table.curve.clone(),
        n: table.n,
        p: Some(p),
        precision: Some(prec),
        q_order: table.q_order,
        truncation: table.truncation,
        entries,
    })
}
