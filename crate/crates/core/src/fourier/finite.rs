//! Cartier duality between `Z/p^n` and `μ_{p^n}` with coefficients in
//! `Z/p^k`, as explicit Pascal-matrix arithmetic.

use crate::error::{Error, Result};
use super::AmiceMeasure;
use crate::rings::{is_prime, PAdicRing};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `λ(a)` for `a ∈ Z/p^n`.
    Measure,
    /// Coefficients of a polynomial in `t` of degree `< p^n`.
    Function,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToFunction,
    ToMeasure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLevelData {
    pub p: u64,
    pub level: u32,
    pub k: u32,
    pub side: Side,
    pub entries: Vec<u64>,
}

fn modulus(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k).filter(|m| *m < 1 << 62).ok_or(Error::ModulusTooLarge { p, k })
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl FiniteLevelData {
    pub fn new(p: u64, level: u32, k: u32, side: Side, entries: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = modulus(p, k)?;
        let size = p.checked_pow(level).ok_or(Error::ModulusTooLarge { p, k: level })?;
        if entries.len() as u64 != size {
            return Err(Error::Precondition(format!("level {level} over p = {p} needs {size} entries, got {}", entries.len())));
        }
        let entries = entries.into_iter().map(|x| x.rem_euclid(m as i64) as u64).collect();
        Ok(Self { p, level, k, side, entries })
    }

    pub fn zero(p: u64, level: u32, k: u32, side: Side) -> Result<Self> {
        Self::new(p, level, k, side, vec![0; p.pow(level) as usize])
    }

    /// The point mass at `a mod p^n`.
    pub fn dirac(p: u64, level: u32, k: u32, a: i64) -> Result<Self> {
        let size = p.pow(level) as i64;
        let mut e = vec![0; size as usize];
        e[a.rem_euclid(size) as usize] = 1;
        Self::new(p, level, k, Side::Measure, e)
    }

    pub fn random(p: u64, level: u32, k: u32, side: Side, rng: &mut impl Rng) -> Result<Self> {
        let m = modulus(p, k)? as i64;
        let e = (0..p.pow(level)).map(|_| rng.gen_range(0..m)).collect();
        Self::new(p, level, k, side, e)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    fn modulus(&self) -> u64 {
        self.p.pow(self.k)
    }

    fn with(&self, level: u32, side: Side, entries: Vec<u64>) -> Self {
        Self { p: self.p, level, k: self.k, side, entries }
    }
}

/// `M[j][a] = C(a, j) mod p^k` for `0 <= a, j < p^n`.
pub fn pascal_matrix(p: u64, level: u32, k: u32) -> Result<Vec<Vec<u64>>> {
    let m = modulus(p, k)?;
    let size = p.pow(level) as usize;
    // rows[a][j] = C(a, j)
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(size);
    for a in 0..size {
        let mut row = vec![0u64; size];
        row[0] = 1 % m;
        if a > 0 {
            for j in 1..=a {
                row[j] = (rows[a - 1][j - 1] + rows[a - 1][j]) % m;
            }
        }
        rows.push(row);
    }
    Ok((0..size).map(|j| (0..size).map(|a| rows[a][j]).collect()).collect())
}

/// `to_function`: `λ -> Σ_a λ(a) (1 + t)^a`; `to_measure`: its inverse,
/// with entries `(-1)^(a+j) C(j, a)`.
pub fn finite_level_transform(data: &FiniteLevelData, direction: Direction) -> Result<FiniteLevelData> {
    let expected = match direction {
        Direction::ToFunction => Side::Measure,
        Direction::ToMeasure => Side::Function,
    };
    if data.side != expected {
        return Err(Error::Precondition(format!("{direction:?} expects {expected:?} data")));
    }
    let m = data.modulus();
    let pascal = pascal_matrix(data.p, data.level, data.k)?;
    let size = data.size();
    let out = match direction {
        Direction::ToFunction => (0..size)
            .map(|j| (0..size).fold(0, |acc, a| (acc + mulmod(pascal[j][a], data.entries[a], m)) % m))
            .collect(),
        Direction::ToMeasure => (0..size)
            .map(|a| {
                (a..size).fold(0, |acc, j| {
                    let term = mulmod(pascal[a][j], data.entries[j], m);
                    if (j - a) % 2 == 0 {
                        (acc + term) % m
                    } else {
                        (acc + m - term) % m
                    }
                })
            })
            .collect(),
    };
    let side = match direction {
        Direction::ToFunction => Side::Function,
        Direction::ToMeasure => Side::Measure,
    };
    Ok(data.with(data.level, side, out))
}

fn check_compatible(a: &FiniteLevelData, b: &FiniteLevelData, side: Side) -> Result<()> {
    if (a.p, a.level, a.k) != (b.p, b.level, b.k) || a.side != side || b.side != side {
        return Err(Error::Precondition("finite-level data of different shapes".into()));
    }
    Ok(())
}

/// Convolution of measures on `Z/p^n`.
pub fn convolve_finite(a: &FiniteLevelData, b: &FiniteLevelData) -> Result<FiniteLevelData> {
    check_compatible(a, b, Side::Measure)?;
    let m = a.modulus();
    let size = a.size();
    let mut out = vec![0u64; size];
    for (i, x) in a.entries.iter().enumerate() {
        for (j, y) in b.entries.iter().enumerate() {
            let c = (i + j) % size;
            out[c] = (out[c] + mulmod(*x, *y, m)) % m;
        }
    }
    Ok(a.with(a.level, Side::Measure, out))
}

/// Coefficients of `(1 + t)^(p^n) - 1` below the leading `t^(p^n)`.
fn cyclotomic_tail(p: u64, level: u32, m: u64) -> Vec<u64> {
    let size = p.pow(level) as usize;
    let mut row = vec![0u64; size + 1];
    row[0] = 1 % m;
    for a in 1..=size {
        for j in (1..=a).rev() {
            row[j] = (row[j] + row[j - 1]) % m;
        }
    }
    row[0] = 0;
    row.truncate(size);
    row
}

/// Reduces a polynomial modulo `((1 + t)^(p^n) - 1, p^k)`.
fn reduce_poly(mut f: Vec<u64>, p: u64, level: u32, m: u64) -> Vec<u64> {
    let size = p.pow(level) as usize;
    let tail = cyclotomic_tail(p, level, m);
    for d in (size..f.len()).rev() {
        let c = f[d];
        if c == 0 {
            continue;
        }
        f[d] = 0;
        // t^size ≡ -Σ tail_j t^j
        for (j, tj) in tail.iter().enumerate() {
            let idx = d - size + j;
            f[idx] = (f[idx] + m - mulmod(c, *tj, m)) % m;
        }
    }
    f.resize(size, 0);
    f
}

/// Product of functions on `μ_{p^n}`.
pub fn poly_mul_mod(a: &FiniteLevelData, b: &FiniteLevelData) -> Result<FiniteLevelData> {
    check_compatible(a, b, Side::Function)?;
    let m = a.modulus();
    let mut prod = vec![0u64; 2 * a.size()];
    for (i, x) in a.entries.iter().enumerate() {
        for (j, y) in b.entries.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod(*x, *y, m)) % m;
        }
    }
    Ok(a.with(a.level, Side::Function, reduce_poly(prod, a.p, a.level, m)))
}

/// Pushforward along the reduction `Z/p^(n+1) -> Z/p^n`.
fn push_reduction(d: &FiniteLevelData) -> FiniteLevelData {
    let size = (d.p.pow(d.level - 1)) as usize;
    let m = d.modulus();
    let mut out = vec![0u64; size];
    for (a, x) in d.entries.iter().enumerate() {
        out[a % size] = (out[a % size] + x) % m;
    }
    d.with(d.level - 1, Side::Measure, out)
}

/// Restriction of a function on `μ_{p^(n+1)}` to `μ_{p^n}`.
fn restrict_function(f: &FiniteLevelData) -> FiniteLevelData {
    f.with(f.level - 1, Side::Function, reduce_poly(f.entries.clone(), f.p, f.level - 1, f.modulus()))
}

/// Pushforward along `Z/p^n -> Z/p^(n+1)`, `a -> p a`.
fn push_inclusion(d: &FiniteLevelData) -> FiniteLevelData {
    let mut out = vec![0u64; d.size() * d.p as usize];
    for (a, x) in d.entries.iter().enumerate() {
        out[a * d.p as usize] = *x;
    }
    d.with(d.level + 1, Side::Measure, out)
}

/// Pullback along `[p]: μ_{p^(n+1)} -> μ_{p^n}`: `f(t) -> f((1 + t)^p - 1)`.
fn pull_along_p(f: &FiniteLevelData) -> FiniteLevelData {
    let (p, m, level) = (f.p, f.modulus(), f.level + 1);
    let size = p.pow(level) as usize;
    let mut g = vec![0u64; p as usize + 1];
    // (1 + t)^p - 1
    let mut c = 1u64;
    for (j, slot) in g.iter_mut().enumerate().skip(1) {
        c = c * (p - j as u64 + 1) / j as u64;
        *slot = c % m;
    }
    let mul = |a: &[u64], b: &[u64]| {
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(*x, *y, m)) % m;
            }
        }
        reduce_poly(out, p, level, m)
    };
    let mut acc = vec![0u64; size];
    for c in f.entries.iter().rev() {
        acc = mul(&acc, &g);
        acc[0] = (acc[0] + c) % m;
    }
    f.with(level, Side::Function, acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramCheck {
    pub name: String,
    pub cases: usize,
    /// The first offending case and coefficient.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub p: u64,
    pub level: u32,
    pub k: u32,
    pub checks: Vec<DiagramCheck>,
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }
}

fn first_mismatch(lhs: &FiniteLevelData, rhs: &FiniteLevelData) -> Option<String> {
    lhs.entries
        .iter()
        .zip(&rhs.entries)
        .position(|(x, y)| x != y)
        .map(|j| format!("coefficient {j}: {} vs {}", lhs.entries[j], rhs.entries[j]))
}

/// Checks the three limit diagrams between levels `n` and `n + 1`:
///
/// 1. transforming a level `n + 1` measure and reducing the polynomial mod
///    `(1 + t)^(p^n) - 1` equals transforming its pushforward to `Z/p^n`;
/// 2. transforming the pushforward of a level `n` measure along `a -> p a`
///    equals pulling its transform back along `[p]`;
/// 3. the Amice series `(1 + t)^a` of an integer point mass reduces at level
///    `n` to the transform of the point mass at `a mod p^n`.
///
/// Cases: the zero measure, every point mass, and `trials` seeded random
/// measures.
pub fn level_compatibility_check(p: u64, level: u32, k: u32, trials: usize, seed: u64) -> Result<CompatibilityReport> {
    if level < 1 {
        return Err(Error::Precondition("level_compatibility_check needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = |lvl: u32, rng: &mut ChaCha8Rng| -> Result<Vec<FiniteLevelData>> {
        let mut v = vec![FiniteLevelData::zero(p, lvl, k, Side::Measure)?];
        for a in 0..p.pow(lvl) as i64 {
            v.push(FiniteLevelData::dirac(p, lvl, k, a)?);
        }
        for _ in 0..trials {
            v.push(FiniteLevelData::random(p, lvl, k, Side::Measure, rng)?);
        }
        Ok(v)
    };

    let mut checks = Vec::new();

    let upper = cases(level + 1, &mut rng)?;
    let mut failure = None;
    for (i, mu) in upper.iter().enumerate() {
        let lhs = restrict_function(&finite_level_transform(mu, Direction::ToFunction)?);
        let rhs = finite_level_transform(&push_reduction(mu), Direction::ToFunction)?;
        if let Some(f) = first_mismatch(&lhs, &rhs) {
            failure = Some(format!("case {i}: {f}"));
            break;
        }
    }
    checks.push(DiagramCheck { name: "reduction".into(), cases: upper.len(), failure });

    let lower = cases(level, &mut rng)?;
    let mut failure = None;
    for (i, mu) in lower.iter().enumerate() {
        let lhs = finite_level_transform(&push_inclusion(mu), Direction::ToFunction)?;
        let rhs = pull_along_p(&finite_level_transform(mu, Direction::ToFunction)?);
        if let Some(f) = first_mismatch(&lhs, &rhs) {
            failure = Some(format!("case {i}: {f}"));
            break;
        }
    }
    checks.push(DiagramCheck { name: "inclusion".into(), cases: lower.len(), failure });

    let m = modulus(p, k)?;
    let ring = PAdicRing::new(p, k)?;
    let span = 2 * p.pow(level + 1) as i64;
    let mut failure = None;
    for a in 0..span {
        // The Amice series of the point mass, exact once its degree passes a.
        let series = AmiceMeasure::dirac(&ring, p, &BigInt::from(a), a + 1)?;
        let poly: Vec<u64> = (0..=a).map(|n| series.series().coeff(n).value()).collect();
        let lhs = FiniteLevelData { p, level, k, side: Side::Function, entries: reduce_poly(poly, p, level, m) };
        let rhs = finite_level_transform(&FiniteLevelData::dirac(p, level, k, a)?, Direction::ToFunction)?;
        if let Some(f) = first_mismatch(&lhs, &rhs) {
            failure = Some(format!("dirac({a}): {f}"));
            break;
        }
    }
    checks.push(DiagramCheck { name: "dirac".into(), cases: span as usize, failure });

    Ok(CompatibilityReport { p, level, k, checks })
}
