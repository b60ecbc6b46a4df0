//! Mahler coefficients by finite differences, Amice norm bounds and the
//! certified tail cutoff used for truncated pairings.

use crate::error::{Error, Result};
use crate::rings::{binomial_int, is_prime, vp_factorial, Ring};
use crate::series::TruncSeries;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// What a sampled function is known to be, beyond its samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descriptor {
    /// Integer coefficients, constant term first.
    Polynomial(Vec<BigInt>),
    /// `f(z) = values[z mod p^level]`.
    LocallyConstant { level: u32, values: Vec<BigInt> },
    Custom,
}

/// `v_p(a_n) >= norm_exponent + v_p(⌊n / p^level⌋!)` for every `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regularity {
    pub level: u32,
    pub norm_exponent: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<R: Ring> {
    ring: R,
    p: u64,
    samples: Vec<R::Elem>,
    descriptor: Option<Descriptor>,
}

fn eval_descriptor(d: &Descriptor, p: u64, z: u64) -> Option<BigInt> {
    match d {
        Descriptor::Polynomial(cs) => {
            let z = BigInt::from(z);
            Some(cs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &z + c))
        }
        Descriptor::LocallyConstant { level, values } => Some(values[(z % p.pow(*level)) as usize].clone()),
        Descriptor::Custom => None,
    }
}

fn check_descriptor(d: &Descriptor, p: u64) -> Result<()> {
    if let Descriptor::LocallyConstant { level, values } = d {
        if values.len() as u64 != p.pow(*level) {
            return Err(Error::Precondition(format!("{} class values for level {level}", values.len())));
        }
    }
    Ok(())
}

impl<R: Ring> SampledFunction<R> {
    /// Samples `f(0), ..., f(N)`; a descriptor is spot-checked against them.
    pub fn new(ring: &R, p: u64, samples: Vec<R::Elem>, descriptor: Option<Descriptor>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if samples.is_empty() {
            return Err(Error::Precondition("at least one sample is required".into()));
        }
        if let Some(d) = &descriptor {
            check_descriptor(d, p)?;
            let n = samples.len() as u64;
            for z in [0, n / 2, n - 1] {
                if let Some(v) = eval_descriptor(d, p, z) {
                    if ring.from_bigint(&v) != samples[z as usize] {
                        return Err(Error::Inconsistent(format!("sample f({z}) disagrees with the descriptor")));
                    }
                }
            }
        }
        Ok(Self { ring: ring.clone(), p, samples, descriptor })
    }

    fn from_descriptor(ring: &R, p: u64, d: Descriptor, n: u64) -> Result<Self> {
        check_descriptor(&d, p)?;
        let samples = (0..=n).map(|z| ring.from_bigint(&eval_descriptor(&d, p, z).expect("closed form"))).collect();
        Self::new(ring, p, samples, Some(d))
    }

    pub fn polynomial(ring: &R, p: u64, coeffs: &[BigInt], n: u64) -> Result<Self> {
        Self::from_descriptor(ring, p, Descriptor::Polynomial(coeffs.to_vec()), n)
    }

    pub fn locally_constant(ring: &R, p: u64, level: u32, values: Vec<BigInt>, n: u64) -> Result<Self> {
        Self::from_descriptor(ring, p, Descriptor::LocallyConstant { level, values }, n)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn samples(&self) -> &[R::Elem] {
        &self.samples
    }

    pub fn descriptor(&self) -> Option<&Descriptor> {
        self.descriptor.as_ref()
    }

    /// `z -> f(z + 1)`, one sample shorter.
    pub fn shifted(&self) -> Result<Self> {
        let descriptor = match &self.descriptor {
            Some(Descriptor::LocallyConstant { level, values }) => {
                let m = values.len();
                Some(Descriptor::LocallyConstant { level: *level, values: (0..m).map(|i| values[(i + 1) % m].clone()).collect() })
            }
            Some(Descriptor::Polynomial(cs)) => {
                // Taylor shift: f(z + 1) = Σ_k c_k Σ_i C(k, i) z^i
                let mut out = vec![BigInt::zero(); cs.len()];
                for (k, c) in cs.iter().enumerate() {
                    for (i, slot) in out.iter_mut().enumerate().take(k + 1) {
                        *slot += c * binomial_int(&BigInt::from(k), i as u64);
                    }
                }
                Some(Descriptor::Polynomial(out))
            }
            other => other.clone(),
        };
        Self::new(&self.ring, self.p, self.samples[1..].to_vec(), descriptor)
    }
}

/// Mahler coefficients `a_0..a_N` of a function on `Z_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct MahlerCoeffs<R: Ring> {
    ring: R,
    p: u64,
    coeffs: Vec<R::Elem>,
    regularity: Option<Regularity>,
    /// Every coefficient past the computed range is exactly zero.
    finitely_supported: bool,
}

impl<R: Ring> MahlerCoeffs<R> {
    pub fn new(ring: &R, p: u64, coeffs: Vec<R::Elem>, regularity: Option<Regularity>, finitely_supported: bool) -> Self {
        Self { ring: ring.clone(), p, coeffs, regularity, finitely_supported }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn regularity(&self) -> Option<Regularity> {
        self.regularity
    }

    pub fn with_regularity(mut self, regularity: Regularity) -> Self {
        self.regularity = Some(regularity);
        self
    }

    pub fn is_finitely_supported(&self) -> bool {
        self.finitely_supported
    }

    /// `Σ a_n C(z, n)` at a nonnegative integer.
    pub fn reconstruct(&self, z: u64) -> R::Elem {
        let z = BigInt::from(z);
        self.coeffs.iter().enumerate().fold(self.ring.zero(), |acc, (n, a)| {
            self.ring.add(&acc, &self.ring.mul(a, &self.ring.from_bigint(&binomial_int(&z, n as u64))))
        })
    }

    /// Series form with exponent = index.
    pub fn to_series(&self) -> TruncSeries<R> {
        let trunc = if self.finitely_supported { 1 << 40 } else { self.coeffs.len() as i64 };
        TruncSeries::from_terms(&self.ring, self.coeffs.iter().cloned().enumerate().map(|(n, c)| (n as i64, c)), trunc)
    }
}

fn forward_differences<T: Clone>(samples: &[T], sub: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut row = samples.to_vec();
    let mut out = Vec::with_capacity(row.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| sub(&w[1], &w[0])).collect();
    }
    out
}

/// `a_n = Δ^n f(0)`, exact in the sample ring.
pub fn mahler_coeffs<R: Ring>(f: &SampledFunction<R>) -> MahlerCoeffs<R> {
    let ring = &f.ring;
    let coeffs = forward_differences(&f.samples, |a, b| ring.sub(a, b));
    let (regularity, finitely_supported) = match &f.descriptor {
        Some(Descriptor::Polynomial(cs)) => {
            let degree = cs.iter().rposition(|c| !c.is_zero()).map_or(0, |d| d + 1);
            (None, coeffs.len() >= degree)
        }
        Some(Descriptor::LocallyConstant { level, values }) => {
            let min = values.iter().filter(|v| !v.is_zero()).map(|v| vp_bigint(v, f.p)).min().unwrap_or(0);
            (Some(Regularity { level: *level, norm_exponent: min }), false)
        }
        _ => (None, false),
    };
    MahlerCoeffs { ring: ring.clone(), p: f.p, coeffs, regularity, finitely_supported }
}

fn vp_bigint(v: &BigInt, p: u64) -> i64 {
    let mut v = v.abs();
    let p = BigInt::from(p);
    let mut k = 0;
    while v.is_multiple_of(&p) {
        v /= &p;
        k += 1;
    }
    k
}

/// Smallest `N` with `c + v_p(⌊N/p^m⌋!) >= K`: past it, pairing a bounded
/// measure against Mahler coefficients of that regularity is `0 mod p^K`.
pub fn amice_tail_bound(p: u64, level: u32, norm_exponent: i64, target: u32) -> u64 {
    let need = target as i64 - norm_exponent;
    if need <= 0 {
        return 0;
    }
    let mut q = 0u64;
    while (vp_factorial(q, p) as i64) < need {
        q += 1;
    }
    q * p.pow(level)
}

/// The certified valuation of every Mahler coefficient from index `n` on.
pub fn amice_tail_valuation(p: u64, regularity: Regularity, n: u64) -> i64 {
    regularity.norm_exponent + vp_factorial(n / p.pow(regularity.level), p) as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mask {
    All,
    Units,
    PZp,
    /// `a + p^m Z_p`.
    Class { a: u64, m: u32 },
}

impl Mask {
    pub fn level(&self) -> u32 {
        match self {
            Mask::All => 0,
            Mask::Units | Mask::PZp => 1,
            Mask::Class { m, .. } => *m,
        }
    }

    pub fn contains(&self, p: u64, z: u64) -> bool {
        match self {
            Mask::All => true,
            Mask::Units => !z.is_multiple_of(p),
            Mask::PZp => z.is_multiple_of(p),
            Mask::Class { a, m } => {
                let pm = p.pow(*m);
                z % pm == a % pm
            }
        }
    }
}

/// Mahler coefficients `a_0..a_N` of `z -> z^k 1_mask(z)`, computed over
/// the integers and mapped into `ring`.
pub fn mahler_of_masked_power<R: Ring>(ring: &R, p: u64, k: u32, mask: Mask, n: u64) -> Result<MahlerCoeffs<R>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let samples: Vec<BigInt> = (0..=n)
        .map(|z| if mask.contains(p, z) { BigInt::from(z).pow(k) } else { BigInt::zero() })
        .collect();
    let diffs = forward_differences(&samples, |a, b| a - b);
    let coeffs = diffs.iter().map(|c| ring.from_bigint(c)).collect();
    let finitely_supported = mask == Mask::All && n >= k as u64;
    Ok(MahlerCoeffs {
        ring: ring.clone(),
        p,
        coeffs,
        regularity: Some(Regularity { level: mask.level(), norm_exponent: 0 }),
        finitely_supported,
    })
}
