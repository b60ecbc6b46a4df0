use super::PAdicScalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `v_p` of a nonzero integer.
pub fn vp_int(x: &BigInt, p: u64) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        x = q;
        v += 1;
    }
}

/// `v_p` of a nonzero rational.
pub fn vp(x: &BigRational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(vp_int(x.numer(), p)? as i64 - vp_int(x.denom(), p)? as i64)
}

/// Legendre's formula: `v_p(n!) = sum_{i >= 1} floor(n / p^i)`.
pub fn vp_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut m = n;
    while m > 0 {
        m /= p;
        total += m;
    }
    total
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(a, n) = a (a-1) ... (a-n+1) / n!` for any integer `a`.
pub fn binomial_int(a: &BigInt, n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..n {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// `C(a, n)` for a p-adic residue `a`; dividing by `n!` costs `v_p(n!)` digits.
pub fn binomial(a: &PAdicScalar, n: u64) -> Result<PAdicScalar> {
    let ring = super::PAdicRing::new(a.p(), a.modulus_exponent())?;
    use super::Ring;
    let mut num = ring.one();
    for i in 0..n {
        num = num.mul(&a.sub(&ring.from_i64(i as i64)));
    }
    let out = num.div(&ring.from_bigint(&factorial(n)))?;
    if out.prec() < 1 {
        return Err(Error::InsufficientPrecision(format!(
            "C({a}, {n}) is known to {} digits",
            out.prec()
        )));
    }
    Ok(out)
}

/// Bernoulli numbers `B_0..=B_k` with `B_1 = -1/2`, from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(k: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(k + 1);
    b.push(BigRational::one());
    for m in 1..=k {
        let mut s = BigRational::zero();
        let mut c = BigInt::one(); // C(m+1, j)
        for (j, bj) in b.iter().enumerate() {
            s += bj * &c;
            c = c * (m + 1 - j) / (j + 1);
        }
        b.push(-s / BigInt::from(m + 1));
    }
    b
}

pub fn bernoulli(k: usize) -> BigRational {
    bernoulli_numbers(k).pop().expect("nonempty")
}

/// `sigma_k(m) = sum_{d | m} d^k`.
pub fn divisor_sigma(k: u32, m: u64) -> BigInt {
    assert!(m >= 1, "divisor_sigma needs m >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = m / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{PAdicRing, Ring};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&q(12, 1), 2).unwrap(), 2);
        assert_eq!(vp(&q(1, 30), 5).unwrap(), -1);
        assert_eq!(vp(&q(196812, 1), 3).unwrap(), 2);
        assert_eq!(vp(&q(0, 1), 3), Err(Error::ValuationOfZero));
    }

    #[test]
    fn legendre() {
        assert_eq!(vp_factorial(10, 2), 8);
        assert_eq!(vp_factorial(100, 5), 24);
        assert_eq!(vp_factorial(0, 7), 0);
        for n in 0..=200u64 {
            for p in [2, 3, 5, 7, 11] {
                assert_eq!(vp_factorial(n, p), vp_int(&factorial(n), p).unwrap() as u64);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_int(&5.into(), 2), 10.into());
        assert_eq!(binomial_int(&(-1).into(), 3), (-1).into());
        assert_eq!(binomial_int(&7.into(), 0), 1.into());
        for a in -20i64..=20 {
            for n in 1..=20u64 {
                let lhs = binomial_int(&a.into(), n);
                let rhs = binomial_int(&(a - 1).into(), n) + binomial_int(&(a - 1).into(), n - 1);
                assert_eq!(lhs, rhs, "Pascal at a={a} n={n}");
            }
        }
    }

    #[test]
    fn padic_binomial_tracks_precision() {
        let r = PAdicRing::new(5, 6).unwrap();
        let a = r.from_i64(-1);
        let c = binomial(&a, 5).unwrap();
        // one digit lost to 5 | 5!
        assert_eq!(c.prec(), 5);
        assert_eq!(c.centered(), -1);
        let coarse = r.element(&BigInt::from(3), 1);
        assert!(matches!(binomial(&coarse, 5), Err(Error::InsufficientPrecision(_)) | Err(Error::NotIntegral(_))));
        assert_eq!(binomial(&r.from_i64(7), 3).unwrap(), r.from_i64(35));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn von_staudt_clausen() {
        let b = bernoulli_numbers(30);
        for k in (2..=30).step_by(2) {
            let expected: u64 = (2..=k as u64 + 1).filter(|&l| is_prime(l) && (k as u64).is_multiple_of(l - 1)).product();
            assert_eq!(b[k].denom(), &BigInt::from(expected), "denominator of B_{k}");
        }
        for k in (3..=30).step_by(2) {
            assert!(b[k].is_zero());
        }
    }

    #[test]
    fn sigma() {
        assert_eq!(divisor_sigma(3, 2), 9.into());
        assert_eq!(divisor_sigma(3, 4), 73.into());
        assert_eq!(divisor_sigma(0, 12), 6.into());
        assert_eq!(divisor_sigma(1, 1), 1.into());
    }
}
