//! The Eisenstein measure: the depleted Weierstrass function
//! `x^(n) = x - n^2 [n]^* x`, its moments in the formal parameter and in the
//! analytic uniformizer, the Tate-curve comparison, and p-adic zeta values
//! by restriction to the units.

mod table;
mod zeta;

pub use table::{CoordinateSystem, CurveDescriptor, MomentEntry, MomentTable};
pub use zeta::{
    katz_comparison, kummer_congruence_check, nodal_moments, padic_zeta_value, padic_zeta_value_with_degree, reduce_table,
    supersingular_integrality_check, synthetic_kummer_check, tate_katz_moments, zeta_expected, KatzReport, KummerEntry, KummerMode, KummerReport,
    SupersingularReport,
};

use crate::error::{Error, Result};
use crate::formal::{elliptic_formal_x, elliptic_group_law, Curve, EllipticFormalCoordinates, FormalGroupLaw, WeierstrassData};
use crate::rings::{bernoulli, divisor_sigma, factorial, Rationals, Ring};
use crate::series::TruncSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Laurent coefficients of `℘ = z^-2 + Σ_{k>=2} c_k z^(2k-2)` and the lattice
/// sums `A_2k = c_k / (2k - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeEisenstein {
    pub g2: BigRational,
    pub g3: BigRational,
    /// `c[k]` for `k >= 2`; `c[0]`, `c[1]` are unused zeros.
    pub c: Vec<BigRational>,
    pub k_max: u32,
}

/// `c_2 = g2/20`, `c_3 = g3/28`, `c_k = 3/((2k+1)(k-3)) Σ_{m=2}^{k-2} c_m c_(k-m)`,
/// enough to give `A_k` for `k <= k_max`.
pub fn wp_recursion(g2: &BigRational, g3: &BigRational, k_max: u32) -> LatticeEisenstein {
    let top = (k_max / 2).max(3) as usize;
    let mut c = vec![BigRational::zero(); top + 1];
    c[2] = g2 / BigRational::from_integer(20.into());
    c[3] = g3 / BigRational::from_integer(28.into());
    for k in 4..=top {
        let mut s = BigRational::zero();
        for m in 2..=k - 2 {
            s += &c[m] * &c[k - m];
        }
        c[k] = s * BigRational::new(3.into(), BigInt::from((2 * k + 1) * (k - 3)));
    }
    LatticeEisenstein { g2: g2.clone(), g3: g3.clone(), c, k_max }
}

impl LatticeEisenstein {
    /// `A_k`; zero for odd `k`.
    pub fn a(&self, k: u32) -> BigRational {
        if k % 2 == 1 || k < 4 || k > self.k_max {
            return BigRational::zero();
        }
        let h = (k / 2) as usize;
        &self.c[h] / BigRational::from_integer(BigInt::from(k - 1))
    }

    /// `G_k = (-1)^k (k-1)!/2 A_k`.
    pub fn g(&self, k: u32) -> BigRational {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        self.a(k) * BigRational::new(factorial((k - 1) as u64) * sign, 2.into())
    }
}

/// `x - n^2 x∘[n]`, which has no pole and no constant term.
///
/// On the Tate curve `x` is first moved to Weierstrass form, `x + 1/12`: the
/// constant is invisible to every derivative but fixes `x^(n)(0) = 0`.
pub fn x_depleted<R: Ring>(coords: &EllipticFormalCoordinates<R>, fg: &FormalGroupLaw<R>, n: i64) -> Result<TruncSeries<R>> {
    let ring = coords.x.ring();
    if n == 0 || !ring.is_unit(&ring.from_i64(n)) {
        return Err(Error::Precondition(format!("n = {n} must be invertible in {}", ring.tag())));
    }
    let x = match coords.curve {
        Curve::Tate { .. } => coords.x.add_scalar(&ring.from_rational(&BigRational::new(1.into(), 12.into()))?),
        Curve::Weierstrass(_) => coords.x.clone(),
    };
    let xn = x.sub(&x.compose(&fg.mult(n)?)?.scale_i64(n * n))?;
    if xn.ord() < 0 {
        return Err(Error::ResidualPole(xn.ord()));
    }
    match xn.get(0) {
        Some(c) if !ring.vanishes(&c) => Err(Error::NonzeroConstant(ring.format(&c))),
        None => Err(Error::InsufficientOrder { requested: 1, achievable: 0 }),
        _ => Ok(xn),
    }
}

/// `∂^j f` at `t = 0` for `j = 0..=j_max`, by one chain of derivations.
pub(crate) fn derivation_chain<R: Ring>(fg: &FormalGroupLaw<R>, f: &TruncSeries<R>, j_max: u32) -> Result<Vec<R::Elem>> {
    let mut out = Vec::with_capacity(j_max as usize + 1);
    let mut g = f.clone();
    for j in 0..=j_max {
        if g.trunc() < 1 {
            return Err(Error::InsufficientOrder { requested: j_max as i64 + 2, achievable: j as i64 + 1 });
        }
        out.push(g.constant_term()?);
        if j < j_max {
            g = fg.invariant_derive(&g, 1).map_err(|_| Error::InsufficientOrder {
                requested: j_max as i64 + 2,
                achievable: j as i64 + 2,
            })?;
        }
    }
    Ok(out)
}

fn curve_of(w: &WeierstrassData) -> CurveDescriptor {
    CurveDescriptor::Weierstrass { g2: w.g2.clone(), g3: w.g3.clone() }
}

/// Moments `∂^(k-2) x^(n)(0)` for `2 <= k <= k_max` in any ring carrying
/// the depleted function and the derivation.
pub fn eis_moments_from_series<R: Ring>(
    curve: CurveDescriptor,
    xn: &TruncSeries<R>,
    fg: &FormalGroupLaw<R>,
    n: i64,
    k_max: u32,
    system: CoordinateSystem,
) -> Result<MomentTable<R>> {
    let ring = xn.ring();
    let values = derivation_chain(fg, xn, k_max.saturating_sub(2))?;
    let entries = values
        .into_iter()
        .enumerate()
        .map(|(j, value)| {
            let precision = ring.precision(&value);
            MomentEntry { k: j as u32 + 2, value, system, precision }
        })
        .collect();
    Ok(MomentTable {
        ring: ring.clone(),
        curve,
        n,
        p: None,
        precision: None,
        q_order: None,
        truncation: Some(xn.trunc()),
        entries,
    })
}

/// The algebraic pipeline over `Q`: solve for `x(t)`, build the formal group,
/// deplete, and differentiate with `∂ = (1/λ') d/dt`.
pub fn eis_moments_formal(w: &WeierstrassData, n: i64, k_max: u32) -> Result<MomentTable<Rationals>> {
    let (xn, fg) = depleted_formal(w, n, k_max)?;
    eis_moments_from_series(curve_of(w), &xn, &fg, n, k_max, CoordinateSystem::FormalT)
}

/// `x^(n)` and the formal group over `Q`, to the order moments up to `k_max` need.
pub fn depleted_formal(w: &WeierstrassData, n: i64, k_max: u32) -> Result<(TruncSeries<Rationals>, FormalGroupLaw<Rationals>)> {
    let d = k_max as i64 + 2;
    let coords = elliptic_formal_x(w, d + 2)?;
    let fg = elliptic_group_law(&coords, d)?;
    let xn = x_depleted(&coords, &fg, n)?;
    Ok((xn, fg))
}

/// The transcendental pipeline: `(1 - n^k)(k-1)! A_k` from the ℘ recursion.
pub fn eis_moments_rational(w: &WeierstrassData, n: i64, k_max: u32) -> MomentTable<Rationals> {
    let lattice = wp_recursion(&w.g2, &w.g3, k_max);
    let entries = (2..=k_max)
        .map(|k| {
            let factor = BigRational::one() - BigRational::from_integer(BigInt::from(n).pow(k));
            let value = factor * BigRational::from_integer(factorial((k - 1) as u64)) * lattice.a(k);
            MomentEntry { k, value, system: CoordinateSystem::LaurentZ, precision: None }
        })
        .collect();
    MomentTable {
        ring: Rationals,
        curve: curve_of(w),
        n,
        p: None,
        precision: None,
        q_order: None,
        truncation: None,
        entries,
    }
}

/// `ζ(1 - k) + 2 Σ_{1<=m<M} σ_(k-1)(m) q^m`, the q-expansion of `2 G_k`.
pub fn eisenstein_q_expansion(k: u32, q_order: i64) -> TruncSeries<Rationals> {
    let zeta = -bernoulli(k as usize) / BigRational::from_integer(k.into());
    let mut terms = vec![(0, zeta)];
    for m in 1..q_order {
        terms.push((m, BigRational::from_integer(divisor_sigma(k - 1, m as u64) * 2)));
    }
    TruncSeries::from_rationals(&terms, q_order)
}

#[cfg(test)]
mod tests;
