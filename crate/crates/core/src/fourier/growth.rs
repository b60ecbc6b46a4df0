use crate::error::Result;
use crate::rings::{vp, vp_factorial, Rationals};
use crate::series::TruncSeries;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    /// Every computed `b_n` is integral.
    BoundedMeasure,
    /// Nonnegative slope but unbounded coefficients.
    LocallyAnalyticDistribution,
    /// Slope below `-1/(p^h (p-1))` for `h = h_max`: the coefficients grow
    /// faster than any LA_h dual allows.
    NotADistribution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthProfile {
    /// `min_n v_p(b_n)`, `None` if every computed coefficient vanishes.
    pub min_valuation: Option<i64>,
    /// `min v_p(b_n)/n` over `D/2 <= n < D`.
    pub slope: Option<BigRational>,
    /// `min_n v_p(b_n) + v_p(⌊n/p^h⌋!)` for `h = 0..=h_max`: the dual LA_h norms.
    pub la_norms: Vec<Option<i64>>,
    pub class: GrowthClass,
}

/// Diagnostic of the growth of an Amice series with rational coefficients.
pub fn growth_profile(f: &TruncSeries<Rationals>, p: u64, h_max: u32) -> Result<GrowthProfile> {
    let d = f.trunc();
    let mut vals = Vec::new();
    for (n, c) in f.terms() {
        if n >= 0 && !c.is_zero() {
            vals.push((n, vp(c, p)?));
        }
    }
    let min_valuation = vals.iter().map(|&(_, v)| v).min();
    let slope = vals
        .iter()
        .filter(|&&(n, _)| n >= d / 2 && n > 0)
        .map(|&(n, v)| BigRational::new(v.into(), n.into()))
        .min();
    let la_norms = (0..=h_max)
        .map(|h| vals.iter().map(|&(n, v)| v + vp_factorial(n as u64 / p.pow(h), p) as i64).min())
        .collect();
    let threshold = -BigRational::new(1.into(), (p.pow(h_max) * (p - 1)).into());
    let class = match (&slope, min_valuation) {
        (Some(s), _) if *s < threshold => GrowthClass::NotADistribution,
        (_, Some(m)) if m < 0 => GrowthClass::LocallyAnalyticDistribution,
        _ => GrowthClass::BoundedMeasure,
    };
    Ok(GrowthProfile { min_valuation, slope, la_norms, class })
}
