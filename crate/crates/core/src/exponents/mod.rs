//! Sphere-packing and modified random-coding exponents for single channels
//! and compound classes: curve evaluation, slopes, characteristic rates,
//! conjugate-rate machinery, and the rate-scan form of the modified
//! random-coding exponent.

pub mod oracle;

mod dual;

pub(crate) use dual::esp_minimizer;

use crate::numeric::{golden_min, interp_clamped};
use crate::prob::{entropy, mutual_information, Channel, Pmf};
use crate::weighting::WeightFn;
use crate::{Error, Result};

/// Number of rho grid points used to discretize a parametric BSC interval
/// when a generic per-member sweep is required.
pub const BSC_GRID_POINTS: usize = 201;

/// Coarse candidate count for rate scans in the modified random-coding
/// exponent.
const SCAN_POINTS: usize = 257;

/// Step for one-sided/central slope differences.
const SLOPE_STEP: f64 = 1e-6;

// ---------------------------------------------------------------------------
// Compound classes
// ---------------------------------------------------------------------------

/// A compound channel family: an explicit finite list, or a parametric BSC
/// crossover interval.
#[derive(Debug, Clone, PartialEq)]
pub enum CompoundClass {
    Explicit(Vec<Channel>),
    BscInterval { rho_min: f64, rho_max: f64 },
}

impl CompoundClass {
    pub fn explicit(channels: Vec<Channel>) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::InvalidInput("empty compound class".into()));
        }
        let (nx, ny) = (channels[0].input_size(), channels[0].output_size());
        if channels
            .iter()
            .any(|c| c.input_size() != nx || c.output_size() != ny)
        {
            return Err(Error::DimensionMismatch(
                "compound-class members must share alphabets".into(),
            ));
        }
        Ok(Self::Explicit(channels))
    }

    pub fn singleton(ch: Channel) -> Self {
        Self::Explicit(vec![ch])
    }

    pub fn bsc_interval(rho_min: f64, rho_max: f64) -> Result<Self> {
        if !(rho_min > 0.0 && rho_min <= rho_max && rho_max <= 0.5) {
            return Err(Error::InvalidInput(format!(
                "BSC interval [{rho_min}, {rho_max}] must satisfy 0 < min <= max <= 1/2"
            )));
        }
        Ok(Self::BscInterval { rho_min, rho_max })
    }

    pub fn input_size(&self) -> usize {
        match self {
            Self::Explicit(chs) => chs[0].input_size(),
            Self::BscInterval { .. } => 2,
        }
    }

    pub fn output_size(&self) -> usize {
        match self {
            Self::Explicit(chs) => chs[0].output_size(),
            Self::BscInterval { .. } => 2,
        }
    }

    pub fn is_singleton(&self) -> bool {
        match self {
            Self::Explicit(chs) => chs.len() == 1,
            Self::BscInterval { rho_min, rho_max } => rho_min == rho_max,
        }
    }

    /// Concrete members for per-channel sweeps: the list itself, or a
    /// `n`-point crossover grid (endpoints included) for intervals.
    pub fn grid_members(&self, n: usize) -> Vec<Channel> {
        match self {
            Self::Explicit(chs) => chs.clone(),
            Self::BscInterval { rho_min, rho_max } => {
                if rho_min == rho_max || n <= 1 {
                    return vec![Channel::bsc(*rho_min).expect("validated")];
                }
                (0..n)
                    .map(|i| {
                        let rho = rho_min + (rho_max - rho_min) * i as f64 / (n - 1) as f64;
                        Channel::bsc(rho).expect("validated")
                    })
                    .collect()
            }
        }
    }

    /// Members carrying the extremal behavior. For a BSC interval under a
    /// uniform input every per-channel quantity used here is monotone in the
    /// crossover, so the two endpoint channels suffice; otherwise this falls
    /// back to the full grid.
    pub fn extremal_members(&self, px: &Pmf) -> Vec<Channel> {
        match self {
            Self::Explicit(chs) => chs.clone(),
            Self::BscInterval { rho_min, rho_max } => {
                if px.is_uniform(1e-12) {
                    if rho_min == rho_max {
                        vec![Channel::bsc(*rho_min).expect("validated")]
                    } else {
                        vec![
                            Channel::bsc(*rho_min).expect("validated"),
                            Channel::bsc(*rho_max).expect("validated"),
                        ]
                    }
                } else {
                    self.grid_members(BSC_GRID_POINTS)
                }
            }
        }
    }

    fn check_px(&self, px: &Pmf) -> Result<()> {
        if px.len() != self.input_size() {
            return Err(Error::DimensionMismatch(format!(
                "input pmf over {} symbols vs class with {} inputs",
                px.len(),
                self.input_size()
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Sphere-packing exponent
// ---------------------------------------------------------------------------

/// Sphere-packing exponent E_sp(R, p_X, p_{Y|X}) in bits.
///
/// +inf when no conditional pmf with mutual information at most R is
/// absolutely continuous with respect to the channel; 0 at and above
/// I(p_X, p_{Y|X}). Elsewhere the value of the Lagrangian dual
/// sup_{rho >= 0}[E_0(rho) - rho R], which matches the primal constrained
/// minimum of the conditional divergence.
pub fn esp(rate: f64, px: &Pmf, ch: &Channel) -> Result<f64> {
    if rate < 0.0 || !rate.is_finite() {
        return Err(Error::InvalidInput(format!("rate {rate} must be finite and >= 0")));
    }
    let i = mutual_information(px, ch)?;
    if rate >= i {
        return Ok(0.0);
    }
    if rate <= 1e-12 {
        return Ok(dual::esp_zero_rate(px, ch));
    }
    let r_inf = dual::min_mutual_information(px, ch);
    if rate < r_inf - 1e-12 {
        return Ok(f64::INFINITY);
    }
    let sol = dual::esp_dual(rate, px, ch);
    if sol.boundary {
        // the dual is unbounded: the rate sits at or below the infimum of
        // finiteness
        return Ok(f64::INFINITY);
    }
    Ok(sol.value)
}

/// Worst-case sphere-packing exponent over a compound class.
///
/// Explicit lists take the exact minimum over members. For a BSC interval
/// under a uniform input the minimizer is the noisiest channel, so only
/// rho_max is evaluated; other inputs fall back to a crossover grid.
pub fn esp_compound(rate: f64, px: &Pmf, class: &CompoundClass) -> Result<f64> {
    class.check_px(px)?;
    match class {
        CompoundClass::Explicit(chs) => {
            let mut best = f64::INFINITY;
            for ch in chs {
                best = best.min(esp(rate, px, ch)?);
            }
            Ok(best)
        }
        CompoundClass::BscInterval { rho_max, .. } => {
            if px.is_uniform(1e-12) {
                esp(rate, px, &Channel::bsc(*rho_max).expect("validated"))
            } else {
                let mut best = f64::INFINITY;
                for ch in class.grid_members(BSC_GRID_POINTS) {
                    best = best.min(esp(rate, px, &ch)?);
                }
                Ok(best)
            }
        }
    }
}

/// One-sided slopes (left, right) of E_sp(., p_X, class) at the given rate,
/// by one-sided differences. They differ at kinks of a compound minimum.
pub fn esp_slopes(rate: f64, px: &Pmf, class: &CompoundClass) -> Result<(f64, f64)> {
    let h = SLOPE_STEP;
    let mid = esp_compound(rate, px, class)?;
    let left = (mid - esp_compound(rate - h, px, class)?) / h;
    let right = (esp_compound(rate + h, px, class)?) .sub_from(mid, h);
    Ok((left, right))
}

trait SubFrom {
    fn sub_from(self, mid: f64, h: f64) -> f64;
}
impl SubFrom for f64 {
    fn sub_from(self, mid: f64, h: f64) -> f64 {
        (self - mid) / h
    }
}

/// Slope of the compound sphere-packing curve at an interior rate.
///
/// BSC intervals under a uniform input use the closed-form slope of the
/// noisiest channel; everything else uses central differences of the dual,
/// falling back to one-sided differences next to the endpoints.
pub fn esp_derivative(rate: f64, px: &Pmf, class: &CompoundClass) -> Result<f64> {
    class.check_px(px)?;
    let cr = characteristic_rates(px, class)?;
    if rate <= cr.r_inf || rate >= cr.i_min {
        return Err(Error::InvalidInput(format!(
            "rate {rate} outside differentiable range ({}, {})",
            cr.r_inf, cr.i_min
        )));
    }
    if let CompoundClass::BscInterval { rho_max, .. } = class {
        if px.is_uniform(1e-12) {
            return crate::bsc::esp_prime_bsc(rate, *rho_max);
        }
    }
    let h = SLOPE_STEP.min(0.25 * (rate - cr.r_inf)).min(0.25 * (cr.i_min - rate));
    let lo = esp_compound(rate - h, px, class)?;
    let hi = esp_compound(rate + h, px, class)?;
    Ok((hi - lo) / (2.0 * h))
}

/// Characteristic rates of a compound curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicRates {
    /// Infimum of rates at which the curve is finite.
    pub r_inf: f64,
    /// Worst-case mutual information: the curve vanishes at and above it.
    pub i_min: f64,
    /// Rate at which the curve slope equals -1 (clamped to the ends when the
    /// slope never crosses -1).
    pub r_cr: f64,
}

/// Compute R_inf, I(p_X, class), and the critical rate.
pub fn characteristic_rates(px: &Pmf, class: &CompoundClass) -> Result<CharacteristicRates> {
    class.check_px(px)?;
    let (r_inf, i_min) = match class {
        CompoundClass::Explicit(chs) => {
            let mut r_inf = f64::INFINITY;
            let mut i_min = f64::INFINITY;
            for ch in chs {
                r_inf = r_inf.min(dual::min_mutual_information(px, ch));
                i_min = i_min.min(mutual_information(px, ch)?);
            }
            (r_inf, i_min)
        }
        CompoundClass::BscInterval { rho_max, .. } => {
            let members = if px.is_uniform(1e-12) {
                vec![Channel::bsc(*rho_max).expect("validated")]
            } else {
                class.grid_members(BSC_GRID_POINTS)
            };
            let mut i_min = f64::INFINITY;
            for ch in &members {
                i_min = i_min.min(mutual_information(px, ch)?);
            }
            (0.0, i_min)
        }
    };
    if i_min - r_inf < 1e-9 {
        return Ok(CharacteristicRates {
            r_inf,
            i_min,
            r_cr: i_min,
        });
    }
    let eps = 1e-7 * (i_min - r_inf);
    let slope_plus_one = |r: f64, me: &mut dyn FnMut(f64) -> f64| -> f64 {
        let h = SLOPE_STEP.min(0.25 * (r - r_inf)).min(0.25 * (i_min - r));
        (me(r + h) - me(r - h)) / (2.0 * h) + 1.0
    };
    let mut e = |r: f64| esp_compound(r, px, class).unwrap_or(f64::INFINITY);
    let (lo, hi) = (r_inf + eps, i_min - eps);
    let f_lo = slope_plus_one(lo, &mut e);
    let f_hi = slope_plus_one(hi, &mut e);
    let r_cr = if f_lo >= 0.0 {
        lo
    } else if f_hi <= 0.0 {
        hi
    } else {
        let (mut a, mut b) = (lo, hi);
        while b - a > 1e-10 {
            let m = 0.5 * (a + b);
            if slope_plus_one(m, &mut e) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };
    Ok(CharacteristicRates { r_inf, i_min, r_cr })
}

// ---------------------------------------------------------------------------
// Conjugate rates
// ---------------------------------------------------------------------------

/// The rate whose sphere-packing slope is the reciprocal of the slope at
/// `rate`, if it exists. The consumer of a missing conjugate uses
/// max{R, R_conj} = R.
pub fn conjugate_rate(rate: f64, px: &Pmf, class: &CompoundClass) -> Result<Option<f64>> {
    let cr = characteristic_rates(px, class)?;
    conjugate_rate_with(rate, px, class, &cr)
}

fn conjugate_rate_with(
    rate: f64,
    px: &Pmf,
    class: &CompoundClass,
    cr: &CharacteristicRates,
) -> Result<Option<f64>> {
    if rate <= cr.r_inf || rate >= cr.i_min {
        return Err(Error::InvalidInput(format!(
            "rate {rate} outside ({}, {})",
            cr.r_inf, cr.i_min
        )));
    }
    let s1 = esp_derivative(rate, px, class)?;
    if (s1 + 1.0).abs() <= 1e-9 {
        return Ok(Some(cr.r_cr));
    }
    let target = 1.0 / s1;
    let span = cr.i_min - cr.r_inf;
    let eps = 1e-9 * span;
    let slope_at = |r: f64| esp_derivative(r, px, class).unwrap_or(f64::NEG_INFINITY);
    if s1 < -1.0 {
        // conjugate lies above the critical rate, where slopes are in (-1, 0)
        let (mut a, mut b) = (cr.r_cr, cr.i_min - eps);
        if slope_at(b) < target {
            return Ok(None);
        }
        while b - a > 1e-11 {
            let m = 0.5 * (a + b);
            if slope_at(m) < target {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(Some(0.5 * (a + b)))
    } else {
        // conjugate lies below the critical rate; may not exist when the
        // curve is not steep enough near R_inf
        let (mut a, mut b) = (cr.r_inf + eps, cr.r_cr);
        if slope_at(a) > target {
            return Ok(None);
        }
        while b - a > 1e-11 {
            let m = 0.5 * (a + b);
            if slope_at(m) < target {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(Some(0.5 * (a + b)))
    }
}

/// The unique conjugate pair (R_1, R_2) with R_2 - R_1 = |gap| and
/// reciprocal slopes, R_1 <= R_cr <= R_2.
pub fn conjugate_pair_from_gap(gap: f64, px: &Pmf, class: &CompoundClass) -> Result<(f64, f64)> {
    let cr = characteristic_rates(px, class)?;
    let d = gap.abs();
    if d <= 1e-12 {
        return Ok((cr.r_cr, cr.r_cr));
    }
    let span = cr.i_min - cr.r_inf;
    let eps = 1e-7 * span;
    let phi = |r1: f64| -> Result<f64> {
        match conjugate_rate_with(r1, px, class, &cr)? {
            Some(r2) => Ok(r2 - r1 - d),
            None => Ok(f64::NEG_INFINITY),
        }
    };
    // phi decreases in R_1: phi(R_cr) = -d < 0; expand toward R_inf
    let mut lo = cr.r_cr;
    let mut step = 0.25 * (cr.r_cr - cr.r_inf);
    let mut found = false;
    while step > 1e-12 {
        let cand = (lo - step).max(cr.r_inf + eps);
        if phi(cand)? >= 0.0 {
            lo = cand;
            found = true;
            break;
        }
        if cand <= cr.r_inf + eps {
            break;
        }
        step *= 2.0;
        lo = cand;
    }
    if !found {
        // check the extreme left once more
        let cand = cr.r_inf + eps;
        if phi(cand)? >= 0.0 {
            lo = cand;
        } else {
            return Err(Error::UnattainableGap(gap));
        }
    }
    let (mut a, mut b) = (lo, cr.r_cr);
    while b - a > 1e-10 {
        let m = 0.5 * (a + b);
        if phi(m)? >= 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let r1 = 0.5 * (a + b);
    Ok((r1, r1 + d))
}

// ---------------------------------------------------------------------------
// Modified random-coding exponent
// ---------------------------------------------------------------------------

/// Scan-minimize E(R') + penalty(R') over R' in [lo, hi]: coarse candidates
/// (a uniform grid joined with the supplied breakpoints) followed by
/// golden-section refinement of every bracketed local minimum.
pub(crate) fn minimize_rate_scan(
    mut objective: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    breaks: &[f64],
) -> f64 {
    if !(hi > lo) {
        return objective(lo.min(hi));
    }
    let mut xs: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / (SCAN_POINTS - 1) as f64)
        .collect();
    xs.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-13);
    let vals: Vec<f64> = xs.iter().map(|&x| objective(x)).collect();
    let mut best = f64::INFINITY;
    for &v in &vals {
        best = best.min(v);
    }
    // refine every interior local minimum and both edges
    let n = xs.len();
    for i in 0..n {
        let here = vals[i];
        if !here.is_finite() {
            continue;
        }
        let left_up = i == 0 || vals[i - 1] >= here;
        let right_up = i == n - 1 || vals[i + 1] >= here;
        if left_up && right_up {
            let a = if i == 0 { xs[0] } else { xs[i - 1] };
            let b = if i == n - 1 { xs[n - 1] } else { xs[i + 1] };
            if b > a {
                let (_, v) = golden_min(&mut objective, a, b, 1e-11 * (hi - lo).max(1.0));
                best = best.min(v);
            }
        }
    }
    best
}

/// Modified random-coding exponent E_{r,F}(R, p_X, p_{Y|X}) through the
/// rate-scan identity min_{R'} [E_sp(R') + F(R' - R)].
pub fn erf(rate: f64, px: &Pmf, ch: &Channel, f: &WeightFn) -> Result<f64> {
    let i = mutual_information(px, ch)?;
    let breaks: Vec<f64> = f.knot_positions().iter().map(|t| rate + t).collect();
    Ok(minimize_rate_scan(
        |rp| esp(rp, px, ch).unwrap_or(f64::INFINITY) + f.eval(rp - rate),
        0.0,
        i,
        &breaks,
    ))
}

/// Worst-case modified random-coding exponent over a compound class,
/// computed against the compound sphere-packing curve (the two minima
/// commute).
pub fn erf_compound(rate: f64, px: &Pmf, class: &CompoundClass, f: &WeightFn) -> Result<f64> {
    let cr = characteristic_rates(px, class)?;
    let breaks: Vec<f64> = f.knot_positions().iter().map(|t| rate + t).collect();
    Ok(minimize_rate_scan(
        |rp| esp_compound(rp, px, class).unwrap_or(f64::INFINITY) + f.eval(rp - rate),
        0.0,
        cr.i_min,
        &breaks,
    ))
}

/// Like [`erf_compound`] but with an arbitrary penalty of the rate excess
/// t = R' - R (used for the erasure-exponent path, whose penalty is the
/// clipped generalized inverse of a weighting function and may be +inf).
pub fn erf_compound_with_penalty(
    rate: f64,
    px: &Pmf,
    class: &CompoundClass,
    penalty: impl Fn(f64) -> f64,
    breaks_t: &[f64],
) -> Result<f64> {
    let cr = characteristic_rates(px, class)?;
    let breaks: Vec<f64> = breaks_t.iter().map(|t| rate + t).collect();
    Ok(minimize_rate_scan(
        |rp| esp_compound(rp, px, class).unwrap_or(f64::INFINITY) + penalty(rp - rate),
        0.0,
        cr.i_min,
        &breaks,
    ))
}

// ---------------------------------------------------------------------------
// The curve-difference weighting function F_R
// ---------------------------------------------------------------------------

/// Build the weighting function F_{R,p_X,class}(t) = E_sp(R) - E_sp(R + t)
/// as a piecewise-linear function on [max(-R, R_inf - R), H(p_X) - R].
/// F(0) = 0 exactly; the identity E_sp(R') + F(R' - R) = E_sp(R) holds on
/// the knot grid.
pub fn f_r_builder(rate: f64, px: &Pmf, class: &CompoundClass, knots: usize) -> Result<WeightFn> {
    let cr = characteristic_rates(px, class)?;
    let hpx = entropy(px);
    if rate >= hpx {
        return Err(Error::InvalidInput(format!(
            "rate {rate} at or above H(p_X) = {hpx}"
        )));
    }
    let t_lo = (-rate).max(cr.r_inf - rate + 1e-9);
    let t_hi = hpx - rate;
    let n = knots.max(3);
    let mut ts: Vec<f64> = (0..n)
        .map(|i| t_lo + (t_hi - t_lo) * i as f64 / (n - 1) as f64)
        .collect();
    // snap the nearest knot to t = 0 so that F(0) = 0 exactly
    if t_lo < 0.0 && t_hi > 0.0 {
        let j = (0..n)
            .min_by(|&a, &b| ts[a].abs().partial_cmp(&ts[b].abs()).unwrap())
            .unwrap();
        ts[j] = 0.0;
    }
    let esp_r = esp_compound(rate, px, class)?;
    if esp_r == 0.0 {
        // R at or above I(p_X, class): the function is identically zero
        return WeightFn::from_knots(ts.clone(), vec![0.0; ts.len()], crate::weighting::WeightKind::Custom);
    }
    let vs: Vec<f64> = ts
        .iter()
        .map(|&t| {
            if t == 0.0 {
                Ok(0.0)
            } else {
                Ok(esp_r - esp_compound(rate + t, px, class)?)
            }
        })
        .collect::<Result<_>>()?;
    WeightFn::from_knots(ts, vs, crate::weighting::WeightKind::Custom)
}

// ---------------------------------------------------------------------------
// Sampled exponent curve
// ---------------------------------------------------------------------------

/// A sampled compound sphere-packing curve with slopes and characteristic
/// rates; consumers interpolate linearly.
#[derive(Debug, Clone)]
pub struct ExponentCurve {
    pub rates: Vec<f64>,
    pub values: Vec<f64>,
    pub slopes: Vec<f64>,
    pub rates_meta: CharacteristicRates,
}

impl ExponentCurve {
    /// Sample the curve on a uniform grid of `n` points over
    /// [0, log2 |Y|], with extra points packed around the critical rate and
    /// the worst-case mutual information.
    pub fn build(px: &Pmf, class: &CompoundClass, n: usize) -> Result<Self> {
        let meta = characteristic_rates(px, class)?;
        let top = (class.output_size() as f64).log2();
        let n = n.max(9);
        let mut rates: Vec<f64> = (0..n).map(|i| top * i as f64 / (n - 1) as f64).collect();
        let w = top / n as f64 * 8.0;
        for k in 0..32 {
            let f = k as f64 / 31.0;
            rates.push((meta.r_cr - w + 2.0 * w * f).clamp(0.0, top));
            rates.push((meta.i_min - w + 2.0 * w * f).clamp(0.0, top));
        }
        rates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        rates.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
        let values: Vec<f64> = rates
            .iter()
            .map(|&r| esp_compound(r, px, class))
            .collect::<Result<_>>()?;
        let m = rates.len();
        let mut slopes = vec![0.0; m];
        for i in 0..m {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(m - 1));
            let (dv, dr) = (values[b] - values[a], rates[b] - rates[a]);
            slopes[i] = if dr > 0.0 && dv.is_finite() {
                dv / dr
            } else {
                f64::NEG_INFINITY
            };
        }
        Ok(Self {
            rates,
            values,
            slopes,
            rates_meta: meta,
        })
    }

    pub fn value_at(&self, rate: f64) -> f64 {
        interp_clamped(&self.rates, &self.values, rate)
    }

    pub fn slope_at(&self, rate: f64) -> f64 {
        interp_clamped(&self.rates, &self.slopes, rate)
    }
}

#[cfg(test)]
mod tests;
