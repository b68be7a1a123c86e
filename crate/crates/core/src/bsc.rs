//! Closed forms for the binary symmetric channel under uniform input:
//! binary entropy and its inverse, the mu-parameterization mu = 1/rho - 1,
//! the sphere-packing exponent and its slope, conjugate rates, and the
//! universality region for the two-parameter penalty family.
//!
//! Throughout, `rho` is the crossover probability in (0, 1/2] and rates,
//! exponents, and entropies are in bits. The uniform input distribution is
//! optimal for the BSC at all rates and is baked into every formula here.

use crate::{Error, Result};

/// Binary entropy h2(x) in bits.
pub fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

/// Inverse of h2 on [0, 1/2], by bisection to absolute tolerance 1e-14.
pub fn h2_inv(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::InvalidInput(format!("h2_inv argument {y} outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if h2(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Binary KL divergence D(a || b) in bits.
pub fn d2(a: f64, b: f64) -> f64 {
    let mut t = 0.0;
    if a > 0.0 {
        t += a * (a / b).log2();
    }
    if a < 1.0 {
        t += (1.0 - a) * ((1.0 - a) / (1.0 - b)).log2();
    }
    t
}

/// rho_R = h2^{-1}(1 - R): the crossover probability whose capacity is R.
pub fn rho_r(rate: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::InvalidInput(format!("rate {rate} outside [0, 1]")));
    }
    h2_inv(1.0 - rate)
}

/// mu_R = 1/rho_R - 1; increases from 1 to infinity as R goes 0 to 1.
pub fn mu_r(rate: f64) -> Result<f64> {
    Ok(1.0 / rho_r(rate)? - 1.0)
}

/// BSC parameters derived from the crossover probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BscParams {
    pub rho: f64,
    /// mu = 1/rho - 1 >= 1.
    pub mu: f64,
    /// Capacity C(rho) = 1 - h2(rho).
    pub capacity: f64,
}

impl BscParams {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho <= 0.5) {
            return Err(Error::InvalidInput(format!(
                "BSC crossover {rho} outside (0, 1/2]"
            )));
        }
        Ok(Self {
            rho,
            mu: 1.0 / rho - 1.0,
            capacity: 1.0 - h2(rho),
        })
    }
}

/// Sphere-packing exponent E_sp(R, rho) = D(rho_R || rho), zero at and above
/// capacity.
pub fn esp_bsc(rate: f64, rho: f64) -> Result<f64> {
    let p = BscParams::new(rho)?;
    if rate >= p.capacity {
        return Ok(0.0);
    }
    let rr = rho_r(rate)?;
    Ok(d2(rr, rho))
}

/// Slope of the sphere-packing exponent:
/// E_sp'(R, rho) = -log(mu/mu_R) / log(mu_R), for 0 < R < C(rho).
pub fn esp_prime_bsc(rate: f64, rho: f64) -> Result<f64> {
    let p = BscParams::new(rho)?;
    if rate <= 0.0 || rate >= p.capacity {
        return Err(Error::InvalidInput(format!(
            "slope requested at rate {rate} outside (0, C = {})",
            p.capacity
        )));
    }
    let mr = mu_r(rate)?;
    Ok(-((p.mu / mr).log2() / mr.log2()))
}

/// Critical rate: the rate where the slope equals -1, i.e. mu_R = sqrt(mu).
///
/// Derived from the slope formula rather than solving numerically:
/// log(mu/mu_R) = log(mu_R) forces mu_R = sqrt(mu), so
/// R_cr = 1 - h2(1/(1 + sqrt(1/rho - 1))).
pub fn rcr_bsc(rho: f64) -> Result<f64> {
    let p = BscParams::new(rho)?;
    Ok(1.0 - h2(1.0 / (1.0 + p.mu.sqrt())))
}

/// Conjugate rate: mu_{R^conj} = mu/mu_R, so
/// R^conj = 1 - h2(1/(1 + mu/mu_R)). None when mu/mu_R < 1 (R above
/// capacity has no conjugate).
pub fn conjugate_bsc(rate: f64, rho: f64) -> Result<Option<f64>> {
    let p = BscParams::new(rho)?;
    let mr = mu_r(rate)?;
    let mc = p.mu / mr;
    if mc < 1.0 {
        return Ok(None);
    }
    Ok(Some(1.0 - h2(1.0 / (1.0 + mc))))
}

/// Universality region of the penalty family Delta + lambda*|t|+ for a
/// compound BSC interval, evaluated in closed form.
#[derive(Debug, Clone, Copy)]
pub struct UniversalityRegionBsc {
    pub rate: f64,
    /// mu of the cleanest channel (rho_min).
    pub mu_max: f64,
    /// mu of the noisiest channel (rho_max).
    pub mu_min: f64,
    pub mu_r: f64,
    /// Admissible slack interval [delta_lo, delta_hi].
    pub delta_lo: f64,
    pub delta_hi: f64,
    /// True iff some Delta satisfies the interval:
    /// mu_max <= max{mu_R^2, mu_R * mu_min}.
    pub nonempty: bool,
}

/// Evaluate the closed-form universality region for rho in
/// [rho_min, rho_max] at the given rate.
pub fn universality_region_bsc(rate: f64, rho_min: f64, rho_max: f64) -> Result<UniversalityRegionBsc> {
    if !(rho_min > 0.0 && rho_min <= rho_max && rho_max <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "invalid BSC interval [{rho_min}, {rho_max}]"
        )));
    }
    let mu_max = 1.0 / rho_min - 1.0;
    let mu_min = 1.0 / rho_max - 1.0;
    let mr = mu_r(rate)?;
    let delta_lo = (h2(1.0 / (1.0 + mr)) - h2(1.0 / (1.0 + mu_max / mr))).max(0.0);
    let delta_hi = h2(1.0 / (1.0 + mr)) - h2(1.0 / (1.0 + mu_min));
    let nonempty = mu_max <= (mr * mr).max(mr * mu_min) + 1e-12;
    Ok(UniversalityRegionBsc {
        rate,
        mu_max,
        mu_min,
        mu_r: mr,
        delta_lo,
        delta_hi,
        nonempty,
    })
}

impl UniversalityRegionBsc {
    /// Admissible lambda interval for a given slack, or None when
    /// mu_max > mu_R * mu_{R+Delta}.
    pub fn lambda_range(&self, delta: f64) -> Result<Option<(f64, f64)>> {
        let mrd = mu_r(self.rate + delta)?;
        if self.mu_max > self.mu_r * mrd {
            return Ok(None);
        }
        let lo = (self.mu_max / self.mu_r).log2() / self.mu_r.log2();
        let hi = mrd.log2() / (self.mu_max / mrd).log2();
        Ok(Some((lo, hi)))
    }

    /// The lambda that remains feasible down to equality in
    /// mu_max = mu_R * mu_{R+Delta}: lambda = log mu_{R+Delta} / log mu_R >= 1.
    pub fn lambda_opt(&self, delta: f64) -> Result<f64> {
        let mrd = mu_r(self.rate + delta)?;
        Ok(mrd.log2() / self.mu_r.log2())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn h2_endpoints_and_values() {
        assert_eq!(h2(0.5), 1.0);
        assert!(close(h2_inv(1.0).unwrap(), 0.5, 1e-12));
        assert!(close(h2(0.1), 0.4689955935892812, 1e-14));
        assert!(close(h2_inv(0.0).unwrap(), 0.0, 1e-12));
        assert!(h2_inv(1.5).is_err());
    }

    #[test]
    fn h2_inv_round_trip() {
        for i in 0..=100 {
            let y = i as f64 / 100.0;
            let x = h2_inv(y).unwrap();
            assert!(close(h2(x), y, 1e-11), "round trip fails at y={y}");
        }
    }

    #[test]
    fn rho_r_and_mu_r_values() {
        assert!(close(rho_r(0.1).unwrap(), 0.31601934632360773, 1e-10));
        assert!(close(mu_r(0.1).unwrap(), 2.164363231661101, 1e-8));
        // mu_R grows from 1 to infinity
        assert!(close(mu_r(0.0).unwrap(), 1.0, 1e-9));
        let mut prev = 1.0;
        for i in 1..10 {
            let m = mu_r(i as f64 / 10.0).unwrap();
            assert!(m > prev);
            prev = m;
        }
    }

    #[test]
    fn esp_values() {
        // zero-rate exponent -log sqrt(4 rho (1-rho))
        assert!(close(esp_bsc(0.0, 0.1).unwrap(), 0.736965594166206, 1e-12));
        // at capacity the exponent vanishes
        let c = BscParams::new(0.1).unwrap().capacity;
        assert_eq!(esp_bsc(c, 0.1).unwrap(), 0.0);
        assert!(close(esp_bsc(0.1, 0.1).unwrap(), 0.2537607202957108, 1e-10));
    }

    #[test]
    fn slope_matches_finite_differences() {
        let h = 1e-6;
        for &rho in &[0.05, 0.1, 0.2] {
            let c = BscParams::new(rho).unwrap().capacity;
            for i in 1..20 {
                let r = c * i as f64 / 20.0;
                let fd = (esp_bsc(r + h, rho).unwrap() - esp_bsc(r - h, rho).unwrap()) / (2.0 * h);
                let cf = esp_prime_bsc(r, rho).unwrap();
                assert!(close(fd, cf, 1e-6), "rho={rho} R={r}: fd={fd} cf={cf}");
            }
        }
    }

    #[test]
    fn critical_rate() {
        // mu = 9, mu_R = 3, rho_R = 1/4
        assert!(close(rcr_bsc(0.1).unwrap(), 0.18872187554086717, 1e-12));
        let rcr = rcr_bsc(0.1).unwrap();
        assert!(close(esp_prime_bsc(rcr, 0.1).unwrap(), -1.0, 1e-10));
    }

    #[test]
    fn conjugate_rate_values() {
        // self-conjugate at the critical rate
        let rcr = rcr_bsc(0.1).unwrap();
        assert!(close(conjugate_bsc(rcr, 0.1).unwrap().unwrap(), rcr, 1e-9));
        // mu_conj = 9 / mu_R(0.1)
        assert!(close(
            conjugate_bsc(0.1, 0.1).unwrap().unwrap(),
            0.29051587243706123,
            1e-8
        ));
    }

    #[test]
    fn conjugacy_involution_and_slope_product() {
        let rho = 0.1;
        for i in 1..=20 {
            let r = 0.02 + (rcr_bsc(rho).unwrap() - 0.02) * i as f64 / 20.0;
            let rc = conjugate_bsc(r, rho).unwrap().unwrap();
            let back = conjugate_bsc(rc, rho).unwrap().unwrap();
            assert!(close(back, r, 1e-9), "involution fails at R={r}");
            let prod =
                esp_prime_bsc(r, rho).unwrap() * esp_prime_bsc(rc, rho).unwrap();
            assert!(close(prod, 1.0, 1e-9), "slope product {prod} at R={r}");
        }
    }

    #[test]
    fn compound_minimum_at_rho_max() {
        // E_sp(R, W) = E_sp(R, rho_max) over a rho interval
        let (lo, hi) = (0.05, 0.2);
        for i in 0..=10 {
            let r = 0.05 + 0.3 * i as f64 / 10.0;
            let at_max = esp_bsc(r, hi).unwrap();
            for j in 0..=50 {
                let rho = lo + (hi - lo) * j as f64 / 50.0;
                assert!(
                    esp_bsc(r, rho).unwrap() >= at_max - 1e-12,
                    "rho={rho} beats rho_max at R={r}"
                );
            }
        }
    }

    #[test]
    fn min_slope_at_rho_min() {
        // the channel minimizing E_sp'(R, rho) over the interval is the
        // cleanest one, while the compound curve slope uses the noisiest;
        // strict inequality when rho_min < rho_max
        let (lo, hi) = (0.05, 0.1);
        let r = 0.1;
        let slope_min: f64 = (0..=50)
            .map(|j| esp_prime_bsc(r, lo + (hi - lo) * j as f64 / 50.0).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(close(slope_min, esp_prime_bsc(r, lo).unwrap(), 1e-12));
        assert!(slope_min < esp_prime_bsc(r, hi).unwrap() - 1e-6);
    }

    #[test]
    fn universality_region_cases() {
        // singleton interval: delta_lo = |R^conj - R|+
        let r = 0.1;
        let reg = universality_region_bsc(r, 0.1, 0.1).unwrap();
        let rc = conjugate_bsc(r, 0.1).unwrap().unwrap();
        assert!(close(reg.delta_lo, (rc - r).max(0.0), 1e-9));
        assert!(reg.nonempty);

        // mu_max <= mu_R^2 makes the left end zero: pick rho_min large enough
        let reg = universality_region_bsc(0.35, 0.25, 0.3).unwrap();
        assert!(close(reg.delta_lo, 0.0, 1e-12));
        assert!(reg.mu_max <= reg.mu_r * reg.mu_r);

        // equality in mu_max = mu_R mu_{R+Delta}: lambda interval collapses
        // to the single point lambda_opt
        let reg = universality_region_bsc(r, 0.05, 0.1).unwrap();
        // find delta with mu_R * mu_{R+delta} = mu_max by bisection
        let (mut a, mut b) = (0.0, 0.8);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if reg.mu_r * mu_r(r + m).unwrap() < reg.mu_max {
                a = m;
            } else {
                b = m;
            }
        }
        let delta_eq = 0.5 * (a + b);
        let (llo, lhi) = reg.lambda_range(delta_eq).unwrap().unwrap();
        let lopt = reg.lambda_opt(delta_eq).unwrap();
        assert!(close(llo, lhi, 1e-6));
        assert!(close(llo, lopt, 1e-6));
        assert!(lopt >= 1.0);
        // slightly smaller delta: no feasible lambda
        assert!(reg.lambda_range(delta_eq - 1e-3).unwrap().is_none());
        // larger delta: lambda_opt still feasible
        let (llo2, lhi2) = reg.lambda_range(delta_eq + 0.05).unwrap().unwrap();
        let lopt2 = reg.lambda_opt(delta_eq + 0.05).unwrap();
        assert!(llo2 <= lopt2 && lopt2 <= lhi2);
    }
}
