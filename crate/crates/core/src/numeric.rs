//! Small numerical primitives shared across the crate: safe base-2 logs,
//! golden-section search, and bisection.

/// Sentinel used for +infinity exponents in places where arithmetic on
/// `f64::INFINITY` would be awkward to propagate. Larger than any attainable
/// exponent for alphabets up to 2^58 symbols.
pub const BIG: f64 = 1e18;

/// x * log2(x/y) with the conventions 0*log(0/y) = 0 and x*log(x/0) = +inf.
#[inline]
pub fn xlogx_over(x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if y <= 0.0 {
        f64::INFINITY
    } else {
        x * (x / y).log2()
    }
}

/// x * log2(x) with 0 log 0 = 0.
#[inline]
pub fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Maximize a unimodal (e.g. concave) function on [lo, hi] by golden-section
/// search. Returns (argmax, max). `tol` is the final bracket width.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimize a unimodal function on [lo, hi] by golden-section search.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_max(|t| -f(t), lo, hi, tol);
    (x, -v)
}

/// Find a root of a monotone nondecreasing function on [lo, hi] by bisection:
/// returns x with f(x) ~= 0. Assumes f(lo) <= 0 <= f(hi); clamps otherwise.
pub fn bisect_increasing<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    let (mut a, mut b) = (lo, hi);
    if f(a) > 0.0 {
        return a;
    }
    if f(b) < 0.0 {
        return b;
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        if f(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Linear interpolation of a tabulated nondecreasing grid: given sorted xs
/// and matching ys, evaluate at x with clamping outside the table.
pub fn interp_clamped(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let j = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(j) => return ys[j],
        Err(j) => j,
    };
    let (x0, x1) = (xs[j - 1], xs[j]);
    let (y0, y1) = (ys[j - 1], ys[j]);
    if x1 == x0 {
        y0
    } else {
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_max_quadratic() {
        let (x, v) = golden_max(|t| -(t - 0.3) * (t - 0.3), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn bisect_finds_root() {
        let x = bisect_increasing(|t| t * t * t - 0.2, 0.0, 1.0, 1e-13);
        assert!((x - 0.2f64.powf(1.0 / 3.0)).abs() < 1e-10);
    }

    #[test]
    fn interp_endpoints_clamp() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [1.0, 3.0, 4.0];
        assert_eq!(interp_clamped(&xs, &ys, -1.0), 1.0);
        assert_eq!(interp_clamped(&xs, &ys, 5.0), 4.0);
        assert!((interp_clamped(&xs, &ys, 0.5) - 2.0).abs() < 1e-15);
    }
}
