//! Lagrangian dual machinery for the sphere-packing exponent at fixed input
//! composition.
//!
//! For a fixed input pmf p_X and channel W, the constrained problem
//! min { D(q || W | p_X) : I(p_X, q) <= R } is solved through its dual
//! sup_{rho >= 0} [ E_0(rho) - rho R ], where
//! E_0(rho) = min_q [ D(q || W | p_X) + rho I(p_X, q) ].
//! Writing I as a minimum over output pmfs r of D(q || r | p_X) makes the
//! inner problem jointly convex in (q, r) with closed-form blocks, so E_0 is
//! computed by exact alternating minimization; the outer concave 1-D problem
//! is handled by golden-section search with automatic upper-bound doubling.

use crate::numeric::golden_max;
use crate::prob::{mutual_information, Channel, Pmf};

/// Convergence tolerance for the inner alternating minimization (relative
/// objective change per sweep).
const INNER_TOL: f64 = 1e-15;
const INNER_MAX_ITERS: usize = 200_000;

/// Golden-section bracket width on rho.
const RHO_TOL: f64 = 1e-10;

/// Initial and maximal upper bounds of the rho search interval.
const RHO_HI_INIT: f64 = 64.0;
const RHO_HI_MAX: f64 = 16_777_216.0;

/// Inner solver state reused across nearby rho evaluations.
pub(crate) struct E0Solver<'a> {
    px: &'a Pmf,
    ch: &'a Channel,
    /// Warm-started output pmf.
    r: Vec<f64>,
}

impl<'a> E0Solver<'a> {
    pub fn new(px: &'a Pmf, ch: &'a Channel) -> Self {
        let y = ch.output_size();
        Self {
            px,
            ch,
            r: vec![1.0 / y as f64; y],
        }
    }

    /// E_0(rho) = min_q [D(q || W | p_X) + rho I(p_X, q)] in bits.
    pub fn e0(&mut self, rho: f64) -> f64 {
        self.e0_with_minimizer(rho).0
    }

    /// Same as [`E0Solver::e0`] but also returns the minimizing conditional
    /// pmf.
    pub fn e0_with_minimizer(&mut self, rho: f64) -> (f64, Vec<Vec<f64>>) {
        let (nx, ny) = (self.ch.input_size(), self.ch.output_size());
        let s = 1.0 / (1.0 + rho);
        let t = 1.0 - s;
        let mut ws = vec![0.0f64; nx * ny];
        for x in 0..nx {
            for y in 0..ny {
                let w = self.ch.prob(x, y);
                ws[x * ny + y] = if w > 0.0 { w.powf(s) } else { 0.0 };
            }
        }
        // keep the warm start strictly positive so no reachable output is
        // starved by a stale support
        let floor = 1e-12;
        let mut rsum = 0.0;
        for v in self.r.iter_mut() {
            *v = v.max(floor);
            rsum += *v;
        }
        for v in self.r.iter_mut() {
            *v /= rsum;
        }

        let mut q = vec![0.0f64; nx * ny];
        let mut val_old = f64::INFINITY;
        let mut val = f64::INFINITY;
        let mut rpow = vec![0.0f64; ny];
        for _ in 0..INNER_MAX_ITERS {
            for y in 0..ny {
                rpow[y] = self.r[y].powf(t);
            }
            val = 0.0;
            for x in 0..nx {
                let px = self.px.get(x);
                let mut z = 0.0;
                for y in 0..ny {
                    let u = ws[x * ny + y] * rpow[y];
                    q[x * ny + y] = u;
                    z += u;
                }
                if px > 0.0 {
                    if z <= 0.0 {
                        return (f64::INFINITY, vec![vec![0.0; ny]; nx]);
                    }
                    val -= (1.0 + rho) * px * z.log2();
                }
                if z > 0.0 {
                    for y in 0..ny {
                        q[x * ny + y] /= z;
                    }
                }
            }
            for y in 0..ny {
                let mut r = 0.0;
                for x in 0..nx {
                    r += self.px.get(x) * q[x * ny + y];
                }
                self.r[y] = r;
            }
            if (val_old - val).abs() <= INNER_TOL * (1.0 + val.abs()) {
                break;
            }
            val_old = val;
        }
        let q = (0..nx)
            .map(|x| q[x * ny..(x + 1) * ny].to_vec())
            .collect();
        (val.max(0.0), q)
    }
}

/// Outcome of the dual solve: optimal value, maximizing rho, and whether the
/// maximizer was pinned at the expanded search boundary (value then reads as
/// effectively infinite).
pub(crate) struct DualSolution {
    pub value: f64,
    pub rho: f64,
    pub boundary: bool,
}

/// sup_{rho >= 0} [E_0(rho) - rho R] by golden section with doubling.
pub(crate) fn esp_dual(rate: f64, px: &Pmf, ch: &Channel) -> DualSolution {
    let mut solver = E0Solver::new(px, ch);
    let mut hi = RHO_HI_INIT;
    loop {
        let (rho, value) = golden_max(|rho| solver.e0(rho) - rho * rate, 0.0, hi, RHO_TOL.min(hi * 1e-12));
        if rho < 0.99 * hi {
            return DualSolution {
                value: value.max(0.0),
                rho,
                boundary: false,
            };
        }
        if hi >= RHO_HI_MAX {
            return DualSolution {
                value: value.max(0.0),
                rho,
                boundary: true,
            };
        }
        hi *= 2.0;
    }
}

/// Infimum of I(p_X, q) over conditional pmfs q absolutely continuous with
/// respect to the rows of `ch` on the support of `px`. This is the infimum of
/// rates at which the sphere-packing exponent is finite.
pub(crate) fn min_mutual_information(px: &Pmf, ch: &Channel) -> f64 {
    let (nx, ny) = (ch.input_size(), ch.output_size());
    // all rows strictly positive: product pmfs are feasible, infimum is 0
    let has_zero = (0..nx)
        .filter(|&x| px.get(x) > 0.0)
        .any(|x| (0..ny).any(|y| ch.prob(x, y) == 0.0));
    if !has_zero {
        return 0.0;
    }
    let mut r = vec![1.0 / ny as f64; ny];
    let mut q = vec![0.0f64; nx * ny];
    let mut val_old = f64::INFINITY;
    let mut val = 0.0;
    for _ in 0..INNER_MAX_ITERS {
        val = 0.0;
        for x in 0..nx {
            let pxw = px.get(x);
            let mut z = 0.0;
            for y in 0..ny {
                let u = if ch.prob(x, y) > 0.0 { r[y] } else { 0.0 };
                q[x * ny + y] = u;
                z += u;
            }
            if z > 0.0 {
                for y in 0..ny {
                    q[x * ny + y] /= z;
                }
            }
            if pxw > 0.0 {
                val -= pxw * z.log2();
            }
        }
        for (y, ry) in r.iter_mut().enumerate() {
            let mut acc = 0.0;
            for x in 0..nx {
                acc += px.get(x) * q[x * ny + y];
            }
            *ry = acc;
        }
        if (val_old - val).abs() <= INNER_TOL * (1.0 + val.abs()) {
            break;
        }
        val_old = val;
    }
    val.max(0.0)
}

/// Zero-rate sphere-packing exponent in closed form: the minimizing q has
/// all rows equal to some output pmf r, and the optimal r is proportional to
/// the per-output geometric mean of the channel rows weighted by p_X.
pub(crate) fn esp_zero_rate(px: &Pmf, ch: &Channel) -> f64 {
    let mut sum = 0.0;
    for y in 0..ch.output_size() {
        let mut logg = 0.0;
        let mut dead = false;
        for x in 0..ch.input_size() {
            let p = px.get(x);
            if p == 0.0 {
                continue;
            }
            let w = ch.prob(x, y);
            if w == 0.0 {
                dead = true;
                break;
            }
            logg += p * w.log2();
        }
        if !dead {
            sum += logg.exp2();
        }
    }
    if sum <= 0.0 {
        f64::INFINITY
    } else {
        -sum.log2()
    }
}

/// The full primal minimizer at a given rate: solves the dual and replays the
/// inner minimization at the optimal rho.
pub(crate) fn esp_minimizer(rate: f64, px: &Pmf, ch: &Channel) -> (f64, Vec<Vec<f64>>) {
    let sol = esp_dual(rate, px, ch);
    let mut solver = E0Solver::new(px, ch);
    let (_, q) = solver.e0_with_minimizer(sol.rho);
    let q_mi = {
        let rows: Vec<Pmf> = q
            .iter()
            .map(|r| Pmf::new(r.clone()).expect("minimizer rows are pmfs"))
            .collect();
        let qch = Channel::new(rows).expect("minimizer is a channel");
        mutual_information(px, &qch).expect("dimensions agree")
    };
    debug_assert!(
        sol.boundary || q_mi <= rate + 1e-6,
        "primal minimizer infeasible: I = {q_mi} > R = {rate}"
    );
    (sol.value, q)
}
