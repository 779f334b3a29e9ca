//! Circle averages of piecewise-smooth functions by Gauss-Kronrod quadrature.
//!
//! The integrands here are maxima of smooth functions (`log+|f|`, `log max |f_k|`),
//! so the circle is cut at the points where the maximizing index changes and each
//! smooth piece is integrated by adaptive G7/K15.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One G7/K15 panel: (Kronrod estimate, |Kronrod - Gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive bisection on G7/K15 panels.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> (f64, f64) {
        let (k, e) = gk15(f, a, b);
        if e <= tol || depth >= 40 || (b - a) < 1e-15 {
            return (k, e);
        }
        let m = 0.5 * (a + b);
        let (k1, e1) = rec(f, a, m, 0.5 * tol, depth + 1);
        let (k2, e2) = rec(f, m, b, 0.5 * tol, depth + 1);
        (k1 + k2, e1 + e2)
    }
    rec(f, a, b, tol, 0)
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    /// Stop when successive breakpoint resolutions differ by less than this.
    pub tol: f64,
    pub n_start: usize,
    pub n_max: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { tol: 1e-10, n_start: 64, n_max: 1 << 15 }
    }
}

fn argmax(phis: &[&dyn Fn(f64) -> f64], t: f64) -> usize {
    let mut best = 0;
    let mut bv = f64::NEG_INFINITY;
    for (k, p) in phis.iter().enumerate() {
        let v = p(t);
        if v > bv {
            bv = v;
            best = k;
        }
    }
    best
}

fn mean_at_resolution(phis: &[&dyn Fn(f64) -> f64], n: usize, tol: f64) -> f64 {
    let step = 2.0 * PI / n as f64;
    let idx: Vec<usize> = (0..=n).map(|j| argmax(phis, j as f64 * step)).collect();
    // breakpoints where the maximizing index changes
    let mut cuts = vec![0.0];
    for j in 0..n {
        if idx[j] != idx[j + 1] {
            let (mut lo, mut hi) = (j as f64 * step, (j + 1) as f64 * step);
            let left = idx[j];
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if argmax(phis, mid) == left {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-15 {
                    break;
                }
            }
            cuts.push(0.5 * (lo + hi));
        } else if j % 8 == 7 {
            // keep pieces short enough for the panel rule
            cuts.push((j + 1) as f64 * step);
        }
    }
    cuts.push(2.0 * PI);
    cuts.dedup();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let k = argmax(phis, 0.5 * (a + b));
        let f = |t: f64| phis[k](t);
        total += integrate(&f, a, b, tol * (b - a) / (2.0 * PI)).0;
    }
    total / (2.0 * PI)
}

/// `(1/2pi) * integral over [0, 2pi] of max_k phi_k(theta)`.
pub fn circle_mean_max(phis: &[&dyn Fn(f64) -> f64], opts: QuadOptions) -> Result<f64> {
    assert!(!phis.is_empty());
    let mut n = opts.n_start.max(4);
    let mut prev = mean_at_resolution(phis, n, opts.tol);
    let mut change = f64::INFINITY;
    while n < opts.n_max {
        n *= 2;
        let cur = mean_at_resolution(phis, n, opts.tol);
        change = (cur - prev).abs();
        if !cur.is_finite() {
            return Err(Error::QuadratureNonConvergence { estimate: cur, change });
        }
        if change < opts.tol * (1.0 + cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::QuadratureNonConvergence { estimate: prev, change })
}

pub fn circle_mean(phi: &dyn Fn(f64) -> f64, opts: QuadOptions) -> Result<f64> {
    circle_mean_max(&[phi], opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_integrates_polynomials_exactly() {
        // K15 is exact up to degree 22, G7 up to 13
        for deg in 0..=22 {
            let f = |x: f64| x.powi(deg);
            let (k, _) = gk15(&f, 0.0, 1.0);
            assert!((k - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "degree {deg}");
        }
        let (_, e) = gk15(&|x: f64| x.powi(13), -1.0, 2.0);
        assert!(e < 1e-11);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        let (k, e) = gk15(&|_| 1.0, -1.0, 1.0);
        assert!((k - 2.0).abs() < 1e-15 && e < 1e-15);
    }

    #[test]
    fn positive_part_of_cosine() {
        let r = 3.0;
        let phi = |t: f64| r * t.cos();
        let zero = |_t: f64| 0.0;
        let m = circle_mean_max(&[&phi, &zero], QuadOptions::default()).unwrap();
        assert!((m - r / PI).abs() < 1e-12);
    }

    #[test]
    fn smooth_mean() {
        let m = circle_mean(&|t: f64| (t.sin()).powi(2), QuadOptions::default()).unwrap();
        assert!((m - 0.5).abs() < 1e-13);
    }
}
