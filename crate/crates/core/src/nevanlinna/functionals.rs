//! Counting, proximity and characteristic functions.

use num_complex::Complex64;

use super::expsum::ExpSum;
use super::mero::{DivisorPoint, MeroFn, Target};
use super::quad::{circle_mean_max, QuadOptions};
use crate::algebra::gcd::gcd;
use crate::algebra::roots::{roots_certified, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Functions whose modulus can be sampled on circles.
pub trait LogAbs {
    fn log_abs_at(&self, z: Complex64) -> f64;
}

impl LogAbs for MeroFn {
    fn log_abs_at(&self, z: Complex64) -> f64 {
        self.log_abs(z)
    }
}

impl LogAbs for ExpSum {
    fn log_abs_at(&self, z: Complex64) -> f64 {
        self.log_abs(z)
    }
}

/// Truncation level for counting functions; `None` is untruncated.
pub type Trunc = Option<u32>;

fn check_circle(points: &[DivisorPoint], r: f64) -> Result<()> {
    for p in points {
        let m = p.center.norm();
        if (m - r).abs() <= p.radius + 1e-9 * r.max(1.0) {
            return Err(Error::CircleCollision { radius: r, modulus: m });
        }
    }
    Ok(())
}

/// `sum_{0<|z|<=r} min(m, k) log(r/|z|) + min(m_0, k) log r` over a divisor.
pub fn counting_from_points(points: &[DivisorPoint], r: f64, trunc: Trunc) -> Result<f64> {
    check_circle(points, r)?;
    let cap = |m: u32| trunc.map_or(m, |k| m.min(k)) as f64;
    let mut s = 0.0;
    for p in points {
        let m = p.center.norm();
        if m <= p.radius && p.radius < 1e-300 || m == 0.0 {
            s += cap(p.mult) * r.ln();
        } else if m <= r {
            s += cap(p.mult) * (r / m).ln();
        }
    }
    Ok(s)
}

pub fn counting_n(f: &MeroFn, target: Target, r: f64, trunc: Trunc) -> Result<f64> {
    counting_from_points(&f.divisor(target)?, r, trunc)
}

fn opts() -> QuadOptions {
    QuadOptions::default()
}

/// `m_f(inf, r)`: circle mean of `log+ |f|`.
pub fn proximity_m(f: &dyn LogAbs, r: f64) -> Result<f64> {
    let phi = |t: f64| f.log_abs_at(Complex64::from_polar(r, t));
    let zero = |_t: f64| 0.0;
    circle_mean_max(&[&phi, &zero], opts())
}

/// `T_f(r) = m_f(inf, r) + N_f(inf, r)`.
pub fn characteristic_t(f: &MeroFn, r: f64) -> Result<f64> {
    let poles = f.divisor(Target::Poles)?;
    check_circle(&poles, r)?;
    check_circle(&f.divisor(Target::Zeros)?, r)?;
    Ok(proximity_m(f, r)? + counting_from_points(&poles, r, None)?)
}

/// Circle mean of `log |f|`.
pub fn circle_mean_log(f: &dyn LogAbs, r: f64) -> Result<f64> {
    let phi = |t: f64| f.log_abs_at(Complex64::from_polar(r, t));
    circle_mean_max(&[&phi], opts())
}

/// Cartan characteristic: circle mean of `log max_k |f_k|`.
pub fn cartan_t(fs: &[&dyn LogAbs], r: f64) -> Result<f64> {
    let phis: Vec<Box<dyn Fn(f64) -> f64 + '_>> =
        fs.iter().map(|f| Box::new(move |t: f64| f.log_abs_at(Complex64::from_polar(r, t))) as Box<dyn Fn(f64) -> f64>).collect();
    let refs: Vec<&dyn Fn(f64) -> f64> = phis.iter().map(|b| b.as_ref()).collect();
    circle_mean_max(&refs, opts())
}

/// Checks that entire components in the factored class have no common zero.
pub fn validate_reduced(fs: &[MeroFn]) -> Result<()> {
    let mut g: Option<crate::algebra::poly::SparsePoly> = None;
    for f in fs {
        if f.is_zero() {
            continue;
        }
        let p = f.polynomial_part().ok_or_else(|| Error::InvalidInput("components must be entire".into()))?;
        g = Some(match g {
            None => p,
            Some(h) => gcd(&h, &p),
        });
    }
    match g {
        None => Err(Error::InvalidInput("all components vanish identically".into())),
        Some(h) if h.degree() > 0 => Err(Error::InvalidInput(format!("components share the zeros of {}", h.to_string_with(&["z"])))),
        _ => Ok(()),
    }
}

/// Cartan characteristic of a curve in the factored class, with the reduced-representation check.
pub fn cartan_t_mero(fs: &[MeroFn], r: f64) -> Result<f64> {
    validate_reduced(fs)?;
    let refs: Vec<&dyn LogAbs> = fs.iter().filter(|f| !f.is_zero()).map(|f| f as &dyn LogAbs).collect();
    cartan_t(&refs, r)
}

/// `N_gcd(f, g, r)` with exact matching through shared factor polynomials.
pub fn gcd_counting(f: &MeroFn, g: &MeroFn, r: f64) -> Result<f64> {
    let mut pts = Vec::new();
    for (p, a) in f.factors().iter().filter(|(_, a)| *a > 0) {
        for (q, b) in g.factors().iter().filter(|(_, b)| *b > 0) {
            let h = gcd(p, q);
            if h.degree() == 0 {
                continue;
            }
            let m = (*a).min(*b) as u32;
            for root in roots_certified(&h, DEFAULT_TOL)?.roots {
                pts.push(DivisorPoint { center: root.center, radius: root.radius, mult: m * root.multiplicity });
            }
        }
    }
    counting_from_points(&pts, r, None)
}

/// Pairs zeros whose enclosures overlap and keeps the smaller multiplicity.
pub fn match_points(zf: &[DivisorPoint], zg: &[DivisorPoint]) -> Result<Vec<DivisorPoint>> {
    let mut out = Vec::new();
    for a in zf {
        let hits: Vec<&DivisorPoint> = zg
            .iter()
            .filter(|b| (a.center - b.center).norm() <= a.radius + b.radius + 1e-12 * (1.0 + a.center.norm()))
            .collect();
        match hits.len() {
            0 => {}
            1 => out.push(DivisorPoint {
                center: a.center,
                radius: a.radius.max(hits[0].radius),
                mult: a.mult.min(hits[0].mult),
            }),
            _ => return Err(Error::ZeroFinder(format!("ambiguous overlap near {}; tighten the tolerance", a.center))),
        }
    }
    Ok(out)
}

/// `N_gcd` from numerically located zero sets.
pub fn gcd_counting_points(zf: &[DivisorPoint], zg: &[DivisorPoint], r: f64) -> Result<f64> {
    counting_from_points(&match_points(zf, zg)?, r, None)
}

/// Jensen's formula: `N_f(0, r) = mean log|f| - log|f(0)|` for entire `f` with `f(0) != 0`.
pub fn jensen_counting(f: &dyn LogAbs, r: f64) -> Result<f64> {
    let at0 = f.log_abs_at(Complex64::new(0.0, 0.0));
    if !at0.is_finite() {
        return Err(Error::InvalidInput("Jensen's formula needs f(0) != 0".into()));
    }
    Ok(circle_mean_log(f, r)? - at0)
}

/// Log-spaced radii kept away from known divisor moduli.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: Vec<f64>,
    pub quadrature_order: usize,
}

impl RadiusGrid {
    pub fn log_spaced(r_min: f64, r_max: f64, count: usize) -> Result<RadiusGrid> {
        if !(r_min > 0.0 && r_max > r_min && count >= 2) {
            return Err(Error::InvalidInput(format!("bad grid {r_min}..{r_max} x {count}")));
        }
        let (a, b) = (r_min.ln(), r_max.ln());
        let points = (0..count).map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp()).collect();
        Ok(RadiusGrid { r_min, r_max, points, quadrature_order: 15 })
    }

    /// Nudges any radius within `1e-9` (relative) of a divisor modulus outward by `1e-6` relative.
    pub fn avoid(&mut self, moduli: &[f64]) {
        for r in &mut self.points {
            for _ in 0..100 {
                if moduli.iter().any(|m| (m - *r).abs() <= 1e-9 * r.max(1.0)) {
                    *r *= 1.0 + 1e-6;
                } else {
                    break;
                }
            }
        }
        self.r_min = self.points[0];
        self.r_max = *self.points.last().unwrap();
    }

    /// Geometric midpoint, the default start of gated rows.
    pub fn r_pass(&self) -> f64 {
        (self.r_min * self.r_max).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gauss::GaussRat;
    use std::f64::consts::{E, PI};

    #[test]
    fn counting_cubes() {
        let f = MeroFn::z().powi(3).unwrap();
        assert!((counting_n(&f, Target::Zeros, E, None).unwrap() - 3.0).abs() < 1e-14);
        assert!((counting_n(&f, Target::Zeros, E, Some(1)).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn truncated_count_two_points() {
        let f = MeroFn::poly_int(&[-1, 1]).powi(2).unwrap().mul(&MeroFn::poly_int(&[2, 1]));
        let n = counting_n(&f, Target::Zeros, 4.0, Some(1)).unwrap();
        assert!((n - (4f64.ln() + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn proximity_examples() {
        let f = MeroFn::z().powi(3).unwrap();
        assert!((proximity_m(&f, E).unwrap() - 3.0).abs() < 1e-10);
        let e = MeroFn::exp_linear(GaussRat::one());
        assert!((proximity_m(&e, 7.0).unwrap() - 7.0 / PI).abs() < 1e-10);
        let inv = MeroFn::z().inv().unwrap();
        assert!(proximity_m(&inv, E).unwrap().abs() < 1e-12);
    }

    #[test]
    fn cartan_of_veronese() {
        let fs = [MeroFn::one(), MeroFn::z(), MeroFn::z().powi(2).unwrap()];
        let t = cartan_t_mero(&fs, 50.0).unwrap();
        assert!((t - 2.0 * 50f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn common_zero_rejected() {
        let fs = [MeroFn::z(), MeroFn::z().powi(2).unwrap()];
        assert!(cartan_t_mero(&fs, 2.0).is_err());
    }

    #[test]
    fn gcd_counting_examples() {
        let z = MeroFn::z();
        let zm1 = MeroFn::poly_int(&[-1, 1]);
        let f = z.powi(2).unwrap().mul(&zm1);
        let g = z.mul(&zm1.powi(3).unwrap());
        let r = 3.0;
        let n = gcd_counting(&f, &g, r).unwrap();
        assert!((n - (r.ln() + r.ln())).abs() < 1e-12);
        assert_eq!(n, gcd_counting(&g, &f, r).unwrap());
        let z2 = z.powi(2).unwrap();
        assert!((gcd_counting(&z2, &z2, r).unwrap() - 2.0 * r.ln()).abs() < 1e-12);
        assert_eq!(gcd_counting(&MeroFn::poly_int(&[1, 1]), &zm1, r).unwrap(), 0.0);
    }

    #[test]
    fn grid_avoids_divisor() {
        let mut g = RadiusGrid::log_spaced(1.0, 4.0, 3).unwrap();
        g.avoid(&[2.0]);
        assert!((g.points[1] - 2.0).abs() > 1e-7);
        assert!(counting_n(&MeroFn::poly_int(&[-2, 1]), Target::Zeros, 2.0, None).is_err());
    }

    #[test]
    fn jensen_matches_counting() {
        let f = MeroFn::poly_int(&[-1, 1]).powi(2).unwrap().mul(&MeroFn::poly_int(&[3, 0, 1]));
        let r = 5.0;
        let j = jensen_counting(&f, r).unwrap();
        let n = counting_n(&f, Target::Zeros, r, None).unwrap();
        assert!((j - n).abs() < 1e-9);
    }
}
