//! Zeros of analytic functions in a disk by the argument principle on boxes.

use num_complex::Complex64;

use super::mero::DivisorPoint;
use crate::error::{Error, Result};

/// Value and derivative of an analytic function, both multiplied by the same
/// positive scale (so zeros, arguments and Newton steps are unchanged).
pub trait ScaledAnalytic {
    fn eval_scaled(&self, z: Complex64) -> (Complex64, Complex64);
}

impl<F: Fn(Complex64) -> (Complex64, Complex64)> ScaledAnalytic for F {
    fn eval_scaled(&self, z: Complex64) -> (Complex64, Complex64) {
        self(z)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ZeroOptions {
    /// Side of the initial boxes.
    pub box_size: f64,
    /// Boxes smaller than this with winding number above one are reported as clusters.
    pub min_box: f64,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        ZeroOptions { box_size: 1.0, min_box: 1e-7 }
    }
}

struct Finder<'a> {
    f: &'a dyn ScaledAnalytic,
    min_box: f64,
    found: Vec<DivisorPoint>,
}

const SPLIT: f64 = 0.5 + 0.03 * 0.236_067_977_499_789_7;

impl<'a> Finder<'a> {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        let v = self.f.eval_scaled(z).0;
        if !v.is_finite() {
            return Err(Error::ZeroFinder(format!("non-finite value at {z}")));
        }
        if v.norm() == 0.0 {
            return Err(Error::ZeroFinder(format!("zero exactly on a box edge at {z}")));
        }
        Ok(v)
    }

    fn edge(&self, a: Complex64, b: Complex64, fa: Complex64, fb: Complex64, depth: u32) -> Result<f64> {
        let d = (fb / fa).arg();
        if d.abs() < 0.5 && depth >= 3 {
            return Ok(d);
        }
        if depth > 48 {
            return Err(Error::ZeroFinder(format!("argument change unresolved near {a}")));
        }
        let m = 0.5 * (a + b);
        let fm = self.value(m)?;
        Ok(self.edge(a, m, fa, fm, depth + 1)? + self.edge(m, b, fm, fb, depth + 1)?)
    }

    fn winding(&self, lo: Complex64, hi: Complex64) -> Result<i64> {
        let c = [lo, Complex64::new(hi.re, lo.im), hi, Complex64::new(lo.re, hi.im)];
        let v: Vec<Complex64> = c.iter().map(|&z| self.value(z)).collect::<Result<_>>()?;
        let mut total = 0.0;
        for k in 0..4 {
            total += self.edge(c[k], c[(k + 1) % 4], v[k], v[(k + 1) % 4], 0)?;
        }
        let w = total / (2.0 * std::f64::consts::PI);
        if (w - w.round()).abs() > 0.1 {
            return Err(Error::ZeroFinder(format!("non-integral winding {w}")));
        }
        Ok(w.round() as i64)
    }

    fn newton(&self, mut z: Complex64, mult: f64, lo: Complex64, hi: Complex64) -> Option<(Complex64, f64)> {
        let side = (hi.re - lo.re).max(hi.im - lo.im);
        for _ in 0..100 {
            let (f, df) = self.f.eval_scaled(z);
            if f.norm() == 0.0 {
                return Some((z, 0.0));
            }
            let step = mult * f / df;
            if !step.is_finite() {
                return None;
            }
            z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
            if (z.re < lo.re - side) || (z.re > hi.re + side) || (z.im < lo.im - side) || (z.im > hi.im + side) {
                return None;
            }
        }
        let (f, df) = self.f.eval_scaled(z);
        let rad = 2.0 * mult * (f / df).norm() + 1e-13 * (1.0 + z.norm());
        let inside = z.re >= lo.re && z.re <= hi.re && z.im >= lo.im && z.im <= hi.im;
        inside.then_some((z, rad))
    }

    fn process(&mut self, lo: Complex64, hi: Complex64, k: i64) -> Result<()> {
        if k <= 0 {
            return Ok(());
        }
        let side = (hi.re - lo.re).max(hi.im - lo.im);
        let center = 0.5 * (lo + hi);
        if k == 1 {
            if let Some((z, rad)) = self.newton(center, 1.0, lo, hi) {
                self.found.push(DivisorPoint { center: z, radius: rad, mult: 1 });
                return Ok(());
            }
        }
        if k > 1 {
            // multiple zeros: Newton for multiplicity k, confirmed by the winding of a small square
            if let Some((z, _)) = self.newton(center, k as f64, lo, hi) {
                let rho = 1e-6 * (1.0 + z.norm());
                let (a, b) = (z - Complex64::new(rho, rho), z + Complex64::new(rho, rho));
                let inside = a.re >= lo.re && a.im >= lo.im && b.re <= hi.re && b.im <= hi.im;
                if inside && matches!(self.winding(a, b), Ok(w) if w == k) {
                    self.found.push(DivisorPoint { center: z, radius: rho * std::f64::consts::SQRT_2, mult: k as u32 });
                    return Ok(());
                }
            }
        }
        if side < self.min_box * (1.0 + center.norm()) {
            let (z, rad) = self.newton(center, k as f64, lo, hi).unwrap_or((center, side));
            self.found.push(DivisorPoint { center: z, radius: rad.max(side), mult: k as u32 });
            return Ok(());
        }
        let mx = lo.re + SPLIT * (hi.re - lo.re);
        let my = lo.im + SPLIT * (hi.im - lo.im);
        let boxes = [
            (lo, Complex64::new(mx, my)),
            (Complex64::new(mx, lo.im), Complex64::new(hi.re, my)),
            (Complex64::new(lo.re, my), Complex64::new(mx, hi.im)),
            (Complex64::new(mx, my), hi),
        ];
        let mut acc = 0;
        for (a, b) in boxes {
            let w = self.winding(a, b)?;
            acc += w;
            self.process(a, b, w)?;
        }
        if acc != k {
            return Err(Error::ZeroFinder(format!("winding numbers of sub-boxes sum to {acc}, expected {k}")));
        }
        Ok(())
    }
}

/// All zeros in the closed disk `|z| <= radius`, with multiplicities from winding numbers.
pub fn zeros_in_disk(f: &dyn ScaledAnalytic, radius: f64, opts: ZeroOptions) -> Result<Vec<DivisorPoint>> {
    let h = opts.box_size;
    // irrational offset keeps box edges away from lattice-like zero sets
    let shift = h * 0.381_966_011_250_105 * std::f64::consts::SQRT_2 / 2.0;
    let start = -radius - h + shift;
    let count = ((2.0 * radius + 2.0 * h) / h).ceil() as i64 + 1;
    let mut finder = Finder { f, min_box: opts.min_box, found: Vec::new() };
    for i in 0..count {
        for j in 0..count {
            let lo = Complex64::new(start + i as f64 * h, start + j as f64 * h);
            let hi = lo + Complex64::new(h, h);
            // skip boxes that miss the disk
            let nx = 0.0f64.clamp(lo.re, hi.re);
            let ny = 0.0f64.clamp(lo.im, hi.im);
            if Complex64::new(nx, ny).norm() > radius + 1e-9 {
                continue;
            }
            let w = finder.winding(lo, hi)?;
            finder.process(lo, hi, w)?;
        }
    }
    let mut out: Vec<DivisorPoint> = finder.found.into_iter().filter(|p| p.center.norm() <= radius + p.radius).collect();
    for p in &out {
        if (p.center.norm() - radius).abs() <= p.radius + 1e-9 * radius.max(1.0) {
            return Err(Error::CircleCollision { radius, modulus: p.center.norm() });
        }
    }
    out.sort_by(|a, b| a.center.norm().partial_cmp(&b.center.norm()).unwrap());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_zeros_with_multiplicity() {
        // (z - 1)^2 (z + 2i)
        let f = |z: Complex64| {
            let a = z - 1.0;
            let b = z + Complex64::new(0.0, 2.0);
            (a * a * b, 2.0 * a * b + a * a)
        };
        let zs = zeros_in_disk(&f, 3.0, ZeroOptions::default()).unwrap();
        assert_eq!(zs.len(), 2);
        assert_eq!(zs[0].mult, 2);
        assert!((zs[0].center - 1.0).norm() < 1e-6);
        assert!((zs[1].center - Complex64::new(0.0, -2.0)).norm() < 1e-12);
    }

    #[test]
    fn exponential_lattice() {
        // 1 + e^z vanishes at i pi (2k + 1)
        let f = |z: Complex64| (1.0 + z.exp(), z.exp());
        let zs = zeros_in_disk(&f, 20.0, ZeroOptions::default()).unwrap();
        let expected = (-4..3).map(|k| std::f64::consts::PI * (2 * k + 1) as f64).filter(|y| y.abs() <= 20.0).count();
        assert_eq!(zs.len(), expected);
        for p in zs {
            assert!(p.center.re.abs() < 1e-10);
        }
    }
}
