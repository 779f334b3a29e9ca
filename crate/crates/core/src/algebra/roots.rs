//! Root enclosures for univariate polynomials and linear-form extraction for binary forms.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::gauss::GaussRat;
use super::gcd::gcd;
use super::poly::SparsePoly;
use super::squarefree::squarefree_decompose;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub center: Complex64,
    pub radius: f64,
    pub multiplicity: u32,
    /// Index of the squarefree factor owning this root.
    pub factor: usize,
}

impl RootEnclosure {
    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        (z - self.center).norm() <= self.radius + slack
    }
}

/// All roots of a univariate polynomial, each in a disk holding exactly
/// `multiplicity` roots counted with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicRoots {
    pub defining_poly: SparsePoly,
    pub roots: Vec<RootEnclosure>,
    /// Squarefree factors of the defining polynomial.
    pub factors: Vec<SparsePoly>,
}

impl AlgebraicRoots {
    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn numbers(&self) -> Vec<AlgebraicNumber> {
        self.roots
            .iter()
            .map(|r| AlgebraicNumber { poly: self.factors[r.factor].clone(), center: r.center, radius: r.radius })
            .collect()
    }
}

/// Collapses a polynomial using at most one variable to a one-variable ring.
pub fn to_univariate(f: &SparsePoly) -> Result<SparsePoly> {
    if f.num_vars() == 1 {
        return Ok(f.clone());
    }
    let used = f.vars_used();
    let vs: Vec<usize> = (0..f.num_vars()).filter(|&i| used[i]).collect();
    if vs.len() > 1 {
        return Err(Error::InvalidInput(format!("expected a univariate polynomial, found variables {vs:?}")));
    }
    let v = vs.first().copied().unwrap_or(0);
    Ok(SparsePoly::from_terms(1, f.terms().iter().map(|(e, c)| (vec![e[v]], c.clone()))))
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// Running error bound for Horner evaluation.
fn horner_error(c: &[Complex64], z: Complex64) -> f64 {
    let az = z.norm();
    let s: f64 = c.iter().rev().fold(0.0, |acc, a| acc * az + a.norm());
    4.0 * (c.len() as f64) * f64::EPSILON * s
}

/// Aberth iteration plus Weierstrass-correction inclusion disks for a squarefree polynomial.
fn certify_squarefree(coeffs: &[Complex64], tol: f64) -> Result<Vec<(Complex64, f64)>> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    if n == 1 {
        let z = -coeffs[0] / lc;
        return Ok(vec![(z, horner_error(coeffs, z) / lc.norm())]);
    }
    let deriv: Vec<Complex64> = (1..=n).map(|k| coeffs[k] * k as f64).collect();
    // Cauchy bound for the initial circle
    let bound = 1.0 + coeffs[..n].iter().map(|c| (c / lc).norm()).fold(0.0, f64::max);
    let r0 = bound.min(1e6).max(1e-3) * 0.7;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let mut best = f64::INFINITY;
    let mut best_disks = Vec::new();
    for iter in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let p = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&deriv, z[i]);
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-3 || iter % 16 == 15 {
            let disks = inclusion_disks(coeffs, &z);
            let worst = disks.iter().map(|d| d.1).fold(0.0, f64::max);
            if disjoint(&disks) && worst < best {
                best = worst;
                best_disks = disks.clone();
            }
            if disjoint(&disks) && worst <= tol {
                return Ok(disks);
            }
            if max_step == 0.0 || (max_step < 1e-14 * (1.0 + z.iter().map(|w| w.norm()).fold(0.0, f64::max)) && iter > 50) {
                break;
            }
        }
    }
    if !best_disks.is_empty() && best <= tol {
        return Ok(best_disks);
    }
    Err(Error::RootNonConvergence { tol, best_radius: best })
}

fn inclusion_disks(coeffs: &[Complex64], z: &[Complex64]) -> Vec<(Complex64, f64)> {
    let n = z.len();
    let lc = coeffs[n];
    (0..n)
        .map(|i| {
            let mut denom = lc;
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let p = horner(coeffs, z[i]);
            let w = (p.norm() + horner_error(coeffs, z[i])) / denom.norm();
            (z[i], n as f64 * w * (1.0 + 1e-12))
        })
        .collect()
}

fn disjoint(d: &[(Complex64, f64)]) -> bool {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if (d[i].0 - d[j].0).norm() <= d[i].1 + d[j].1 {
                return false;
            }
        }
    }
    true
}

/// Certified roots of a univariate polynomial; multiplicities come from the squarefree decomposition.
pub fn roots_certified(f: &SparsePoly, tol: f64) -> Result<AlgebraicRoots> {
    let f = to_univariate(f)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    }
    let sf = squarefree_decompose(&f);
    let mut roots = Vec::new();
    for (fi, (p, k)) in sf.factors.iter().enumerate() {
        let coeffs = p.dense_coeffs_c64(0);
        // exact shortcut for z | p
        let (shift, rest) = if p.constant_term().is_zero() && p.degree() > 1 {
            (1, p.shift_down(&[1]))
        } else {
            (0, p.clone())
        };
        if shift == 1 {
            roots.push(RootEnclosure { center: Complex64::new(0.0, 0.0), radius: 0.0, multiplicity: *k, factor: fi });
        }
        let coeffs_rest = if shift == 1 { rest.dense_coeffs_c64(0) } else { coeffs };
        for (c, r) in certify_squarefree(&coeffs_rest, tol)? {
            roots.push(RootEnclosure { center: c, radius: r, multiplicity: *k, factor: fi });
        }
    }
    // stable order: real part on a coarse grid, then imaginary part
    let key = |r: &RootEnclosure| ((r.center.re * 1e8).round(), r.center.im);
    roots.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal));
    let factors = sf.factors.into_iter().map(|(p, _)| p).collect();
    Ok(AlgebraicRoots { defining_poly: f, roots, factors })
}

/// Roots of `h(delta, 1)` for a binary form `h(X, Y)`, and the power of `Y` dividing `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForms {
    pub deltas: AlgebraicRoots,
    pub y_multiplicity: u32,
}

pub fn factor_linear_forms(h: &SparsePoly, x_var: usize, y_var: usize, tol: f64) -> Result<LinearForms> {
    if h.is_zero() || !h.is_homogeneous() {
        return Err(Error::InvalidInput("expected a nonzero binary form".into()));
    }
    let used = h.vars_used();
    if (0..h.num_vars()).any(|i| used[i] && i != x_var && i != y_var) {
        return Err(Error::InvalidInput("binary form uses extra variables".into()));
    }
    let y_multiplicity = h.min_degree_in(y_var);
    let dehom = h.specialize(y_var, &GaussRat::one());
    let uni = SparsePoly::from_terms(1, dehom.terms().iter().map(|(e, c)| (vec![e[x_var]], c.clone())));
    let deltas = if uni.degree() == 0 {
        AlgebraicRoots { defining_poly: uni, roots: vec![], factors: vec![] }
    } else {
        roots_certified(&uni, tol)?
    };
    Ok(LinearForms { deltas, y_multiplicity })
}

/// Best rational approximation with denominator at most `10^6` (continued fractions).
fn approx_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    (k1 != 0).then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// An algebraic number given by a squarefree defining polynomial and an isolating disk.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicNumber {
    pub poly: SparsePoly,
    pub center: Complex64,
    pub radius: f64,
}

impl AlgebraicNumber {
    pub fn from_gauss(c: &GaussRat) -> Self {
        AlgebraicNumber {
            poly: SparsePoly::from_terms(1, [(vec![1], GaussRat::one()), (vec![0], -c)]),
            center: c.to_c64(),
            radius: 0.0,
        }
    }

    /// The exact value when it lies in `Q(i)`: read off a linear defining polynomial,
    /// otherwise reconstructed from the center and confirmed by exact evaluation.
    pub fn exact(&self) -> Option<GaussRat> {
        if self.poly.degree() == 1 {
            let p = self.poly.monic();
            return Some(-p.constant_term());
        }
        let c = GaussRat::new(approx_rational(self.center.re)?, approx_rational(self.center.im)?);
        let close = (c.to_c64() - self.center).norm() <= self.radius + 1e-9 * (1.0 + self.center.norm());
        (close && self.poly.eval(&[c.clone()]).is_zero()).then_some(c)
    }

    pub fn is_zero(&self) -> bool {
        self.center.norm() <= self.radius && self.poly.constant_term().is_zero()
    }

    /// Exact equality: the defining polynomials share a root lying in both disks.
    pub fn same_as(&self, o: &AlgebraicNumber) -> bool {
        if (self.center - o.center).norm() > self.radius + o.radius + 1e-9 * (1.0 + self.center.norm()) {
            return false;
        }
        let g = gcd(&self.poly, &o.poly);
        if g.degree() == 0 {
            return false;
        }
        let rs = match roots_certified(&g, DEFAULT_TOL) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let slack = 1e-9 * (1.0 + self.center.norm());
        rs.roots.iter().any(|r| {
            (r.center - self.center).norm() <= self.radius + r.radius + slack
                && (r.center - o.center).norm() <= o.radius + r.radius + slack
        })
    }

    /// `1/beta` as an algebraic number (reversed defining polynomial).
    pub fn inverse(&self) -> Result<AlgebraicNumber> {
        if self.is_zero() {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        let d = self.poly.degree();
        let rev = SparsePoly::from_terms(1, self.poly.terms().iter().map(|(e, c)| (vec![d - e[0]], c.clone()))).monic();
        let target = 1.0 / self.center;
        let rs = roots_certified(&rev, DEFAULT_TOL)?;
        let best = rs
            .roots
            .iter()
            .min_by(|a, b| (a.center - target).norm().partial_cmp(&(b.center - target).norm()).unwrap())
            .ok_or_else(|| Error::InternalContradiction("reversed polynomial has no roots".into()))?;
        Ok(AlgebraicNumber { poly: rev, center: best.center, radius: best.radius })
    }

    pub fn value(&self) -> Complex64 {
        self.center
    }
}
