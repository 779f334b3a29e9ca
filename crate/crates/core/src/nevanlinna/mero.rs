//! Meromorphic functions of the form `c * prod p_k(z)^m_k * exp(Q(z))`.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::gauss::GaussRat;
use crate::algebra::gcd::gcd;
use crate::algebra::io::PolyDoc;
use crate::algebra::poly::SparsePoly;
use crate::algebra::roots::{roots_certified, to_univariate, RootEnclosure, DEFAULT_TOL};
use crate::algebra::squarefree::squarefree_decompose;
use crate::error::{Error, Result};

/// A point of a divisor: an enclosure of the location and its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorPoint {
    pub center: Complex64,
    pub radius: f64,
    pub mult: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Zeros,
    Poles,
}

/// Canonical form: monic, squarefree, pairwise coprime factors sorted by polynomial,
/// `z` split off as its own factor, nonzero multiplicities.
#[derive(Clone, Debug)]
pub struct MeroFn {
    scalar: GaussRat,
    factors: Vec<(SparsePoly, i64)>,
    exp_part: SparsePoly,
    roots: OnceLock<std::result::Result<Vec<Vec<RootEnclosure>>, String>>,
}

impl PartialEq for MeroFn {
    fn eq(&self, o: &MeroFn) -> bool {
        self.scalar == o.scalar && self.factors == o.factors && self.exp_part == o.exp_part
    }
}

fn z_poly() -> SparsePoly {
    SparsePoly::var(1, 0)
}

/// Refines a list of squarefree monic polynomials with multiplicities into a coprime basis.
fn coprime_basis(mut fs: Vec<(SparsePoly, i64)>) -> Vec<(SparsePoly, i64)> {
    'outer: loop {
        fs.retain(|(p, m)| *m != 0 && !p.is_constant());
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let g = gcd(&fs[i].0, &fs[j].0);
                if g.is_constant() {
                    continue;
                }
                let (pi, mi) = fs[i].clone();
                let (pj, mj) = fs[j].clone();
                fs.remove(j);
                fs.remove(i);
                fs.push((pi.div_exact(&g).unwrap().monic(), mi));
                fs.push((pj.div_exact(&g).unwrap().monic(), mj));
                fs.push((g, mi + mj));
                continue 'outer;
            }
        }
        break;
    }
    fs.sort();
    fs
}

impl MeroFn {
    fn build(scalar: GaussRat, factors: Vec<(SparsePoly, i64)>, exp_part: SparsePoly) -> MeroFn {
        MeroFn { scalar, factors, exp_part, roots: OnceLock::new() }
    }

    pub fn zero() -> MeroFn {
        MeroFn::build(GaussRat::zero(), vec![], SparsePoly::zero(1))
    }

    pub fn constant(c: GaussRat) -> MeroFn {
        if c.is_zero() {
            return MeroFn::zero();
        }
        MeroFn::build(c, vec![], SparsePoly::zero(1))
    }

    pub fn one() -> MeroFn {
        MeroFn::constant(GaussRat::one())
    }

    /// The identity function `z`.
    pub fn z() -> MeroFn {
        MeroFn::build(GaussRat::one(), vec![(z_poly(), 1)], SparsePoly::zero(1))
    }

    pub fn poly(p: &SparsePoly) -> Result<MeroFn> {
        MeroFn::from_parts(GaussRat::one(), vec![(p.clone(), 1)], SparsePoly::zero(1))
    }

    /// Polynomial from ascending integer coefficients.
    pub fn poly_int(coeffs: &[i64]) -> MeroFn {
        MeroFn::poly(&SparsePoly::univariate_int(coeffs)).expect("univariate")
    }

    pub fn exp(q: &SparsePoly) -> Result<MeroFn> {
        MeroFn::from_parts(GaussRat::one(), vec![], q.clone())
    }

    /// `exp(a z)` for a Gaussian rational `a`.
    pub fn exp_linear(a: GaussRat) -> MeroFn {
        MeroFn::build(GaussRat::one(), vec![], SparsePoly::from_terms(1, [(vec![1], a)]))
    }

    /// Canonicalizes arbitrary factors (any polynomials, any integer exponents).
    pub fn from_parts(scalar: GaussRat, raw: Vec<(SparsePoly, i64)>, exp_part: SparsePoly) -> Result<MeroFn> {
        let exp_part = to_univariate(&exp_part)?;
        if scalar.is_zero() {
            return Ok(MeroFn::zero());
        }
        let mut scalar = scalar;
        let mut fs: Vec<(SparsePoly, i64)> = Vec::new();
        for (p, m) in raw {
            let p = to_univariate(&p)?;
            if p.is_zero() {
                if m > 0 {
                    return Ok(MeroFn::zero());
                }
                return Err(Error::InvalidInput("division by the zero polynomial".into()));
            }
            if m == 0 {
                continue;
            }
            let sf = squarefree_decompose(&p);
            scalar = &scalar * &sf.unit.powi(m).expect("nonzero unit");
            for (q, k) in sf.factors {
                let k = k as i64 * m;
                if q.constant_term().is_zero() && q.degree() > 1 {
                    fs.push((z_poly(), k));
                    fs.push((q.shift_down(&[1]).monic(), k));
                } else {
                    fs.push((q, k));
                }
            }
        }
        Ok(MeroFn::build(scalar, coprime_basis(fs), exp_part))
    }

    pub fn scalar(&self) -> &GaussRat {
        &self.scalar
    }

    pub fn factors(&self) -> &[(SparsePoly, i64)] {
        &self.factors
    }

    pub fn exp_part(&self) -> &SparsePoly {
        &self.exp_part
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Constant as an exact element of Q(i): no factors and no exponential part.
    pub fn as_constant(&self) -> Option<GaussRat> {
        (self.factors.is_empty() && self.exp_part.is_zero()).then(|| self.scalar.clone())
    }

    /// Constant as a function (possibly `c * e^q` with a constant `q`).
    pub fn is_constant_function(&self) -> bool {
        self.factors.is_empty() && self.exp_part.is_constant()
    }

    pub fn is_entire(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m > 0)
    }

    /// The polynomial part `c * prod p^m` when entire.
    pub fn polynomial_part(&self) -> Option<SparsePoly> {
        if !self.is_entire() {
            return None;
        }
        let mut p = SparsePoly::constant(1, self.scalar.clone());
        for (q, m) in &self.factors {
            p = &p * &q.pow(*m as u32);
        }
        Some(p)
    }

    pub fn mul(&self, o: &MeroFn) -> MeroFn {
        if self.is_zero() || o.is_zero() {
            return MeroFn::zero();
        }
        let mut fs = self.factors.clone();
        fs.extend(o.factors.iter().cloned());
        MeroFn::build(&self.scalar * &o.scalar, coprime_basis(fs), &self.exp_part + &o.exp_part)
    }

    pub fn inv(&self) -> Result<MeroFn> {
        if self.is_zero() {
            return Err(Error::InvalidInput("reciprocal of the zero function".into()));
        }
        Ok(MeroFn::build(
            self.scalar.inv().unwrap(),
            self.factors.iter().map(|(p, m)| (p.clone(), -m)).collect(),
            -&self.exp_part,
        ))
    }

    pub fn div(&self, o: &MeroFn) -> Result<MeroFn> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn powi(&self, k: i64) -> Result<MeroFn> {
        if k == 0 {
            return Ok(MeroFn::one());
        }
        if self.is_zero() {
            return if k > 0 { Ok(MeroFn::zero()) } else { Err(Error::InvalidInput("negative power of zero".into())) };
        }
        Ok(MeroFn::build(
            self.scalar.powi(k).unwrap(),
            self.factors.iter().map(|(p, m)| (p.clone(), m * k)).collect(),
            self.exp_part.scale(&GaussRat::from_int(k)),
        ))
    }

    /// Power with a possibly non-integer exponent; only integers are accepted.
    pub fn powf(&self, k: f64) -> Result<MeroFn> {
        if k.fract() != 0.0 || !k.is_finite() {
            return Err(Error::InvalidInput(format!("non-integer power {k}")));
        }
        self.powi(k as i64)
    }

    pub fn scale(&self, c: &GaussRat) -> MeroFn {
        self.mul(&MeroFn::constant(c.clone()))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = self.scalar.to_c64();
        for (p, m) in &self.factors {
            v *= p.eval_univariate_c64(0, z).powi(*m as i32);
        }
        v * self.exp_part.eval_univariate_c64(0, z).exp()
    }

    /// `log |f(z)|`, robust for huge values.
    pub fn log_abs(&self, z: Complex64) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let mut s = self.scalar.to_c64().norm().ln();
        for (p, m) in &self.factors {
            s += *m as f64 * p.eval_univariate_c64(0, z).norm().ln();
        }
        s + self.exp_part.eval_univariate_c64(0, z).re
    }

    /// `f'/f` as an exact rational function.
    pub fn log_derivative(&self) -> RationalFn {
        let mut den = SparsePoly::one(1);
        for (p, _) in &self.factors {
            den = &den * p;
        }
        let mut num = &self.exp_part.partial_derivative(0) * &den;
        for (p, m) in &self.factors {
            let rest = den.div_exact(p).unwrap();
            num = &num + &(&p.partial_derivative(0) * &rest).scale(&GaussRat::from_int(*m));
        }
        RationalFn { num, den }
    }

    pub fn log_derivative_at(&self, z: Complex64) -> Complex64 {
        let mut s = self.exp_part.partial_derivative(0).eval_univariate_c64(0, z);
        for (p, m) in &self.factors {
            s += *m as f64 * p.partial_derivative(0).eval_univariate_c64(0, z) / p.eval_univariate_c64(0, z);
        }
        s
    }

    pub fn derivative_at(&self, z: Complex64) -> Complex64 {
        self.eval(z) * self.log_derivative_at(z)
    }

    fn factor_roots(&self) -> Result<&Vec<Vec<RootEnclosure>>> {
        let r = self.roots.get_or_init(|| {
            self.factors
                .iter()
                .map(|(p, _)| roots_certified(p, DEFAULT_TOL).map(|r| r.roots).map_err(|e| e.to_string()))
                .collect()
        });
        r.as_ref().map_err(|e| Error::ZeroFinder(e.clone()))
    }

    /// Zeros or poles with multiplicities.
    pub fn divisor(&self, target: Target) -> Result<Vec<DivisorPoint>> {
        let roots = self.factor_roots()?;
        let mut out = Vec::new();
        for ((_, m), rs) in self.factors.iter().zip(roots) {
            let keep = match target {
                Target::Zeros => *m > 0,
                Target::Poles => *m < 0,
            };
            if keep {
                for r in rs {
                    out.push(DivisorPoint { center: r.center, radius: r.radius, mult: (m.unsigned_abs() as u32) * r.multiplicity });
                }
            }
        }
        Ok(out)
    }

    /// Multiplicity of the zero (positive) or pole (negative) at the origin.
    pub fn order_at_zero(&self) -> i64 {
        self.factors.iter().find(|(p, _)| *p == z_poly()).map(|(_, m)| *m).unwrap_or(0)
    }

    /// Minimum zero multiplicity across all zeros; `None` for functions without zeros.
    pub fn min_zero_multiplicity(&self) -> Option<u32> {
        self.factors.iter().filter(|(_, m)| *m > 0).map(|(_, m)| *m as u32).min()
    }

    /// Degree of the polynomial part counted with sign (zeros minus poles).
    pub fn degree_balance(&self) -> i64 {
        self.factors.iter().map(|(p, m)| p.degree() as i64 * m).sum()
    }

    pub fn to_doc(&self) -> MeroDoc {
        MeroDoc {
            scalar: ScalarDoc { re: self.scalar.re_string(), im: self.scalar.im_string() },
            factors: self.factors.iter().map(|(p, m)| FactorDoc { poly: PolyDoc::from_poly(p), mult: *m }).collect(),
            exp: Some(PolyDoc::from_poly(&self.exp_part)),
        }
    }

    pub fn from_doc(d: &MeroDoc) -> Result<MeroFn> {
        let scalar = GaussRat::from_strings(&d.scalar.re, &d.scalar.im)?;
        let factors = d.factors.iter().map(|f| Ok((f.poly.to_poly()?, f.mult))).collect::<Result<Vec<_>>>()?;
        let exp = match &d.exp {
            Some(e) => e.to_poly()?,
            None => SparsePoly::zero(1),
        };
        MeroFn::from_parts(scalar, factors, exp)
    }

    pub fn describe(&self) -> String {
        let mut parts = vec![self.scalar.to_string()];
        for (p, m) in &self.factors {
            let s = p.to_string_with(&["z"]);
            parts.push(if *m == 1 { format!("({s})") } else { format!("({s})^{m}") });
        }
        if !self.exp_part.is_zero() {
            parts.push(format!("exp({})", self.exp_part.to_string_with(&["z"])));
        }
        parts.join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarDoc {
    pub re: String,
    #[serde(default = "zero_str")]
    pub im: String,
}

fn zero_str() -> String {
    "0".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub poly: PolyDoc,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeroDoc {
    pub scalar: ScalarDoc,
    #[serde(default)]
    pub factors: Vec<FactorDoc>,
    #[serde(default)]
    pub exp: Option<PolyDoc>,
}

/// A reduced quotient of univariate polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    pub num: SparsePoly,
    pub den: SparsePoly,
}

impl RationalFn {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval_univariate_c64(0, z) / self.den.eval_univariate_c64(0, z)
    }

    /// As a meromorphic function in the factored class.
    pub fn to_mero(&self) -> Result<MeroFn> {
        if self.num.is_zero() {
            return Ok(MeroFn::zero());
        }
        MeroFn::from_parts(GaussRat::one(), vec![(self.num.clone(), 1), (self.den.clone(), -1)], SparsePoly::zero(1))
    }

    pub fn numerator_zeros(&self) -> Result<Vec<RootEnclosure>> {
        if self.num.degree() == 0 {
            return Ok(vec![]);
        }
        Ok(roots_certified(&self.num, DEFAULT_TOL)?.roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn powers_of_z_multiply() {
        let z = MeroFn::z();
        assert_eq!(z.powi(2).unwrap().mul(&z.powi(3).unwrap()), z.powi(5).unwrap());
    }

    #[test]
    fn quotient_cancels() {
        let p = MeroFn::poly_int(&[-1, 1]);
        assert_eq!(p.div(&p).unwrap(), MeroFn::one());
    }

    #[test]
    fn exponential_parts_cancel() {
        let a = MeroFn::z().mul(&MeroFn::exp_linear(GaussRat::one()));
        let b = MeroFn::z().mul(&MeroFn::exp_linear(GaussRat::from_int(-1)));
        assert_eq!(a.mul(&b), MeroFn::z().powi(2).unwrap());
    }

    #[test]
    fn canonical_factoring() {
        // z^3 - z = z (z - 1)(z + 1); times (z - 1) gives (z-1)^2
        let f = MeroFn::poly_int(&[0, -1, 0, 1]).mul(&MeroFn::poly_int(&[-1, 1]));
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.order_at_zero(), 1);
        let zs = f.divisor(Target::Zeros).unwrap();
        assert_eq!(zs.iter().map(|d| d.mult).sum::<u32>(), 4);
        assert!((f.eval(c(2.0, 0.0)) - c(6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn log_derivatives() {
        let f = MeroFn::z().powi(3).unwrap();
        let ld = f.log_derivative();
        assert!((ld.eval(c(2.0, 0.0)) - c(1.5, 0.0)).norm() < 1e-14);
        let e = MeroFn::exp_linear(GaussRat::from_int(5));
        assert!((e.log_derivative().eval(c(0.3, 0.7)) - c(5.0, 0.0)).norm() < 1e-14);
        let g = MeroFn::poly_int(&[0, -1, 1]);
        let ld = g.log_derivative();
        assert_eq!(ld.num, SparsePoly::univariate_int(&[-1, 2]));
    }

    #[test]
    fn non_integer_power_rejected() {
        assert!(MeroFn::z().powf(0.5).is_err());
        assert!(MeroFn::zero().powi(-1).is_err());
    }

    #[test]
    fn doc_round_trip() {
        let f = MeroFn::poly_int(&[-2, 1]).powi(3).unwrap().div(&MeroFn::poly_int(&[1, 1])).unwrap();
        let g = MeroFn::from_doc(&f.to_doc()).unwrap();
        assert_eq!(f, g);
    }
}
