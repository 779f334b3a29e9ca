//! Exponential polynomials `sum_k p_k(z) exp(Q_k(z))`.
//!
//! These arise as `G(g_0, ..., g_n)` when the `g_i` carry different exponential
//! parts, e.g. `1 + e^z`. They leave the factored class, so their zeros are
//! located numerically.

use num_complex::Complex64;

use super::mero::{DivisorPoint, MeroFn, Target};
use super::zeros::{zeros_in_disk, ScaledAnalytic, ZeroOptions};
use crate::algebra::gauss::GaussRat;
use crate::algebra::poly::SparsePoly;
use crate::error::{Error, Result};

/// Terms `(p_k, Q_k)` with nonzero `p_k` and pairwise distinct `Q_k`, sorted by `Q_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSum {
    terms: Vec<(SparsePoly, SparsePoly)>,
}

impl ExpSum {
    pub fn zero() -> ExpSum {
        ExpSum { terms: vec![] }
    }

    fn from_terms(raw: Vec<(SparsePoly, SparsePoly)>) -> ExpSum {
        let mut terms: Vec<(SparsePoly, SparsePoly)> = Vec::new();
        for (p, q) in raw {
            match terms.iter_mut().find(|(_, q2)| *q2 == q) {
                Some(t) => t.0 = &t.0 + &p,
                None => terms.push((p, q)),
            }
        }
        terms.retain(|(p, _)| !p.is_zero());
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        ExpSum { terms }
    }

    pub fn from_mero(f: &MeroFn) -> Result<ExpSum> {
        if f.is_zero() {
            return Ok(ExpSum::zero());
        }
        let p = f
            .polynomial_part()
            .ok_or_else(|| Error::InvalidInput("exponential sums hold entire functions only".into()))?;
        Ok(ExpSum::from_terms(vec![(p, f.exp_part().clone())]))
    }

    pub fn add(&self, o: &ExpSum) -> ExpSum {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        ExpSum::from_terms(t)
    }

    pub fn mul(&self, o: &ExpSum) -> ExpSum {
        let mut t = Vec::new();
        for (p1, q1) in &self.terms {
            for (p2, q2) in &o.terms {
                t.push((p1 * p2, q1 + q2));
            }
        }
        ExpSum::from_terms(t)
    }

    /// `G(g_0, ..., g_n)` for a polynomial `G` and entire components `g_i`.
    pub fn compose(g_poly: &SparsePoly, g: &[MeroFn]) -> Result<ExpSum> {
        if g.len() != g_poly.num_vars() {
            return Err(Error::VarMismatch(g_poly.num_vars(), g.len()));
        }
        let mut raw = Vec::new();
        for (e, c) in g_poly.terms() {
            let mut t = MeroFn::constant(c.clone());
            for (gi, &k) in g.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&gi.powi(k as i64)?);
                }
            }
            if t.is_zero() {
                continue;
            }
            let p = t
                .polynomial_part()
                .ok_or_else(|| Error::InvalidInput("curve components must be entire".into()))?;
            raw.push((p, t.exp_part().clone()));
        }
        Ok(ExpSum::from_terms(raw))
    }

    pub fn terms(&self) -> &[(SparsePoly, SparsePoly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same function in the factored class when there is at most one exponential part.
    pub fn as_mero(&self) -> Option<MeroFn> {
        match self.terms.len() {
            0 => Some(MeroFn::zero()),
            1 => MeroFn::from_parts(GaussRat::one(), vec![(self.terms[0].0.clone(), 1)], self.terms[0].1.clone()).ok(),
            _ => None,
        }
    }

    /// `(f e^{-M}, f' e^{-M}, M)` with `M` the largest real part among the exponents.
    pub fn eval_scaled_full(&self, z: Complex64) -> (Complex64, Complex64, f64) {
        let qs: Vec<Complex64> = self.terms.iter().map(|(_, q)| q.eval_univariate_c64(0, z)).collect();
        let m = qs.iter().map(|q| q.re).fold(f64::NEG_INFINITY, f64::max);
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        for ((p, q), qz) in self.terms.iter().zip(&qs) {
            let e = (qz - m).exp();
            let pz = p.eval_univariate_c64(0, z);
            let dp = p.partial_derivative(0).eval_univariate_c64(0, z);
            let dq = q.partial_derivative(0).eval_univariate_c64(0, z);
            f += pz * e;
            df += (dp + pz * dq) * e;
        }
        (f, df, m)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (f, _, m) = self.eval_scaled_full(z);
        f * m.exp()
    }

    pub fn log_abs(&self, z: Complex64) -> f64 {
        if self.terms.is_empty() {
            return f64::NEG_INFINITY;
        }
        let (f, _, m) = self.eval_scaled_full(z);
        m + f.norm().ln()
    }

    /// Zeros in `|z| <= radius`: exact when the sum collapses to the factored class.
    pub fn zeros(&self, radius: f64, opts: ZeroOptions) -> Result<Vec<DivisorPoint>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("the zero function has no discrete zero set".into()));
        }
        if let Some(f) = self.as_mero() {
            return Ok(f.divisor(Target::Zeros)?.into_iter().filter(|p| p.center.norm() <= radius + p.radius).collect());
        }
        zeros_in_disk(self, radius, opts)
    }
}

impl ScaledAnalytic for ExpSum {
    fn eval_scaled(&self, z: Complex64) -> (Complex64, Complex64) {
        let (f, df, _) = self.eval_scaled_full(z);
        (f, df)
    }
}
