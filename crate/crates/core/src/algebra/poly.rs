//! Sparse multivariate polynomials over Q(i).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gauss::GaussRat;
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// A polynomial in `num_vars` variables stored as a map from exponent vector to
/// nonzero coefficient. Iteration order is lexicographic on exponents, so the
/// last entry is the lex-leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePoly {
    num_vars: usize,
    terms: BTreeMap<Exponent, GaussRat>,
}

impl SparsePoly {
    pub fn zero(num_vars: usize) -> Self {
        SparsePoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        SparsePoly::constant(num_vars, GaussRat::one())
    }

    pub fn constant(num_vars: usize, c: GaussRat) -> Self {
        SparsePoly::monomial(num_vars, vec![0; num_vars], c)
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index {i} out of range for {num_vars} variables");
        let mut e = vec![0; num_vars];
        e[i] = 1;
        SparsePoly::monomial(num_vars, e, GaussRat::one())
    }

    pub fn monomial(num_vars: usize, exp: Exponent, c: GaussRat) -> Self {
        assert_eq!(exp.len(), num_vars, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        SparsePoly { num_vars, terms }
    }

    /// Builds a polynomial from terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, GaussRat)>,
    {
        let mut p = SparsePoly::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent length mismatch");
            p.add_term(e, &c);
        }
        p
    }

    /// Univariate polynomial from ascending integer coefficients.
    pub fn univariate_int(coeffs: &[i64]) -> Self {
        SparsePoly::from_terms(
            1,
            coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], GaussRat::from_int(c))),
        )
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(coeffs: &[GaussRat]) -> Self {
        SparsePoly::from_terms(1, coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())))
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, GaussRat> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn coeff(&self, e: &[u32]) -> GaussRat {
        self.terms.get(e).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeff(&vec![0; self.num_vars])
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|k| k == d),
        }
    }

    /// Which variables occur with positive exponent.
    pub fn vars_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.num_vars];
        for e in self.terms.keys() {
            for (u, &k) in used.iter_mut().zip(e) {
                *u |= k > 0;
            }
        }
        used
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Exponent, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GaussRat {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(GaussRat::zero)
    }

    /// Divides by the lex-leading coefficient. Zero stays zero.
    pub fn monic(&self) -> SparsePoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.num_vars);
        }
        SparsePoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    fn check_vars(&self, o: &SparsePoly) {
        assert_eq!(self.num_vars, o.num_vars, "polynomials live in different rings");
    }

    /// Exact arithmetic with an explicit compatibility check.
    pub fn try_add(&self, o: &SparsePoly) -> Result<SparsePoly> {
        if self.num_vars != o.num_vars {
            return Err(Error::VarMismatch(self.num_vars, o.num_vars));
        }
        Ok(self + o)
    }

    pub fn try_mul(&self, o: &SparsePoly) -> Result<SparsePoly> {
        if self.num_vars != o.num_vars {
            return Err(Error::VarMismatch(self.num_vars, o.num_vars));
        }
        Ok(self * o)
    }

    /// Integer power; negative exponents are rejected.
    pub fn try_pow(&self, e: i64) -> Result<SparsePoly> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.pow(e as u32))
    }

    pub fn pow(&self, mut e: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = SparsePoly::one(self.num_vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: usize) -> SparsePoly {
        assert!(v < self.num_vars, "variable index out of range");
        let mut out = SparsePoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            out.add_term(e2, &c.scale_int(e[v] as i64));
        }
        out
    }

    /// Coefficients with respect to `v`, indexed by power; entries do not contain `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<SparsePoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![SparsePoly::zero(self.num_vars); deg + 1];
        if self.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(num_vars: usize, v: usize, coeffs: &[SparsePoly]) -> SparsePoly {
        let mut out = SparsePoly::zero(num_vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                out.add_term(e2, a);
            }
        }
        out
    }

    /// Leading coefficient with respect to `v` (a polynomial free of `v`).
    pub fn lc_in(&self, v: usize) -> SparsePoly {
        let d = self.degree_in(v);
        let mut out = SparsePoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Substitutes `x_v = value`, keeping the variable slot (now unused).
    pub fn specialize(&self, v: usize, value: &GaussRat) -> SparsePoly {
        let mut out = SparsePoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v];
            e2[v] = 0;
            out.add_term(e2, &(c * &value.pow(k)));
        }
        out
    }

    /// Substitutes `x_i = subs[i]` for every variable; the result lives in the ring of `subs`.
    pub fn compose(&self, subs: &[SparsePoly]) -> SparsePoly {
        assert_eq!(subs.len(), self.num_vars, "need one substitute per variable");
        let target = subs.first().map(|s| s.num_vars).unwrap_or(0);
        let mut powers: Vec<Vec<SparsePoly>> = subs.iter().map(|s| vec![SparsePoly::one(s.num_vars), s.clone()]).collect();
        let mut out = SparsePoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-embeds into `new_n` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, new_n: usize, map: &[usize]) -> SparsePoly {
        assert_eq!(map.len(), self.num_vars);
        let mut out = SparsePoly::zero(new_n);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_n];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c);
        }
        out
    }

    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_c64();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= x.powu(k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Horner evaluation of a polynomial in one variable (other slots must be unused).
    pub fn eval_univariate_c64(&self, v: usize, z: Complex64) -> Complex64 {
        let coeffs = self.dense_coeffs_c64(v);
        coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Dense ascending coefficients in `v` as floats; other variables must be absent.
    pub fn dense_coeffs_c64(&self, v: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            out[e[v] as usize] += c.to_c64();
        }
        out
    }

    /// Division by lex-leading terms. Returns `(q, r)` with `self = q*d + r`.
    pub fn div_rem(&self, d: &SparsePoly) -> (SparsePoly, SparsePoly) {
        self.check_vars(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let (lt_e, lt_c) = d.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let lt_inv = lt_c.inv().unwrap();
        let mut q = SparsePoly::zero(self.num_vars);
        let mut r = SparsePoly::zero(self.num_vars);
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lt_e).all(|(a, b)| a >= b) {
                let qe: Exponent = e.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
                let qc = &c * &lt_inv;
                for (de, dc) in &d.terms {
                    let pe: Exponent = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                    p.add_term(pe, &-(dc * &qc));
                }
                q.add_term(qe, &qc);
            } else {
                p.terms.remove(&e);
                r.add_term(e, &c);
            }
        }
        (q, r)
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &SparsePoly) -> Option<SparsePoly> {
        self.check_vars(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(SparsePoly::zero(self.num_vars));
        }
        let (lt_e, lt_c) = d.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let lt_inv = lt_c.inv().unwrap();
        let mut q = SparsePoly::zero(self.num_vars);
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if !e.iter().zip(&lt_e).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Exponent = e.iter().zip(&lt_e).map(|(a, b)| a - b).collect();
            let qc = &c * &lt_inv;
            for (de, dc) in &d.terms {
                let pe: Exponent = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                p.add_term(pe, &-(dc * &qc));
            }
            q.add_term(qe, &qc);
        }
        Some(q)
    }

    /// `Some(c)` when `self = c * other` for a constant `c`.
    pub fn proportional_to(&self, other: &SparsePoly) -> Option<GaussRat> {
        if self.num_vars != other.num_vars || self.len() != other.len() || self.is_zero() {
            return None;
        }
        let (e, a) = self.leading_term().unwrap();
        let b = other.terms.get(e)?;
        let c = a / b;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.num_vars])
    }

    /// Divides out a monomial that divides every term.
    pub fn shift_down(&self, m: &[u32]) -> SparsePoly {
        SparsePoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u32]) -> SparsePoly {
        SparsePoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> SparsePoly {
        SparsePoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono.join("*")
            } else if *c == GaussRat::from_int(-1) {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", c, mono.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&[]))
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, o: &SparsePoly) -> SparsePoly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, o: &SparsePoly) -> SparsePoly {
        self.check_vars(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, o: &SparsePoly) -> SparsePoly {
        self.check_vars(o);
        let mut out = SparsePoly::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, o: SparsePoly) -> SparsePoly {
        &self + &o
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, o: SparsePoly) -> SparsePoly {
        &self - &o
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, o: SparsePoly) -> SparsePoly {
        &self * &o
    }
}

/// Variables of a ring, for tests and small fixtures.
pub fn vars(n: usize) -> Vec<SparsePoly> {
    (0..n).map(|i| SparsePoly::var(n, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> SparsePoly {
        SparsePoly::constant(3, GaussRat::from_int(n))
    }

    #[test]
    fn difference_of_squares() {
        let x = vars(3);
        let p = &(&x[0] + &x[1]) * &(&x[0] - &x[1]);
        assert_eq!(p, &(&x[0] * &x[0]) - &(&x[1] * &x[1]));
    }

    #[test]
    fn absorbing_zero() {
        let x = vars(3);
        let p = &x[0] + &x[1];
        assert!((&p * &SparsePoly::zero(3)).is_zero());
    }

    #[test]
    fn square_of_quadric_hand_expansion() {
        let x = vars(3);
        let q = &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2]);
        let sq = q.pow(2);
        assert_eq!(sq.len(), 6);
        // x0^4 + x1^4 + x2^4 + 2 x0^2 x1^2 + 2 x0^2 x2^2 + 2 x1^2 x2^2
        assert_eq!(sq.coeff(&[4, 0, 0]), GaussRat::one());
        assert_eq!(sq.coeff(&[2, 2, 0]), GaussRat::from_int(2));
        assert_eq!(sq.coeff(&[0, 2, 2]), GaussRat::from_int(2));
        assert_eq!(sq.coeff(&[2, 0, 2]), GaussRat::from_int(2));
    }

    #[test]
    fn negative_power_rejected() {
        let x = vars(2);
        assert!(matches!(x[0].try_pow(-1), Err(Error::NegativeExponent(-1))));
        assert!(x[0].try_add(&SparsePoly::zero(3)).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let x = vars(3);
        let q = &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2]);
        assert_eq!(q.partial_derivative(0), x[0].scale(&GaussRat::from_int(2)));
        assert!(c(7).partial_derivative(0).is_zero());
        let m = &x[0].pow(3) * &x[1];
        assert_eq!(m.partial_derivative(1), x[0].pow(3));
    }

    #[test]
    fn exact_division() {
        let x = vars(3);
        let a = &x[0] - &x[1];
        let b = &(&x[0] * &x[0]) + &x[2];
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(b.div_exact(&a).is_none());
        let (q, r) = b.div_rem(&a);
        assert_eq!(&(&q * &a) + &r, b);
    }

    #[test]
    fn compose_and_specialize() {
        let x = vars(2);
        let p = &(&x[0] * &x[0]) + &x[1];
        let y = vars(2);
        let s = p.compose(&[&y[0] + &y[1], y[1].clone()]);
        assert_eq!(s, &(&y[0] + &y[1]).pow(2) + &y[1]);
        let sp = p.specialize(0, &GaussRat::from_int(3));
        assert_eq!(sp, &c2(9) + &x[1]);
    }

    fn c2(n: i64) -> SparsePoly {
        SparsePoly::constant(2, GaussRat::from_int(n))
    }
}
