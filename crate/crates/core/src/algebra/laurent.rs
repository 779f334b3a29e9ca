//! Bivariate Laurent polynomials in `(Lambda, T)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::gauss::GaussRat;
use super::poly::SparsePoly;

/// Exponent pairs are `(lambda, t)`, both possibly negative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentBivar {
    terms: BTreeMap<(i64, i64), GaussRat>,
}

impl LaurentBivar {
    pub fn zero() -> Self {
        LaurentBivar::default()
    }

    pub fn one() -> Self {
        LaurentBivar::monomial(0, 0, GaussRat::one())
    }

    pub fn monomial(l: i64, t: i64, c: GaussRat) -> Self {
        let mut p = LaurentBivar::zero();
        p.add_term(l, t, &c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), GaussRat)>>(it: I) -> Self {
        let mut p = LaurentBivar::zero();
        for ((l, t), c) in it {
            p.add_term(l, t, &c);
        }
        p
    }

    fn add_term(&mut self, l: i64, t: i64, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((l, t)).or_insert_with(GaussRat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(l, t));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), GaussRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l: i64, t: i64) -> GaussRat {
        self.terms.get(&(l, t)).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn min_lambda(&self) -> i64 {
        self.terms.keys().map(|k| k.0).min().unwrap_or(0)
    }

    pub fn max_lambda(&self) -> i64 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn min_t(&self) -> i64 {
        self.terms.keys().map(|k| k.1).min().unwrap_or(0)
    }

    pub fn max_t(&self) -> i64 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Multiplies by `Lambda^dl T^dt`.
    pub fn shift(&self, dl: i64, dt: i64) -> LaurentBivar {
        LaurentBivar { terms: self.terms.iter().map(|(&(l, t), c)| ((l + dl, t + dt), c.clone())).collect() }
    }

    /// Coefficient of `T^k` as a Laurent polynomial in `Lambda`.
    pub fn coeff_t(&self, k: i64) -> LaurentBivar {
        LaurentBivar {
            terms: self.terms.iter().filter(|(e, _)| e.1 == k).map(|(&(l, _), c)| ((l, 0), c.clone())).collect(),
        }
    }

    /// Image under the monomial map `Lambda^i T^j -> X^(m00 i + m01 j) Y^(m10 i + m11 j)`.
    pub fn monomial_map(&self, m: [[i64; 2]; 2]) -> LaurentBivar {
        LaurentBivar::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| ((m[0][0] * i + m[0][1] * j, m[1][0] * i + m[1][1] * j), c.clone())),
        )
    }

    /// A true polynomial in variables `(Lambda, T)` if no exponent is negative.
    pub fn to_poly(&self) -> Option<SparsePoly> {
        if self.terms.keys().any(|&(l, t)| l < 0 || t < 0) {
            return None;
        }
        Some(SparsePoly::from_terms(2, self.terms.iter().map(|(&(l, t), c)| (vec![l as u32, t as u32], c.clone()))))
    }

    pub fn from_poly(p: &SparsePoly) -> LaurentBivar {
        assert_eq!(p.num_vars(), 2);
        LaurentBivar::from_terms(p.terms().iter().map(|(e, c)| ((e[0] as i64, e[1] as i64), c.clone())))
    }

    pub fn pow(&self, k: u32) -> LaurentBivar {
        let mut acc = LaurentBivar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_string_with(&self, names: [&str; 2]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (&(l, t), c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (name, k) in [(names[0], l), (names[1], t)] {
                match k {
                    0 => {}
                    1 => mono.push(name.to_string()),
                    _ => mono.push(format!("{name}^{k}")),
                }
            }
            parts.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", c, mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for LaurentBivar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(["L", "T"]))
    }
}

impl<'a> Add<&'a LaurentBivar> for &'a LaurentBivar {
    type Output = LaurentBivar;
    fn add(self, o: &LaurentBivar) -> LaurentBivar {
        let mut p = self.clone();
        for (&(l, t), c) in &o.terms {
            p.add_term(l, t, c);
        }
        p
    }
}

impl<'a> Sub<&'a LaurentBivar> for &'a LaurentBivar {
    type Output = LaurentBivar;
    fn sub(self, o: &LaurentBivar) -> LaurentBivar {
        let mut p = self.clone();
        for (&(l, t), c) in &o.terms {
            p.add_term(l, t, &-c);
        }
        p
    }
}

impl<'a> Mul<&'a LaurentBivar> for &'a LaurentBivar {
    type Output = LaurentBivar;
    fn mul(self, o: &LaurentBivar) -> LaurentBivar {
        let mut p = LaurentBivar::zero();
        for (&(l1, t1), c1) in &self.terms {
            for (&(l2, t2), c2) in &o.terms {
                p.add_term(l1 + l2, t1 + t2, &(c1 * c2));
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_map_round_trip() {
        let p = LaurentBivar::from_terms([((1, -2), GaussRat::from_int(3)), ((0, 4), GaussRat::one())]);
        // (a, b, n1, n2) = (1, 2, -3, 2)
        let fwd = [[1, 2], [2, 3]];
        let back = [[-3, 2], [2, -1]];
        assert_eq!(p.monomial_map(fwd).monomial_map(back), p);
    }

    #[test]
    fn negative_exponents_are_kept() {
        let t_inv = LaurentBivar::monomial(0, -1, GaussRat::one());
        let t = LaurentBivar::monomial(0, 1, GaussRat::one());
        assert_eq!(&t_inv * &t, LaurentBivar::one());
        assert!(t_inv.to_poly().is_none());
    }
}
