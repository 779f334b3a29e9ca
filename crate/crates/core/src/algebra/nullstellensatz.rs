//! Effective Nullstellensatz for pairs of coprime binary forms.
//!
//! For forms `F` (degree p) and `G` (degree q) in `Z, U` with coefficients in a
//! polynomial ring `A`, the homogeneous Sylvester matrix `S` maps cofactor
//! coefficients to the coefficients of `P F + Q G` in degree `p + q - 1`. The
//! first and last rows of `adj(S)` give `Z^s R` and `U^s R` with `R = det S`.

use super::poly::SparsePoly;
use super::resultant::det;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct NullstellensatzCertificate {
    pub s: u32,
    pub r: SparsePoly,
    /// `Z^s R = p1 F + p2 G`
    pub p1: SparsePoly,
    pub p2: SparsePoly,
    /// `U^s R = q1 F + q2 G`
    pub q1: SparsePoly,
    pub q2: SparsePoly,
    pub z_var: usize,
    pub u_var: usize,
}

impl NullstellensatzCertificate {
    /// Checks both identities by exact expansion.
    pub fn verify(&self, f: &SparsePoly, g: &SparsePoly) -> bool {
        let n = f.num_vars();
        let zs = SparsePoly::var(n, self.z_var).pow(self.s);
        let us = SparsePoly::var(n, self.u_var).pow(self.s);
        let lhs1 = &zs * &self.r;
        let rhs1 = &(&self.p1 * f) + &(&self.p2 * g);
        let lhs2 = &us * &self.r;
        let rhs2 = &(&self.q1 * f) + &(&self.q2 * g);
        !self.r.is_zero() && lhs1 == rhs1 && lhs2 == rhs2
    }
}

fn binary_degree(f: &SparsePoly, z: usize, u: usize) -> Result<u32> {
    let mut degs = f.terms().keys().map(|e| e[z] + e[u]);
    let d = degs.next().ok_or_else(|| Error::InvalidInput("zero form".into()))?;
    if degs.any(|k| k != d) {
        return Err(Error::InvalidInput("form is not homogeneous in the two main variables".into()));
    }
    Ok(d)
}

/// Coefficient of `Z^(deg-k) U^k`, an element of the coefficient ring.
fn binary_coeff(f: &SparsePoly, z: usize, u: usize, k: u32) -> SparsePoly {
    SparsePoly::from_terms(
        f.num_vars(),
        f.terms().iter().filter(|(e, _)| e[u] == k).map(|(e, c)| {
            let mut e2 = e.clone();
            e2[z] = 0;
            e2[u] = 0;
            (e2, c.clone())
        }),
    )
}

fn zu_monomial(n: usize, z: usize, u: usize, a: u32, b: u32) -> Vec<u32> {
    let mut e = vec![0; n];
    e[z] = a;
    e[u] = b;
    e
}

/// Certificate `Z^s R = P1 F + P2 G`, `U^s R = Q1 F + Q2 G` with `s = p + q - 1`.
pub fn nullstellensatz_certificate(
    f: &SparsePoly,
    g: &SparsePoly,
    z_var: usize,
    u_var: usize,
) -> Result<NullstellensatzCertificate> {
    let nv = f.num_vars();
    if g.num_vars() != nv {
        return Err(Error::VarMismatch(nv, g.num_vars()));
    }
    let p = binary_degree(f, z_var, u_var)?;
    let q = binary_degree(g, z_var, u_var)?;
    let big_n = (p + q) as usize;
    let zero = SparsePoly::zero(nv);
    let one = SparsePoly::one(nv);
    if big_n == 0 {
        // both are nonzero elements of the coefficient ring
        let cert = NullstellensatzCertificate {
            s: 0,
            r: f.clone(),
            p1: one.clone(),
            p2: zero.clone(),
            q1: one,
            q2: zero,
            z_var,
            u_var,
        };
        return Ok(cert);
    }
    let fc: Vec<SparsePoly> = (0..=p).map(|k| binary_coeff(f, z_var, u_var, k)).collect();
    let gc: Vec<SparsePoly> = (0..=q).map(|k| binary_coeff(g, z_var, u_var, k)).collect();
    let mut s_mat = vec![vec![zero.clone(); big_n]; big_n];
    for i in 0..q as usize {
        for (k, c) in fc.iter().enumerate() {
            s_mat[i][i + k] = c.clone();
        }
    }
    for j in 0..p as usize {
        for (k, c) in gc.iter().enumerate() {
            s_mat[q as usize + j][j + k] = c.clone();
        }
    }
    let r = det(s_mat.clone(), nv);
    if r.is_zero() {
        return Err(Error::NotCoprime);
    }
    let cofactor = |row: usize, col: usize| -> SparsePoly {
        let minor: Vec<Vec<SparsePoly>> = s_mat
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, rw)| rw.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        let d = det(minor, nv);
        if (row + col) % 2 == 1 {
            -d
        } else {
            d
        }
    };
    // adj(S)[c][r] = cofactor(r, c); rows of S are indexed by the multiplier monomials
    let build = |col: usize| -> (SparsePoly, SparsePoly) {
        let mut a = zero.clone();
        let mut b = zero.clone();
        for i in 0..q as usize {
            let m = zu_monomial(nv, z_var, u_var, q - 1 - i as u32, i as u32);
            a = &a + &cofactor(i, col).mul_monomial(&m);
        }
        for j in 0..p as usize {
            let m = zu_monomial(nv, z_var, u_var, p - 1 - j as u32, j as u32);
            b = &b + &cofactor(q as usize + j, col).mul_monomial(&m);
        }
        (a, b)
    };
    let (p1, p2) = build(0);
    let (q1, q2) = build(big_n - 1);
    let cert = NullstellensatzCertificate { s: p + q - 1, r, p1, p2, q1, q2, z_var, u_var };
    if !cert.verify(f, g) {
        return Err(Error::InternalContradiction("Nullstellensatz certificate failed its expansion check".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;

    #[test]
    fn coordinate_forms() {
        let x = vars(2);
        let c = nullstellensatz_certificate(&x[0], &x[1], 0, 1).unwrap();
        assert_eq!(c.s, 1);
        assert_eq!(c.r, SparsePoly::one(2));
        assert_eq!(c.p1, SparsePoly::one(2));
        assert!(c.p2.is_zero());
    }

    #[test]
    fn sum_of_squares_and_product() {
        let x = vars(2);
        let f = &(&x[0] * &x[0]) + &(&x[1] * &x[1]);
        let g = &x[0] * &x[1];
        let c = nullstellensatz_certificate(&f, &g, 0, 1).unwrap();
        assert!(c.r.is_constant());
        assert!(c.verify(&f, &g));
    }

    #[test]
    fn common_factor_rejected() {
        let x = vars(2);
        let f = &x[0] * &x[0];
        let g = &x[0] * &x[1];
        assert!(matches!(nullstellensatz_certificate(&f, &g, 0, 1), Err(Error::NotCoprime)));
    }

    #[test]
    fn coefficients_in_a_parameter_ring() {
        // Z, U, lambda
        let x = vars(3);
        let f = &(&x[0] * &x[0]) + &(&x[2] * &(&x[1] * &x[1]));
        let g = &x[0] - &x[1];
        let c = nullstellensatz_certificate(&f, &g, 0, 1).unwrap();
        assert!(!c.r.is_constant());
        assert!(c.verify(&f, &g));
    }
}
