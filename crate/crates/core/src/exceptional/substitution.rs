//! The monomial change of variables `X = Lambda^a T^n2`, `Y = Lambda^b T^-n1` and the
//! special values of `Lambda` where `B(Lambda, T)` degenerates.

use crate::algebra::gauss::GaussRat;
use crate::algebra::laurent::LaurentBivar;
use crate::algebra::poly::SparsePoly;
use crate::algebra::resultant::resultant_with_derivative;
use crate::algebra::roots::{roots_certified, AlgebraicRoots, DEFAULT_TOL};
use crate::algebra::squarefree::{is_squarefree, squarefree_part};
use crate::error::{Error, Result};

use super::normalize::NormalizedPair;

/// Checks the standing hypotheses on a plane curve `G(x0, x1, x2)`.
pub fn validate_plane_curve(g: &SparsePoly) -> Result<()> {
    if g.num_vars() != 3 {
        return Err(Error::InvalidInput(format!("expected 3 variables, got {}", g.num_vars())));
    }
    if g.is_zero() || g.is_constant() {
        return Err(Error::InvalidInput("G must be a non-constant form".into()));
    }
    if !g.is_homogeneous() {
        return Err(Error::InvalidInput("G is not homogeneous".into()));
    }
    if let Some(i) = (0..3).find(|&i| g.min_degree_in(i) > 0) {
        return Err(Error::InvalidInput(format!("G has the monomial factor x{i}")));
    }
    if !is_squarefree(g) {
        return Err(Error::InvalidInput("G has a repeated factor".into()));
    }
    for i in 0..3 {
        let mut e = vec![0u32; 3];
        e[i] = g.degree();
        if g.coeff(&e).is_zero() {
            return Err(Error::InvalidInput(format!(
                "[G = 0] meets the intersection of the two coordinate lines other than x{i} = 0"
            )));
        }
    }
    Ok(())
}

/// `G(1, X, Y)` with exponents keyed `(deg_X, deg_Y)`.
pub fn dehomogenize(g: &SparsePoly) -> LaurentBivar {
    LaurentBivar::from_terms(g.terms().iter().map(|(e, c)| ((e[1] as i64, e[2] as i64), c.clone())))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubstitutionResult {
    pub pair: NormalizedPair,
    pub m1: i64,
    pub m2: i64,
    /// Polynomial in `(Lambda, T)` with `B(0, T) != 0` and `B(Lambda, 0) != 0`.
    pub b: SparsePoly,
    /// `Lambda^M2 B`: a polynomial in `T` over Laurent polynomials in `Lambda`.
    pub b_lambda: LaurentBivar,
    /// `G(1, X, Y)` before substitution.
    pub g1: LaurentBivar,
}

impl SubstitutionResult {
    /// `T^M1 Lambda^M2 B` pulled back through `Lambda = X^n1 Y^n2`, `T = X^b Y^-a`.
    pub fn round_trip(&self) -> LaurentBivar {
        let p = &self.pair;
        LaurentBivar::from_poly(&self.b).shift(self.m2, self.m1).monomial_map([[p.n1, p.b], [p.n2, -p.a]])
    }
}

pub fn substitute(g: &SparsePoly, pair: &NormalizedPair) -> Result<SubstitutionResult> {
    validate_plane_curve(g)?;
    let g1 = dehomogenize(g);
    let sub = g1.monomial_map([[pair.a, pair.b], [pair.n2, -pair.n1]]);
    let m1 = sub.min_t();
    let b_lambda = sub.shift(0, -m1);
    let m2 = b_lambda.min_lambda();
    let b = b_lambda
        .shift(-m2, 0)
        .to_poly()
        .ok_or_else(|| Error::InternalContradiction("B has negative exponents".into()))?;
    let res = SubstitutionResult { pair: *pair, m1, m2, b, b_lambda, g1 };
    if res.round_trip() != res.g1 {
        return Err(Error::InternalContradiction("substitution does not invert".into()));
    }
    if !is_squarefree(&res.b) {
        return Err(Error::InternalContradiction(format!(
            "B is not squarefree for pair ({}, {})",
            pair.n1, pair.n2
        )));
    }
    Ok(res)
}

/// Special `Lambda` values: resultant zeros, zeros of `B(Lambda, 0)`, zeros of the
/// leading `T`-coefficient. `Lambda = 0` is removed from all three.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaLoci {
    /// `Res_T(B, dB/dT)` before stripping powers of `Lambda`.
    pub resultant: SparsePoly,
    pub alphas: AlgebraicRoots,
    pub gammas: AlgebraicRoots,
    pub leading: AlgebraicRoots,
}

fn lambda_poly(p: &SparsePoly) -> SparsePoly {
    SparsePoly::from_terms(1, p.terms().iter().map(|(e, c)| (vec![e[0]], c.clone())))
}

/// Roots of the squarefree part of `p / Lambda^k`.
fn nonzero_roots(p: &SparsePoly) -> Result<AlgebraicRoots> {
    let p = p.shift_down(&p.monomial_content());
    if p.degree() == 0 {
        return Ok(AlgebraicRoots { defining_poly: SparsePoly::one(1), roots: vec![], factors: vec![] });
    }
    roots_certified(&squarefree_part(&p), DEFAULT_TOL)
}

pub fn beta_loci(sub: &SubstitutionResult) -> Result<BetaLoci> {
    let res = lambda_poly(&resultant_with_derivative(&sub.b, 1));
    if res.is_zero() {
        return Err(Error::InternalContradiction("Res_T(B, B') vanishes identically".into()));
    }
    let alphas = nonzero_roots(&res)?;
    let at_zero = lambda_poly(&sub.b.specialize(1, &GaussRat::zero()));
    let gammas = nonzero_roots(&at_zero)?;
    let leading = nonzero_roots(&lambda_poly(&sub.b.lc_in(1)))?;
    Ok(BetaLoci { resultant: res, alphas, gammas, leading })
}
