//! Polynomial test curves inside a listed curve, and the defect of `G` along them.

use serde::{Deserialize, Serialize};

use crate::algebra::gauss::GaussRat;
use crate::algebra::poly::SparsePoly;
use crate::algebra::squarefree::is_squarefree;
use crate::error::{Error, Result};

use super::curves::{CurveKind, CurveSpec};
use super::normalize::normalize_pair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessOutcome {
    /// `G(g(t))` has a zero of multiplicity at least two.
    RepeatedZero,
    /// `deg G(g(t)) < deg G * deg g`: zeros escape to infinity.
    DegreeDrop,
    /// `g` lies inside `[G = 0]`.
    Vanishes,
    /// None of the above.
    Clean,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub components: [SparsePoly; 3],
    pub value: SparsePoly,
    pub outcome: WitnessOutcome,
}

/// Three parameterizations `h(t)` used for spot checks.
pub fn default_parameters() -> Vec<SparsePoly> {
    vec![SparsePoly::univariate_int(&[0, 1]), SparsePoly::univariate_int(&[1, 1]), SparsePoly::univariate_int(&[-3, 2])]
}

/// The curve `u1 = lambda^a h^n2`, `u2 = lambda^b h^-n1` (denominators cleared) through the
/// provenance coordinates of `c`.
pub fn witness_curve(c: &CurveSpec, h: &SparsePoly) -> Result<[SparsePoly; 3]> {
    if c.kind == CurveKind::CoordinateLine {
        let j = c.lhs.iter().position(|&e| e == 1).unwrap();
        let mut v = [SparsePoly::one(1), h.clone(), &(h * h) + &SparsePoly::one(1)];
        v.rotate_right(j);
        v[j] = SparsePoly::zero(1);
        return Ok(v);
    }
    if c.provenance.is_empty() {
        return Err(Error::InvalidInput("curve carries no provenance".into()));
    }
    let lambda = c
        .lambda_for(0)?
        .and_then(|l| l.exact())
        .ok_or_else(|| Error::InvalidInput("witness curves need a Gaussian-rational beta".into()))?;
    let pv = &c.provenance[0];
    let p = normalize_pair(pv.n1, pv.n2)?;
    let lam = |k: i64| -> Result<SparsePoly> {
        let v = lambda.powi(k).ok_or_else(|| Error::InvalidInput("lambda vanishes".into()))?;
        Ok(SparsePoly::constant(1, v))
    };
    let y = if p.n1 >= 0 {
        [h.pow(p.n1 as u32), &lam(p.a)? * &h.pow((p.n1 + p.n2) as u32), lam(p.b)?]
    } else {
        [SparsePoly::one(1), &lam(p.a)? * &h.pow(p.n2 as u32), &lam(p.b)? * &h.pow((-p.n1) as u32)]
    };
    // x_i = y_{perm[i]}
    let perm = pv.permutation;
    Ok([y[perm[0]].clone(), y[perm[1]].clone(), y[perm[2]].clone()])
}

pub fn classify(g: &SparsePoly, comps: &[SparsePoly; 3]) -> Witness {
    let value = g.compose(comps);
    let max_deg = comps.iter().map(|c| c.degree()).max().unwrap_or(0);
    let outcome = if value.is_zero() {
        WitnessOutcome::Vanishes
    } else if value.degree() < g.degree() * max_deg {
        WitnessOutcome::DegreeDrop
    } else if value.degree() > 0 && !is_squarefree(&value) {
        WitnessOutcome::RepeatedZero
    } else {
        WitnessOutcome::Clean
    };
    Witness { components: comps.clone(), value, outcome }
}

pub fn witnesses(g: &SparsePoly, c: &CurveSpec) -> Result<Vec<Witness>> {
    default_parameters().iter().map(|h| Ok(classify(g, &witness_curve(c, h)?))).collect()
}

pub fn gauss_constant(c: &GaussRat) -> SparsePoly {
    SparsePoly::constant(1, c.clone())
}
