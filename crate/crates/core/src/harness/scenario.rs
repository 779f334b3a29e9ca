//! Scenario documents: the curve, the targeted inequality, polynomial inputs and parameters.

use std::path::Path;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::gauss::GaussRat;
use crate::algebra::io::PolyDoc;
use crate::algebra::parse::{parse_gauss, parse_projective, parse_univariate};
use crate::algebra::poly::SparsePoly;
use crate::constants::parse_rational;
use crate::error::{Error, Result};
use crate::nevanlinna::mero::MeroDoc;
use crate::nevanlinna::{ExpSum, MeroFn, RadiusGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "Thm1.5-i")]
    TruncationDefect,
    #[serde(rename = "Thm1.5-ii")]
    TruncatedLowerBound,
    #[serde(rename = "Thm4.1")]
    GcdBound,
    #[serde(rename = "Prop3.1")]
    LogDerivative,
    #[serde(rename = "Lemma3.3")]
    Borel,
    #[serde(rename = "Thm2.2")]
    TruncatedBorel,
    #[serde(rename = "Thm2.3-instance", alias = "Thm2.3")]
    HypersurfaceSmt,
}

impl Target {
    pub fn label(&self) -> &'static str {
        match self {
            Target::TruncationDefect => "Thm1.5-i",
            Target::TruncatedLowerBound => "Thm1.5-ii",
            Target::GcdBound => "Thm4.1",
            Target::LogDerivative => "Prop3.1",
            Target::Borel => "Lemma3.3",
            Target::TruncatedBorel => "Thm2.2",
            Target::HypersurfaceSmt => "Thm2.3-instance",
        }
    }
}

/// A polynomial as text (`"x0^2 + x1^2"`) or as a term document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Text(String),
    Doc(PolyDoc),
}

impl PolyInput {
    pub fn resolve(&self, num_vars: usize) -> Result<SparsePoly> {
        let p = match self {
            PolyInput::Text(s) => parse_projective(s, num_vars)?,
            PolyInput::Doc(d) => d.to_poly()?,
        };
        if p.num_vars() != num_vars {
            return Err(Error::VarMismatch(num_vars, p.num_vars()));
        }
        Ok(p)
    }
}

fn one() -> String {
    "1".into()
}

fn one_i64() -> i64 {
    1
}

/// `scalar * poly^power * exp(exp)` with text fields in `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompactFn {
    #[serde(default = "one")]
    pub scalar: String,
    #[serde(default)]
    pub poly: Option<String>,
    #[serde(default = "one_i64")]
    pub power: i64,
    #[serde(default)]
    pub exp: Option<String>,
}

/// One entry of a curve: a polynomial in `z`, a compact product, a full document, or a sum of these.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FnSpec {
    Text(String),
    Sum { sum: Vec<FnSpec> },
    Doc(MeroDoc),
    Compact(CompactFn),
}

impl FnSpec {
    /// As a function of the factored class; sums of several exponential parts are rejected.
    pub fn mero(&self) -> Result<MeroFn> {
        match self {
            FnSpec::Text(s) => MeroFn::poly(&parse_univariate(s)?),
            FnSpec::Doc(d) => MeroFn::from_doc(d),
            FnSpec::Compact(c) => {
                let scalar = parse_gauss(&c.scalar)?;
                let poly = match &c.poly {
                    Some(p) => parse_univariate(p)?,
                    None => SparsePoly::one(1),
                };
                let exp = match &c.exp {
                    Some(q) => parse_univariate(q)?,
                    None => SparsePoly::zero(1),
                };
                if poly.is_zero() || scalar.is_zero() {
                    return Ok(MeroFn::zero());
                }
                MeroFn::from_parts(scalar, vec![(poly, c.power)], exp)
            }
            FnSpec::Sum { sum } => {
                let e = self.entire()?;
                e.as_mero().ok_or_else(|| Error::InvalidInput(format!("sum of {} terms leaves the factored class", sum.len())))
            }
        }
    }

    /// As an exponential sum (entire functions only).
    pub fn entire(&self) -> Result<ExpSum> {
        match self {
            FnSpec::Sum { sum } => {
                let mut acc = ExpSum::zero();
                for s in sum {
                    acc = acc.add(&s.entire()?);
                }
                Ok(acc)
            }
            other => ExpSum::from_mero(&other.mero()?),
        }
    }
}

pub fn constant_fn(c: &GaussRat) -> ExpSum {
    ExpSum::from_mero(&MeroFn::constant(c.clone())).expect("constants are entire")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { r_min: 2.0, r_max: 200.0, count: 20 }
    }
}

impl GridSpec {
    pub fn build(&self) -> Result<RadiusGrid> {
        RadiusGrid::log_spaced(self.r_min, self.r_max, self.count)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Exact rational, e.g. `"1/10"`.
    #[serde(default)]
    pub eps: Option<String>,
    /// Minimum zero multiplicity of the curve components.
    #[serde(default)]
    pub ell: Option<u32>,
    #[serde(default)]
    pub grid: GridSpec,
    /// Start of gated rows; defaults to the geometric midpoint of the grid.
    #[serde(default)]
    pub r_pass: Option<f64>,
    /// Bound on `|n1| + |n2|` for the exceptional set; `0` skips the membership test.
    #[serde(default)]
    pub w_bound: Option<u32>,
    /// Truncation level `M` of the counting functions.
    #[serde(default)]
    pub truncation: Option<u32>,
    /// `C` in the `C log T + C'` error term.
    #[serde(default)]
    pub log_coeff: Option<f64>,
    /// `C'` in the `C log T + C'` error term.
    #[serde(default)]
    pub offset: Option<f64>,
    #[serde(default)]
    pub c3: Option<String>,
    /// Bound on `|m_1| + ... + |m_n|` for the degeneracy scan.
    #[serde(default)]
    pub scan_bound: Option<u32>,
    /// Index `i` of the Borel relation whose ratios are bounded.
    #[serde(default)]
    pub index: Option<usize>,
    /// Exponent vectors of the monomial family behind the gcd constants.
    #[serde(default)]
    pub family: Option<Vec<Vec<i64>>>,
}

impl Params {
    pub fn eps(&self, default: &str) -> Result<BigRational> {
        parse_rational(self.eps.as_deref().unwrap_or(default))
    }

    pub fn eps_f64(&self, default: &str) -> Result<f64> {
        Ok(self.eps(default)?.to_f64().unwrap_or(f64::NAN))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub target: Target,
    #[serde(default)]
    pub description: Option<String>,
    /// Components `g_0, ..., g_n` (or `f_0, ...` for Borel targets).
    #[serde(default)]
    pub curve: Vec<FnSpec>,
    /// `G` for the truncation theorems, second form for the gcd bound.
    #[serde(default)]
    pub g: Option<PolyInput>,
    /// First form for the gcd bound.
    #[serde(default)]
    pub f: Option<PolyInput>,
    #[serde(default)]
    pub hypersurfaces: Vec<PolyInput>,
    /// The single function of the logarithmic-derivative estimate.
    #[serde(default)]
    pub function: Option<FnSpec>,
    /// Coefficients `a_i` of a Borel relation.
    #[serde(default)]
    pub coefficients: Vec<FnSpec>,
    #[serde(default)]
    pub params: Params,
    /// Expected verdict label or `"error"`, checked by the regression tests.
    #[serde(default)]
    pub expect: Option<String>,
}

impl Scenario {
    pub fn from_json(s: &str) -> Result<Scenario> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        Scenario::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn curve_entire(&self) -> Result<Vec<ExpSum>> {
        self.curve.iter().map(|c| c.entire()).collect()
    }

    /// The curve in the factored class, when every component lies there.
    pub fn curve_mero(&self) -> Option<Vec<MeroFn>> {
        self.curve.iter().map(|c| c.mero().ok()).collect()
    }

    pub fn poly(&self, p: &Option<PolyInput>, what: &str) -> Result<SparsePoly> {
        p.as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("scenario `{}` needs `{what}`", self.name)))?
            .resolve(self.curve.len().max(3))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_compact_scenario() {
        let s = Scenario::from_json(
            r#"{"name": "t", "target": "Thm1.5-ii", "curve": ["1", "z", {"sum": ["1", {"exp": "z"}]}],
                "g": "x0^2 + x1^2 + x2^2", "params": {"eps": "1/10", "grid": {"r_min": 10, "r_max": 100, "count": 5}}}"#,
        )
        .unwrap();
        assert_eq!(s.target, Target::TruncatedLowerBound);
        assert_eq!(s.curve_entire().unwrap()[2].terms().len(), 2);
        assert!(s.curve_mero().is_none());
        assert_eq!(s.poly(&s.g, "g").unwrap().degree(), 2);
        assert!((s.params.eps_f64("1").unwrap() - 0.1).abs() < 1e-15);
        let back = Scenario::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn compact_function() {
        let f = FnSpec::Compact(CompactFn { scalar: "i".into(), poly: Some("z^2 - 1".into()), power: 3, exp: Some("2z".into()) });
        let m = f.mero().unwrap();
        assert_eq!(m.min_zero_multiplicity(), Some(3));
        assert!(m.is_entire());
        assert!(Scenario::from_json(r#"{"name": "x", "target": "Thm9"}"#).is_err());
    }
}
