//! JSON documents for polynomials.
//!
//! `{"vars": n, "terms": [{"exp": [..], "re": "p/q", "im": "r/s"}]}`; Laurent
//! documents carry `"laurent": true` and may use negative exponents.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::gauss::GaussRat;
use super::laurent::LaurentBivar;
use super::poly::SparsePoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exp: Vec<i64>,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".into()
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub vars: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub laurent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<String>>,
    pub terms: Vec<TermDoc>,
}

impl PolyDoc {
    pub fn from_poly(p: &SparsePoly) -> Self {
        PolyDoc {
            vars: p.num_vars(),
            laurent: false,
            symbols: None,
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| TermDoc {
                    exp: e.iter().map(|&k| k as i64).collect(),
                    re: c.re_string(),
                    im: c.im_string(),
                })
                .collect(),
        }
    }

    pub fn from_laurent(p: &LaurentBivar) -> Self {
        PolyDoc {
            vars: 2,
            laurent: true,
            symbols: None,
            terms: p
                .terms()
                .iter()
                .map(|(&(l, t), c)| TermDoc { exp: vec![l, t], re: c.re_string(), im: c.im_string() })
                .collect(),
        }
    }

    fn coeffs(&self) -> Result<Vec<(Vec<i64>, GaussRat)>> {
        self.terms
            .iter()
            .map(|t| {
                if t.exp.len() != self.vars {
                    return Err(Error::Parse(format!(
                        "exponent vector of length {} in a {}-variable document",
                        t.exp.len(),
                        self.vars
                    )));
                }
                Ok((t.exp.clone(), GaussRat::from_strings(&t.re, &t.im)?))
            })
            .collect()
    }

    pub fn to_poly(&self) -> Result<SparsePoly> {
        let terms = self.coeffs()?;
        let mut out = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(&k) = e.iter().find(|&&k| k < 0) {
                return Err(Error::NegativeExponent(k));
            }
            out.push((e.iter().map(|&k| k as u32).collect(), c));
        }
        Ok(SparsePoly::from_terms(self.vars, out))
    }

    pub fn to_laurent(&self) -> Result<LaurentBivar> {
        if self.vars != 2 {
            return Err(Error::Parse("Laurent documents must have two variables".into()));
        }
        Ok(LaurentBivar::from_terms(self.coeffs()?.into_iter().map(|(e, c)| ((e[0], e[1]), c))))
    }
}

pub fn poly_from_json(s: &str) -> Result<SparsePoly> {
    serde_json::from_str::<PolyDoc>(s).map_err(|e| Error::Parse(e.to_string()))?.to_poly()
}

pub fn poly_to_json(p: &SparsePoly) -> String {
    serde_json::to_string_pretty(&PolyDoc::from_poly(p)).expect("serializable")
}

pub fn read_poly(path: &Path) -> Result<SparsePoly> {
    poly_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_poly(path: &Path, p: &SparsePoly) -> Result<()> {
    std::fs::write(path, poly_to_json(p))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;

    #[test]
    fn round_trip() {
        let x = vars(3);
        let p = &(&x[0] * &x[1]).scale(&GaussRat::complex((1, 2), (-3, 5))) + &x[2];
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn laurent_round_trip() {
        let l = LaurentBivar::from_terms([((-2, 1), GaussRat::from_int(4)), ((0, 0), GaussRat::one())]);
        let doc = PolyDoc::from_laurent(&l);
        assert!(doc.laurent);
        assert_eq!(doc.to_laurent().unwrap(), l);
        assert!(doc.to_poly().is_err());
    }

    #[test]
    fn malformed_documents() {
        assert!(poly_from_json(r#"{"vars": 2, "terms": [{"exp": [1], "re": "1"}]}"#).is_err());
        assert!(poly_from_json(r#"{"vars": 1, "terms": [{"exp": [1], "re": "1/0"}]}"#).is_err());
        let p = poly_from_json(r#"{"vars": 1, "terms": [{"exp": [2], "re": "3/4"}]}"#).unwrap();
        assert_eq!(p.coeff(&[2]), GaussRat::from_frac(3, 4));
    }
}
