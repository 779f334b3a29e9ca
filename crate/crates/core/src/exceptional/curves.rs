use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::gauss::GaussRat;
use crate::algebra::io::PolyDoc;
use crate::algebra::poly::SparsePoly;
use crate::algebra::roots::{factor_linear_forms, AlgebraicNumber, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::nevanlinna::MeroFn;

use super::normalize::{canonical_pairs, normalize_pair, NormalizedPair};
use super::substitution::{beta_loci, substitute, validate_plane_curve};

pub const SCHEMA: &str = "exceptional-set/1";

/// All orderings of three coordinates; variable `i` of `G` becomes variable `p[i]`.
pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveKind {
    MonomialRelation,
    Line,
    CoordinateLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Locus {
    Resultant,
    LambdaZero,
    LeadingCoefficient,
    TopForm,
    Coordinate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub n1: i64,
    pub n2: i64,
    pub permutation: [usize; 3],
    pub locus: Locus,
    pub root_index: usize,
}

/// `x^lhs = beta * x^rhs`, or `x_j = 0` for coordinate lines.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
    pub beta: Option<AlgebraicNumber>,
    pub provenance: Vec<Provenance>,
}

fn relation_in_pair_coords(n1: i64, n2: i64) -> (Vec<u32>, Vec<u32>) {
    if n1 >= 0 {
        (vec![0, n1 as u32, n2 as u32], vec![(n1 + n2) as u32, 0, 0])
    } else {
        (vec![(-n1 - n2) as u32, 0, n2 as u32], vec![0, (-n1) as u32, 0])
    }
}

/// Orientation: more variables on the left, then the lexicographically smaller side.
fn lhs_first(l: &[u32], r: &[u32]) -> bool {
    let support = |e: &[u32]| e.iter().filter(|&&k| k > 0).count();
    (support(l), std::cmp::Reverse(l)) > (support(r), std::cmp::Reverse(r))
}

fn pull_back(e: &[u32], p: &[usize; 3]) -> Vec<u32> {
    (0..3).map(|i| e[p[i]]).collect()
}

impl CurveSpec {
    pub fn coordinate_line(j: usize) -> CurveSpec {
        let mut e = vec![0; 3];
        e[j] = 1;
        CurveSpec {
            kind: CurveKind::CoordinateLine,
            lhs: e,
            rhs: vec![0; 3],
            beta: None,
            provenance: vec![Provenance { n1: 0, n2: 0, permutation: [0, 1, 2], locus: Locus::Coordinate, root_index: j }],
        }
    }

    /// The curve `u1^n1 u2^n2 = lambda` of the permuted problem, in the original coordinates.
    pub fn relation(kind: CurveKind, pair: &NormalizedPair, perm: [usize; 3], lambda: AlgebraicNumber, locus: Locus, root_index: usize) -> Result<CurveSpec> {
        let (a, b) = relation_in_pair_coords(pair.n1, pair.n2);
        let (mut lhs, mut rhs) = (pull_back(&a, &perm), pull_back(&b, &perm));
        let mut beta = lambda;
        if !lhs_first(&lhs, &rhs) {
            std::mem::swap(&mut lhs, &mut rhs);
            beta = beta.inverse()?;
        }
        Ok(CurveSpec {
            kind,
            lhs,
            rhs,
            beta: Some(beta),
            provenance: vec![Provenance { n1: pair.n1, n2: pair.n2, permutation: perm, locus, root_index }],
        })
    }

    pub fn same_curve(&self, o: &CurveSpec) -> bool {
        if self.lhs != o.lhs || self.rhs != o.rhs {
            return false;
        }
        match (&self.beta, &o.beta) {
            (None, None) => true,
            (Some(x), Some(y)) => x.same_as(y),
            _ => false,
        }
    }

    /// The value of `u1^n1 u2^n2` on this curve in the coordinates of provenance entry `k`.
    pub fn lambda_for(&self, k: usize) -> Result<Option<AlgebraicNumber>> {
        let pv = &self.provenance[k];
        let Some(beta) = &self.beta else { return Ok(None) };
        let (a, _) = relation_in_pair_coords(pv.n1, pv.n2);
        if pull_back(&a, &pv.permutation) == self.lhs {
            Ok(Some(beta.clone()))
        } else {
            Ok(Some(beta.inverse()?))
        }
    }

    /// Exact membership of a curve whose components are in the factored class.
    pub fn contains_map(&self, g: &[MeroFn]) -> Result<bool> {
        if g.len() != 3 {
            return Err(Error::VarMismatch(3, g.len()));
        }
        if self.kind == CurveKind::CoordinateLine {
            let j = self.lhs.iter().position(|&e| e == 1).unwrap();
            return Ok(g[j].is_zero());
        }
        let side = |e: &[u32]| -> Result<MeroFn> {
            let mut acc = MeroFn::one();
            for (gi, &k) in g.iter().zip(e) {
                if k > 0 {
                    acc = acc.mul(&gi.powi(k as i64)?);
                }
            }
            Ok(acc)
        };
        let (l, r) = (side(&self.lhs)?, side(&self.rhs)?);
        match (l.is_zero(), r.is_zero()) {
            (true, true) => return Ok(true),
            (true, false) | (false, true) => return Ok(false),
            _ => {}
        }
        let Some(c) = l.div(&r)?.as_constant() else { return Ok(false) };
        Ok(self.beta.as_ref().is_some_and(|b| b.same_as(&AlgebraicNumber::from_gauss(&c))))
    }

    pub fn describe(&self) -> String {
        let mono = |e: &[u32]| -> String {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            if parts.is_empty() { "1".into() } else { parts.join("*") }
        };
        match &self.beta {
            None => format!("{} = 0", mono(&self.lhs)),
            Some(b) => {
                let coef = match b.exact() {
                    Some(c) => format!("({c})"),
                    None => format!("({:.6}{:+.6}i)", b.center.re, b.center.im),
                };
                format!("{} = {}*{}", mono(&self.lhs), coef, mono(&self.rhs))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalSet {
    pub curves: Vec<CurveSpec>,
    pub source_poly: SparsePoly,
    pub bound: u32,
}

impl ExceptionalSet {
    fn insert(&mut self, c: CurveSpec) {
        if let Some(old) = self.curves.iter_mut().find(|o| o.same_curve(&c)) {
            for p in c.provenance {
                if !old.provenance.contains(&p) {
                    old.provenance.push(p);
                }
            }
        } else {
            self.curves.push(c);
        }
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn contains_curve(&self, c: &CurveSpec) -> bool {
        self.curves.iter().any(|o| o.same_curve(c))
    }

    /// Curves containing the image of `g`; empty when the image escapes every listed curve.
    pub fn member_of(&self, g: &[MeroFn]) -> Result<Vec<&CurveSpec>> {
        if g.iter().all(|f| f.is_zero()) {
            return Err(Error::InvalidInput("all components vanish".into()));
        }
        let mut out = Vec::new();
        for c in &self.curves {
            if c.contains_map(g)? {
                out.push(c);
            }
        }
        Ok(out)
    }

    pub fn to_doc(&self) -> ExceptionalSetDoc {
        ExceptionalSetDoc {
            schema: SCHEMA.into(),
            source_poly: PolyDoc::from_poly(&self.source_poly),
            bound: self.bound,
            curves: self
                .curves
                .iter()
                .map(|c| CurveDoc {
                    kind: c.kind,
                    equation: c.describe(),
                    lhs: c.lhs.clone(),
                    rhs: c.rhs.clone(),
                    beta: c.beta.as_ref().map(|b| BetaDoc {
                        poly: PolyDoc::from_poly(&b.poly),
                        re: b.center.re,
                        im: b.center.im,
                        radius: b.radius,
                    }),
                    provenance: c.provenance.clone(),
                })
                .collect(),
        }
    }

    pub fn from_doc(d: &ExceptionalSetDoc) -> Result<ExceptionalSet> {
        if d.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {}", d.schema)));
        }
        let curves = d
            .curves
            .iter()
            .map(|c| {
                let beta = match &c.beta {
                    Some(b) => Some(AlgebraicNumber { poly: b.poly.to_poly()?, center: Complex64::new(b.re, b.im), radius: b.radius }),
                    None => None,
                };
                Ok(CurveSpec { kind: c.kind, lhs: c.lhs.clone(), rhs: c.rhs.clone(), beta, provenance: c.provenance.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExceptionalSet { curves, source_poly: d.source_poly.to_poly()?, bound: d.bound })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<ExceptionalSet> {
        ExceptionalSet::from_doc(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BetaDoc {
    pub poly: PolyDoc,
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveDoc {
    pub kind: CurveKind,
    pub equation: String,
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
    pub beta: Option<BetaDoc>,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExceptionalSetDoc {
    pub schema: String,
    pub source_poly: PolyDoc,
    pub bound: u32,
    pub curves: Vec<CurveDoc>,
}

/// Lines `X = delta Y` through the roots of the top-degree form of `G(1, X, Y)`, over all orderings.
pub fn delta_lines(g: &SparsePoly) -> Result<Vec<CurveSpec>> {
    validate_plane_curve(g)?;
    let pair = normalize_pair(-1, 1)?;
    let mut out: Vec<CurveSpec> = Vec::new();
    for perm in PERMUTATIONS {
        let gp = g.remap(3, &perm);
        let top = SparsePoly::from_terms(3, gp.terms().iter().filter(|(e, _)| e[0] == 0).map(|(e, c)| (e.clone(), c.clone())));
        let lf = factor_linear_forms(&top, 1, 2, DEFAULT_TOL)?;
        for (k, delta) in lf.deltas.numbers().into_iter().enumerate() {
            if delta.is_zero() {
                continue;
            }
            // X = delta Y is u2 / u1 = 1 / delta
            let c = CurveSpec::relation(CurveKind::Line, &pair, perm, delta.inverse()?, Locus::TopForm, k)?;
            match out.iter_mut().find(|o| o.same_curve(&c)) {
                Some(o) => o.provenance.extend(c.provenance),
                None => out.push(c),
            }
        }
    }
    Ok(out)
}

/// The exceptional set: coordinate lines, the monomial-relation curves of every normalized
/// pair with `|n1| + |n2| <= bound` in every coordinate ordering, and the top-form lines.
pub fn build_w(g: &SparsePoly, bound: u32) -> Result<ExceptionalSet> {
    validate_plane_curve(g)?;
    if bound == 0 {
        return Err(Error::InvalidInput("the enumeration bound must be at least 1".into()));
    }
    let mut w = ExceptionalSet { curves: (0..3).map(CurveSpec::coordinate_line).collect(), source_poly: g.clone(), bound };
    for pair in canonical_pairs(bound) {
        for perm in PERMUTATIONS {
            let sub = substitute(&g.remap(3, &perm), &pair)?;
            let loci = beta_loci(&sub)?;
            for (locus, roots) in [(Locus::Resultant, &loci.alphas), (Locus::LambdaZero, &loci.gammas), (Locus::LeadingCoefficient, &loci.leading)] {
                for (k, lambda) in roots.numbers().into_iter().enumerate() {
                    if lambda.is_zero() {
                        continue;
                    }
                    w.insert(CurveSpec::relation(CurveKind::MonomialRelation, &pair, perm, lambda, locus, k)?);
                }
            }
        }
    }
    for c in delta_lines(g)? {
        w.insert(c);
    }
    Ok(w)
}

/// Exact relation `x^lhs = beta x^rhs` with a nonzero Gaussian-rational `beta`, oriented like built curves.
pub fn exact_relation(lhs: [u32; 3], rhs: [u32; 3], beta: GaussRat) -> CurveSpec {
    let (l, r, b) = if lhs_first(&lhs, &rhs) { (lhs, rhs, beta) } else { (rhs, lhs, beta.inv().expect("beta must be nonzero")) };
    CurveSpec { kind: CurveKind::MonomialRelation, lhs: l.to_vec(), rhs: r.to_vec(), beta: Some(AlgebraicNumber::from_gauss(&b)), provenance: vec![] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;

    fn quadric() -> SparsePoly {
        let x = vars(3);
        &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2])
    }

    #[test]
    fn delta_lines_of_quadric() {
        let ls = delta_lines(&quadric()).unwrap();
        assert_eq!(ls.len(), 6);
        let x1_eq_ix2 = exact_relation([0, 1, 0], [0, 0, 1], GaussRat::i());
        assert!(ls.iter().any(|c| c.same_curve(&x1_eq_ix2)));
    }

    #[test]
    fn coordinate_line_membership() {
        let c = CurveSpec::coordinate_line(2);
        assert!(c.contains_map(&[MeroFn::one(), MeroFn::z(), MeroFn::zero()]).unwrap());
        assert!(!c.contains_map(&[MeroFn::one(), MeroFn::z(), MeroFn::one()]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let w = build_w(&quadric(), 1).unwrap();
        let back = ExceptionalSet::from_json(&w.to_json()).unwrap();
        assert_eq!(back.len(), w.len());
        for c in &w.curves {
            assert!(back.contains_curve(c));
        }
    }
}
