//! The logarithmic differential operator `D_u` over a formal first-order symbol ring.
//!
//! A polynomial `F = sum a_i x^i` in `x_0..x_n` has `D_u(F) = sum (a_i' + a_i sum_j i_j w_j) x^i`,
//! where `w_j` stands for `u_j'/u_j` and `u_0 = 1`. Coefficients live in
//! `Q(i)[w_1..w_n, lambda, lambda^-1, lambda', s]`.

use num_complex::Complex64;

use crate::algebra::gauss::GaussRat;
use crate::algebra::gcd::gcd;
use crate::algebra::io::PolyDoc;
use crate::algebra::poly::SparsePoly;
use crate::algebra::squarefree::is_squarefree;
use crate::error::{Error, Result};
use crate::nevanlinna::mero::MeroFn;

/// Variable layout `[x_0..x_n, w_1..w_n, lambda, lambda_inv, lambda_p, s]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiffRing {
    pub n: usize,
}

impl DiffRing {
    pub fn new(n: usize) -> Self {
        DiffRing { n }
    }
    pub fn num_vars(&self) -> usize {
        2 * self.n + 5
    }
    pub fn x(&self, i: usize) -> usize {
        assert!(i <= self.n);
        i
    }
    pub fn w(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.n);
        self.n + j
    }
    pub fn lambda(&self) -> usize {
        2 * self.n + 1
    }
    pub fn lambda_inv(&self) -> usize {
        2 * self.n + 2
    }
    pub fn lambda_p(&self) -> usize {
        2 * self.n + 3
    }
    pub fn s(&self) -> usize {
        2 * self.n + 4
    }
    pub fn is_x(&self, v: usize) -> bool {
        v <= self.n
    }

    /// Generator names in file order.
    pub fn symbol_names(&self) -> Vec<String> {
        let mut v: Vec<String> = (0..=self.n).map(|i| format!("x{i}")).collect();
        v.extend((1..=self.n).map(|j| format!("w{j}")));
        v.extend(["lambda", "lambdainv", "lambdap", "s"].map(String::from));
        v
    }

    pub fn var(&self, v: usize) -> DiffPoly {
        DiffPoly { ring: *self, poly: SparsePoly::var(self.num_vars(), v) }
    }

    pub fn constant(&self, c: GaussRat) -> DiffPoly {
        DiffPoly { ring: *self, poly: SparsePoly::constant(self.num_vars(), c) }
    }

    /// Embeds a constant-coefficient polynomial in `x_0..x_n`.
    pub fn embed(&self, f: &SparsePoly) -> Result<DiffPoly> {
        if f.num_vars() != self.n + 1 {
            return Err(Error::VarMismatch(f.num_vars(), self.n + 1));
        }
        let map: Vec<usize> = (0..=self.n).collect();
        Ok(DiffPoly { ring: *self, poly: f.remap(self.num_vars(), &map) })
    }
}

/// A polynomial in the `x` variables with coefficients in the symbol ring.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffPoly {
    pub ring: DiffRing,
    pub poly: SparsePoly,
}

impl DiffPoly {
    pub fn new(ring: DiffRing, poly: SparsePoly) -> Result<DiffPoly> {
        if poly.num_vars() != ring.num_vars() {
            return Err(Error::VarMismatch(poly.num_vars(), ring.num_vars()));
        }
        Ok(DiffPoly { ring, poly }.normalized())
    }

    /// Cancels `lambda * lambda_inv`.
    pub fn normalized(&self) -> DiffPoly {
        let (l, li) = (self.ring.lambda(), self.ring.lambda_inv());
        let poly = SparsePoly::from_terms(
            self.poly.num_vars(),
            self.poly.terms().iter().map(|(e, c)| {
                let mut e = e.clone();
                let k = e[l].min(e[li]);
                e[l] -= k;
                e[li] -= k;
                (e, c.clone())
            }),
        );
        DiffPoly { ring: self.ring, poly }
    }

    pub fn add(&self, o: &DiffPoly) -> DiffPoly {
        DiffPoly { ring: self.ring, poly: &self.poly + &o.poly }.normalized()
    }

    pub fn sub(&self, o: &DiffPoly) -> DiffPoly {
        DiffPoly { ring: self.ring, poly: &self.poly - &o.poly }.normalized()
    }

    pub fn mul(&self, o: &DiffPoly) -> DiffPoly {
        DiffPoly { ring: self.ring, poly: &self.poly * &o.poly }.normalized()
    }

    pub fn scale(&self, c: &GaussRat) -> DiffPoly {
        DiffPoly { ring: self.ring, poly: self.poly.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Total degree in the `x` variables.
    pub fn x_degree(&self) -> u32 {
        self.poly.terms().keys().map(|e| e[..=self.ring.n].iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn to_doc(&self) -> PolyDoc {
        let mut d = PolyDoc::from_poly(&self.poly);
        d.symbols = Some(self.ring.symbol_names());
        d
    }

    pub fn from_doc(doc: &PolyDoc) -> Result<DiffPoly> {
        let poly = doc.to_poly()?;
        if poly.num_vars() < 5 || (poly.num_vars() - 5) % 2 != 0 {
            return Err(Error::Parse(format!("{} variables do not fit the symbol layout", poly.num_vars())));
        }
        let ring = DiffRing::new((poly.num_vars() - 5) / 2);
        if let Some(names) = &doc.symbols {
            if *names != ring.symbol_names() {
                return Err(Error::Parse(format!("symbol header {names:?} does not match the expected order")));
            }
        }
        DiffPoly::new(ring, poly)
    }
}

/// Formal derivative of a single symbol monomial `c * lambda^a lambda_inv^b`.
fn derive_symbol_term(ring: &DiffRing, e: &[u32], c: &GaussRat, out: &mut SparsePoly) -> Result<()> {
    for j in 1..=ring.n {
        if e[ring.w(j)] > 0 {
            return Err(Error::NotDifferentiable(format!("w{j}")));
        }
    }
    if e[ring.s()] > 0 {
        return Err(Error::NotDifferentiable("s".into()));
    }
    if e[ring.lambda_p()] > 0 {
        return Err(Error::NotDifferentiable("lambdap".into()));
    }
    let (l, li, lp) = (ring.lambda(), ring.lambda_inv(), ring.lambda_p());
    let n = out.num_vars();
    if e[l] > 0 {
        let mut e2 = e.to_vec();
        e2[l] -= 1;
        e2[lp] += 1;
        *out = &*out + &SparsePoly::monomial(n, e2, c.scale_int(e[l] as i64));
    }
    if e[li] > 0 {
        let mut e2 = e.to_vec();
        e2[li] += 1;
        e2[lp] += 1;
        *out = &*out + &SparsePoly::monomial(n, e2, c.scale_int(-(e[li] as i64)));
    }
    Ok(())
}

/// `D_u(F)`.
pub fn apply_du(f: &DiffPoly) -> Result<DiffPoly> {
    let ring = f.ring;
    let nv = ring.num_vars();
    let mut out = SparsePoly::zero(nv);
    for (e, c) in f.poly.terms() {
        derive_symbol_term(&ring, e, c, &mut out)?;
        for j in 1..=ring.n {
            let k = e[ring.x(j)];
            if k > 0 {
                let mut e2 = e.clone();
                e2[ring.w(j)] += 1;
                out = &out + &SparsePoly::monomial(nv, e2, c.scale_int(k as i64));
            }
        }
    }
    Ok(DiffPoly { ring, poly: out }.normalized())
}

/// `D_u(FG) == D_u(F) G + F D_u(G)`, checked exactly.
pub fn check_product_rule(f: &DiffPoly, g: &DiffPoly) -> Result<bool> {
    let lhs = apply_du(&f.mul(g))?;
    let rhs = apply_du(f)?.mul(g).add(&f.mul(&apply_du(g)?));
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoprimalityReport {
    Coprime,
    /// Exponent tuple `(m_1..m_n)` with `u_1^m_1 ... u_n^m_n` constant along the obstruction.
    MonomialRelation(Vec<i64>),
}

fn validate_lemma_hypotheses(f: &SparsePoly) -> Result<()> {
    if f.is_zero() || f.is_constant() {
        return Err(Error::InvalidInput("polynomial must be non-constant".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::InvalidInput("polynomial is not homogeneous".into()));
    }
    if f.monomial_content().iter().any(|&k| k > 0) {
        return Err(Error::InvalidInput("polynomial has a monomial factor".into()));
    }
    if !is_squarefree(f) {
        return Err(Error::InvalidInput("polynomial has a repeated factor".into()));
    }
    Ok(())
}

fn relation_from_common_factor(h: &SparsePoly, n: usize) -> CoprimalityReport {
    // every term of an invariant factor has the same weight, so two terms give the relation
    let mut it = h.terms().keys().rev();
    let a = it.next().unwrap();
    let b = it.next().expect("a factor without monomial content has two terms");
    let mut m: Vec<i64> = (1..=n).map(|j| a[j] as i64 - b[j] as i64).collect();
    if m.iter().find(|&&k| k != 0).is_some_and(|&k| k < 0) {
        m.iter_mut().for_each(|k| *k = -*k);
    }
    CoprimalityReport::MonomialRelation(m)
}

/// Decides whether `F` and `D_u(F)` are coprime with the `w_j` kept formal.
pub fn coprime_with_du(f: &SparsePoly) -> Result<CoprimalityReport> {
    validate_lemma_hypotheses(f)?;
    let ring = DiffRing::new(f.num_vars() - 1);
    let ff = ring.embed(f)?;
    let d = apply_du(&ff)?;
    let h = gcd(&ff.poly, &d.poly);
    if h.degree() == 0 {
        return Ok(CoprimalityReport::Coprime);
    }
    let h_x = SparsePoly::from_terms(ring.n + 1, h.terms().iter().map(|(e, c)| (e[..=ring.n].to_vec(), c.clone())));
    Ok(relation_from_common_factor(&h_x, ring.n))
}

/// Same decision after binding each `w_j` to a value (`u_j = e^{w_j z}` for constant `w_j`).
pub fn coprime_with_du_bound(f: &SparsePoly, w: &[GaussRat]) -> Result<CoprimalityReport> {
    validate_lemma_hypotheses(f)?;
    let n = f.num_vars() - 1;
    if w.len() != n {
        return Err(Error::VarMismatch(w.len(), n));
    }
    let d = SparsePoly::from_terms(
        n + 1,
        f.terms().iter().map(|(e, c)| {
            let mut weight = GaussRat::zero();
            for j in 1..=n {
                weight += &w[j - 1].scale_int(e[j] as i64);
            }
            (e.clone(), c * &weight)
        }),
    );
    if d.is_zero() {
        return Ok(relation_from_common_factor(f, n));
    }
    let h = gcd(f, &d);
    if h.degree() == 0 {
        return Ok(CoprimalityReport::Coprime);
    }
    Ok(relation_from_common_factor(&h, n))
}

/// Evaluates `D_u(F)` at `u` with `w_j = u_j'/u_j`.
fn du_value(dpoly: &DiffPoly, u: &[Complex64], w: &[Complex64]) -> Complex64 {
    let ring = dpoly.ring;
    let mut point = vec![Complex64::new(0.0, 0.0); ring.num_vars()];
    point[..=ring.n].copy_from_slice(u);
    for j in 1..=ring.n {
        point[ring.w(j)] = w[j - 1];
    }
    dpoly.poly.eval_c64(&point)
}

/// Largest relative residual of `F(u)' = D_u(F)(u)` over the samples; `u_0` must be 1.
pub fn verify_du_numeric(f: &SparsePoly, u: &[MeroFn], samples: &[Complex64]) -> Result<f64> {
    let n = f.num_vars() - 1;
    if u.len() != n + 1 {
        return Err(Error::VarMismatch(u.len(), n + 1));
    }
    if u[0] != MeroFn::one() {
        return Err(Error::InvalidInput("the first component must be 1".into()));
    }
    let ring = DiffRing::new(n);
    let d = apply_du(&ring.embed(f)?)?;
    let grads: Vec<SparsePoly> = (0..=n).map(|i| f.partial_derivative(i)).collect();
    let mut worst: f64 = 0.0;
    for &z in samples {
        let uv: Vec<Complex64> = u.iter().map(|g| g.eval(z)).collect();
        if uv.iter().any(|v| !v.is_finite() || v.norm() == 0.0) {
            log::warn!("skipping sample {z}: zero or pole of a component");
            continue;
        }
        let w: Vec<Complex64> = u[1..].iter().map(|g| g.log_derivative_at(z)).collect();
        let lhs: Complex64 = (0..=n).map(|i| grads[i].eval_c64(&uv) * uv[i] * if i == 0 { Complex64::new(0.0, 0.0) } else { w[i - 1] }).sum();
        let rhs = du_value(&d, &uv, &w);
        worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
    }
    Ok(worst)
}

/// Largest relative residual of `G(g)' = d (g_0'/g_0) G(g) + D_u(G)(g)` with `u = g/g_0`.
pub fn verify_dug_numeric(gp: &SparsePoly, g: &[MeroFn], samples: &[Complex64]) -> Result<f64> {
    let n = gp.num_vars() - 1;
    if g.len() != n + 1 || !gp.is_homogeneous() {
        return Err(Error::InvalidInput("need a homogeneous polynomial and n+1 components".into()));
    }
    let deg = gp.degree() as f64;
    let ring = DiffRing::new(n);
    let d = apply_du(&ring.embed(gp)?)?;
    let grads: Vec<SparsePoly> = (0..=n).map(|i| gp.partial_derivative(i)).collect();
    let mut worst: f64 = 0.0;
    for &z in samples {
        let gv: Vec<Complex64> = g.iter().map(|h| h.eval(z)).collect();
        if gv.iter().any(|v| !v.is_finite() || v.norm() == 0.0) {
            log::warn!("skipping sample {z}: zero or pole of a component");
            continue;
        }
        let lg: Vec<Complex64> = g.iter().map(|h| h.log_derivative_at(z)).collect();
        let lhs: Complex64 = (0..=n).map(|i| grads[i].eval_c64(&gv) * gv[i] * lg[i]).sum();
        let w: Vec<Complex64> = (1..=n).map(|j| lg[j] - lg[0]).collect();
        let rhs = deg * lg[0] * gp.eval_c64(&gv) + du_value(&d, &gv, &w);
        worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;
    use crate::algebra::resultant::resultant;

    fn quadric() -> SparsePoly {
        let x = vars(3);
        &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2])
    }

    #[test]
    fn quadric_twist() {
        let ring = DiffRing::new(2);
        let d = apply_du(&ring.embed(&quadric()).unwrap()).unwrap();
        let two = GaussRat::from_int(2);
        let x1 = ring.var(1);
        let x2 = ring.var(2);
        let expected = x1.mul(&x1).mul(&ring.var(ring.w(1))).scale(&two).add(&x2.mul(&x2).mul(&ring.var(ring.w(2))).scale(&two));
        assert_eq!(d, expected);
    }

    #[test]
    fn constants_vanish() {
        let ring = DiffRing::new(2);
        assert!(apply_du(&ring.constant(GaussRat::from_int(7))).unwrap().is_zero());
    }

    #[test]
    fn lambda_coefficient() {
        let ring = DiffRing::new(2);
        let f = ring.var(ring.lambda()).mul(&ring.var(1)).mul(&ring.var(2));
        let d = apply_du(&f).unwrap();
        let coeff = ring.var(ring.lambda_p()).add(&ring.var(ring.lambda()).mul(&ring.var(ring.w(1)).add(&ring.var(ring.w(2)))));
        assert_eq!(d, coeff.mul(&ring.var(1)).mul(&ring.var(2)));
    }

    #[test]
    fn lambda_inverse_normalizes() {
        let ring = DiffRing::new(1);
        let l = ring.var(ring.lambda());
        let li = ring.var(ring.lambda_inv());
        assert_eq!(l.mul(&li), ring.constant(GaussRat::one()));
        // (lambda^-1)' = -lambda' lambda^-2
        let d = apply_du(&li).unwrap();
        assert_eq!(d, ring.var(ring.lambda_p()).mul(&li).mul(&li).scale(&GaussRat::from_int(-1)));
        assert!(check_product_rule(&l, &li).unwrap());
    }

    #[test]
    fn opaque_symbols_rejected() {
        let ring = DiffRing::new(2);
        assert!(matches!(apply_du(&ring.var(ring.w(1))), Err(Error::NotDifferentiable(_))));
        assert!(matches!(apply_du(&ring.var(ring.s())), Err(Error::NotDifferentiable(_))));
    }

    #[test]
    fn product_rule_examples() {
        let ring = DiffRing::new(2);
        assert!(check_product_rule(&ring.var(1), &ring.var(2)).unwrap());
        let q = ring.embed(&quadric()).unwrap();
        assert!(check_product_rule(&q, &q).unwrap());
    }

    #[test]
    fn lemma_dichotomy() {
        assert_eq!(coprime_with_du(&quadric()).unwrap(), CoprimalityReport::Coprime);
        let x = vars(3);
        let f = &(&x[0] * &x[1]) + &(&x[2] * &x[2]);
        assert_eq!(coprime_with_du(&f).unwrap(), CoprimalityReport::Coprime);
        // u = (e^{2z}, e^z) makes every term of x0 x1 + x2^2 carry weight 2
        let w = [GaussRat::from_int(2), GaussRat::one()];
        assert_eq!(coprime_with_du_bound(&f, &w).unwrap(), CoprimalityReport::MonomialRelation(vec![1, -2]));
        let m = &(&x[0] * &x[0]) * &x[1];
        assert!(matches!(coprime_with_du(&m), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn coprime_implies_nonzero_resultants() {
        let ring = DiffRing::new(2);
        let f = ring.embed(&quadric()).unwrap();
        let d = apply_du(&f).unwrap();
        for v in 0..3 {
            assert!(!resultant(&f.poly, &d.poly, v).is_zero());
        }
    }

    #[test]
    fn numeric_identities() {
        let x = vars(2);
        let e = MeroFn::exp_linear(GaussRat::one());
        let r = verify_du_numeric(&x[1], &[MeroFn::one(), e], &[Complex64::new(0.0, 0.0)]).unwrap();
        assert!(r < 1e-15);

        let u = [MeroFn::one(), MeroFn::z().powi(2).unwrap(), MeroFn::poly_int(&[-1, 1]).powi(2).unwrap()];
        let samples: Vec<Complex64> = (0..12).map(|k| Complex64::from_polar(0.7 + 0.3 * k as f64, 0.9 * k as f64 + 0.2)).collect();
        assert!(verify_du_numeric(&quadric(), &u, &samples).unwrap() < 1e-9);

        let g = [MeroFn::z(), MeroFn::z().powi(2).unwrap(), MeroFn::poly_int(&[1, 0, 1])];
        assert!(verify_dug_numeric(&quadric(), &g, &samples).unwrap() < 1e-9);
    }

    #[test]
    fn symbol_header_round_trip() {
        let ring = DiffRing::new(2);
        let f = ring.var(ring.lambda()).mul(&ring.var(1));
        let doc = f.to_doc();
        assert_eq!(DiffPoly::from_doc(&doc).unwrap(), f);
        let mut bad = doc.clone();
        bad.symbols = Some(vec!["nope".into()]);
        assert!(DiffPoly::from_doc(&bad).is_err());
    }
}
