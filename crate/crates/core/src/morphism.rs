//! Power morphisms `P -> [F1^a1 : F2^a2 : F3^a3]` of the plane: Jacobians, Euler identities,
//! intersection points of plane curves, general position, transversality and images of curves.

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::algebra::gauss::GaussRat;
use crate::algebra::gcd::{gcd, gcd_many};
use crate::algebra::poly::SparsePoly;
use crate::algebra::resultant::{det, resultant};
use crate::algebra::roots::{factor_linear_forms, roots_certified, DEFAULT_TOL};
use crate::algebra::squarefree::squarefree_decompose;
use crate::error::{Error, Result};

fn check_form(f: &SparsePoly) -> Result<()> {
    if f.num_vars() != 3 {
        return Err(Error::VarMismatch(3, f.num_vars()));
    }
    if f.is_zero() || !f.is_homogeneous() {
        return Err(Error::InvalidInput("expected a nonzero homogeneous form in x0, x1, x2".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerMorphism {
    pub f: [SparsePoly; 3],
    pub d: [u32; 3],
    pub a: [u32; 3],
}

impl PowerMorphism {
    /// Validates that the three forms have no common zero in the plane.
    pub fn new(f1: SparsePoly, f2: SparsePoly, f3: SparsePoly) -> Result<PowerMorphism> {
        let m = PowerMorphism::new_unchecked(f1, f2, f3)?;
        if gcd(&m.f[0], &m.f[1]).degree() > 0 {
            return Err(Error::InvalidInput("F1 and F2 share a component, so all three forms have a common zero".into()));
        }
        for p in intersection_points(&m.f[0], &m.f[1])? {
            if p.on_curve(&m.f[2]) {
                return Err(Error::InvalidInput(format!("F1, F2, F3 vanish together at {}", p.describe())));
            }
        }
        Ok(m)
    }

    /// Only checks homogeneity and positive degrees.
    pub fn new_unchecked(f1: SparsePoly, f2: SparsePoly, f3: SparsePoly) -> Result<PowerMorphism> {
        let f = [f1, f2, f3];
        for fi in &f {
            check_form(fi)?;
            if fi.degree() == 0 {
                return Err(Error::InvalidInput("components must have positive degree".into()));
            }
        }
        let d = [f[0].degree(), f[1].degree(), f[2].degree()];
        let l = d[0].lcm(&d[1]).lcm(&d[2]);
        Ok(PowerMorphism { a: [l / d[0], l / d[1], l / d[2]], f, d })
    }

    pub fn lcm(&self) -> u32 {
        self.a[0] * self.d[0]
    }

    /// `F_i^{a_i}`.
    pub fn components(&self) -> [SparsePoly; 3] {
        [self.f[0].pow(self.a[0]), self.f[1].pow(self.a[1]), self.f[2].pow(self.a[2])]
    }
}

fn jacobian(f: &[SparsePoly; 3]) -> SparsePoly {
    det(f.iter().map(|fi| (0..3).map(|j| fi.partial_derivative(j)).collect()).collect(), 3)
}

/// `det(dF_i/dx_j)` when `reduced`, else `det(d(F_i^{a_i})/dx_j)`.
pub fn jacobian_det(m: &PowerMorphism, reduced: bool) -> SparsePoly {
    if reduced {
        jacobian(&m.f)
    } else {
        jacobian(&m.components())
    }
}

/// `prod a_i F_i^{a_i - 1}`, the ratio between the full and reduced Jacobians.
pub fn jacobian_ratio(m: &PowerMorphism) -> SparsePoly {
    let mut acc = SparsePoly::one(3);
    for i in 0..3 {
        acc = &acc * &m.f[i].pow(m.a[i] - 1).scale(&GaussRat::from_int(m.a[i] as i64));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    /// `sum_j x_j dF_i/dx_j = d_i F_i` for each `i`.
    pub euler: [bool; 3],
    /// `x_k J = det` with column `k` replaced by `d_i F_i`, for each `k`.
    pub column_identity: [bool; 3],
}

impl EulerReport {
    pub fn all(&self) -> bool {
        self.euler.iter().chain(&self.column_identity).all(|&b| b)
    }
}

pub fn euler_identity_check(m: &PowerMorphism) -> EulerReport {
    let x: Vec<SparsePoly> = (0..3).map(|i| SparsePoly::var(3, i)).collect();
    let mut euler = [false; 3];
    for i in 0..3 {
        let mut s = SparsePoly::zero(3);
        for (j, xj) in x.iter().enumerate() {
            s = &s + &(&m.f[i].partial_derivative(j) * xj);
        }
        euler[i] = s == m.f[i].scale(&GaussRat::from_int(m.d[i] as i64));
    }
    let j = jacobian(&m.f);
    let mut column_identity = [false; 3];
    for k in 0..3 {
        let rows = (0..3)
            .map(|i| {
                (0..3)
                    .map(|c| if c == k { m.f[i].scale(&GaussRat::from_int(m.d[i] as i64)) } else { m.f[i].partial_derivative(c) })
                    .collect()
            })
            .collect();
        column_identity[k] = det(rows, 3) == &x[k] * &j;
    }
    EulerReport { euler, column_identity }
}

/// A point of the plane, exact when its coordinates were recognized in `Q(i)` and verified.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanePoint {
    pub coords: [Complex64; 3],
    pub exact: Option<[GaussRat; 3]>,
}

impl PlanePoint {
    fn scale_of(f: &SparsePoly, p: &[Complex64; 3]) -> f64 {
        let m = p.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
        let coef: f64 = f.terms().values().map(|c| c.to_c64().norm()).sum();
        coef * m.powi(f.degree() as i32)
    }

    /// Exact when possible, otherwise a relative residual test at `1e-8`.
    pub fn on_curve(&self, f: &SparsePoly) -> bool {
        if let Some(e) = &self.exact {
            return f.eval(e).is_zero();
        }
        f.eval_c64(&self.coords).norm() <= 1e-8 * PlanePoint::scale_of(f, &self.coords)
    }

    pub fn describe(&self) -> String {
        match &self.exact {
            Some(e) => format!("[{} : {} : {}]", e[0], e[1], e[2]),
            None => {
                let c = self.coords;
                format!("[{:.6} : {:.6} : {:.6}]", c[0], c[1], c[2])
            }
        }
    }

    fn same(&self, o: &PlanePoint) -> bool {
        // compare in the chart of the largest coordinate
        let k = (0..3).max_by(|&i, &j| self.coords[i].norm().partial_cmp(&self.coords[j].norm()).unwrap()).unwrap();
        if o.coords[k].norm() < 1e-12 {
            return false;
        }
        (0..3).all(|i| (self.coords[i] / self.coords[k] - o.coords[i] / o.coords[k]).norm() < 1e-7)
    }
}

fn newton2(f: &SparsePoly, g: &SparsePoly, mut p: [Complex64; 2]) -> [Complex64; 2] {
    let (f1, f2, g1, g2) = (f.partial_derivative(1), f.partial_derivative(2), g.partial_derivative(1), g.partial_derivative(2));
    for _ in 0..30 {
        let at = [Complex64::new(1.0, 0.0), p[0], p[1]];
        let (fv, gv) = (f.eval_c64(&at), g.eval_c64(&at));
        let (a, b, c, d) = (f1.eval_c64(&at), f2.eval_c64(&at), g1.eval_c64(&at), g2.eval_c64(&at));
        let dt = a * d - b * c;
        if dt.norm() == 0.0 {
            break;
        }
        let s0 = (d * fv - b * gv) / dt;
        let s1 = (a * gv - c * fv) / dt;
        p[0] -= s0;
        p[1] -= s1;
        if s0.norm() + s1.norm() < 1e-15 * (1.0 + p[0].norm() + p[1].norm()) {
            break;
        }
    }
    p
}

fn exact_point(f: &SparsePoly, g: &SparsePoly, nums: [Option<GaussRat>; 3]) -> Option<[GaussRat; 3]> {
    let [Some(a), Some(b), Some(c)] = nums else { return None };
    let p = [a, b, c];
    (f.eval(&p).is_zero() && g.eval(&p).is_zero()).then_some(p)
}

/// Intersection points of two plane curves without a common component.
pub fn intersection_points(f: &SparsePoly, g: &SparsePoly) -> Result<Vec<PlanePoint>> {
    check_form(f)?;
    check_form(g)?;
    if gcd(f, g).degree() > 0 {
        return Err(Error::NonProperIntersection(0, 1));
    }
    let one = GaussRat::one();
    let mut out: Vec<PlanePoint> = Vec::new();
    let push = |p: PlanePoint, out: &mut Vec<PlanePoint>| {
        if !out.iter().any(|q| q.same(&p)) {
            out.push(p);
        }
    };

    // chart x0 = 1
    let (fa, ga) = (f.specialize(0, &one), g.specialize(0, &one));
    let r1 = resultant(&fa, &ga, 2);
    let r2 = resultant(&fa, &ga, 1);
    if r1.degree() > 0 && r2.degree() > 0 {
        let xi = roots_certified(&r1, DEFAULT_TOL)?.numbers();
        let eta = roots_certified(&r2, DEFAULT_TOL)?.numbers();
        for a in &xi {
            for b in &eta {
                let at = [Complex64::new(1.0, 0.0), a.center, b.center];
                let tol = 1e-6;
                if fa.eval_c64(&at).norm() > tol * PlanePoint::scale_of(&fa, &at)
                    || ga.eval_c64(&at).norm() > tol * PlanePoint::scale_of(&ga, &at)
                {
                    continue;
                }
                let exact = exact_point(f, g, [Some(one.clone()), a.exact(), b.exact()]);
                let coords = match &exact {
                    Some(e) => [e[0].to_c64(), e[1].to_c64(), e[2].to_c64()],
                    None => {
                        let p = newton2(&fa, &ga, [a.center, b.center]);
                        [Complex64::new(1.0, 0.0), p[0], p[1]]
                    }
                };
                push(PlanePoint { coords, exact }, &mut out);
            }
        }
    }

    // line at infinity x0 = 0
    let (f0, g0) = (f.specialize(0, &GaussRat::zero()), g.specialize(0, &GaussRat::zero()));
    let h = match (f0.is_zero(), g0.is_zero()) {
        (true, true) => return Err(Error::NonProperIntersection(0, 1)),
        (true, false) => g0,
        (false, true) => f0,
        (false, false) => gcd(&f0, &g0),
    };
    if h.degree() > 0 {
        let lf = factor_linear_forms(&h, 1, 2, DEFAULT_TOL)?;
        for d in lf.deltas.numbers() {
            let exact = exact_point(f, g, [Some(GaussRat::zero()), d.exact(), Some(one.clone())]);
            push(PlanePoint { coords: [Complex64::new(0.0, 0.0), d.center, Complex64::new(1.0, 0.0)], exact }, &mut out);
        }
        if lf.y_multiplicity > 0 {
            let e = [GaussRat::zero(), one.clone(), GaussRat::zero()];
            push(PlanePoint { coords: [e[0].to_c64(), e[1].to_c64(), e[2].to_c64()], exact: Some(e) }, &mut out);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub pair: (usize, usize),
    pub other: usize,
    pub point: PlanePoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralPositionReport {
    pub points: Vec<((usize, usize), PlanePoint)>,
    pub violations: Vec<Violation>,
}

impl GeneralPositionReport {
    pub fn in_general_position(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pairwise intersections, each tested against every other curve.
pub fn general_position_check(curves: &[SparsePoly]) -> Result<GeneralPositionReport> {
    let mut points = Vec::new();
    let mut violations = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let pts = intersection_points(&curves[i], &curves[j]).map_err(|e| match e {
                Error::NonProperIntersection(_, _) => Error::NonProperIntersection(i, j),
                e => e,
            })?;
            for p in pts {
                for (k, c) in curves.iter().enumerate() {
                    if k != i && k != j && p.on_curve(c) && !violations.iter().any(|v: &Violation| v.point.same(&p) && v.other == k) {
                        violations.push(Violation { pair: (i, j), other: k, point: p.clone() });
                    }
                }
                points.push(((i, j), p));
            }
        }
    }
    Ok(GeneralPositionReport { points, violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Crossing {
    Transversal,
    Tangential,
    /// The minor is too small to separate from zero numerically.
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransversalityPoint {
    pub point: PlanePoint,
    pub minor: Complex64,
    pub verdict: Crossing,
}

/// The 2x2 Jacobian minor at each intersection point, in the chart of its largest coordinate.
pub fn transversality_check(f1: &SparsePoly, f2: &SparsePoly) -> Result<Vec<TransversalityPoint>> {
    let pts = intersection_points(f1, f2)?;
    let mut out = Vec::new();
    for p in pts {
        let k = (0..3).max_by(|&i, &j| p.coords[i].norm().partial_cmp(&p.coords[j].norm()).unwrap()).unwrap();
        let (u, v) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let d = [f1.partial_derivative(u), f1.partial_derivative(v), f2.partial_derivative(u), f2.partial_derivative(v)];
        let (minor, verdict) = match &p.exact {
            Some(e) => {
                let inv = e[k].inv().expect("chart coordinate is nonzero");
                let q: Vec<GaussRat> = e.iter().map(|c| c * &inv).collect();
                let vals: Vec<GaussRat> = d.iter().map(|di| di.eval(&q)).collect();
                let m = &(&vals[0] * &vals[3]) - &(&vals[1] * &vals[2]);
                let verdict = if m.is_zero() { Crossing::Tangential } else { Crossing::Transversal };
                (m.to_c64(), verdict)
            }
            None => {
                let q: Vec<Complex64> = p.coords.iter().map(|c| c / p.coords[k]).collect();
                let vals: Vec<Complex64> = d.iter().map(|di| di.eval_c64(&q)).collect();
                let m = vals[0] * vals[3] - vals[1] * vals[2];
                let scale = (vals[0].norm() + vals[1].norm()) * (vals[2].norm() + vals[3].norm());
                let verdict = if m.norm() > 1e-6 * scale.max(1e-300) { Crossing::Transversal } else { Crossing::Undecided };
                (m, verdict)
            }
        };
        out.push(TransversalityPoint { point: p, minor, verdict });
    }
    Ok(out)
}

/// The defining polynomial of the image curve and how it was obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct Pushforward {
    /// Homogeneous in `y0, y1, y2`; the lowest monomial has coefficient 1.
    pub a: SparsePoly,
    /// The eliminant carried `A` with multiplicity above one.
    pub exponent_reduced: bool,
    /// Largest `k` with `Z^k | A(F1^a1, F2^a2, F3^a3)`.
    pub vanishing_order: u32,
}

fn y_only(p: &SparsePoly) -> SparsePoly {
    SparsePoly::from_terms(3, p.terms().iter().map(|(e, c)| (e[3..6].to_vec(), c.clone())))
}

/// Scales so that the lex-smallest term has coefficient 1.
pub fn normalize_lowest(p: &SparsePoly) -> SparsePoly {
    match p.terms().iter().next() {
        Some((_, c)) => p.scale(&c.inv().expect("nonzero")),
        None => p.clone(),
    }
}

fn pullback(a: &SparsePoly, comps: &[SparsePoly; 3]) -> SparsePoly {
    a.compose(comps)
}

fn vanishes_on(z: &SparsePoly, p: &SparsePoly) -> bool {
    p.is_zero() || p.div_rem(z).1.is_zero()
}

/// Eliminant of one route: chart `x_k = 1`, incidence relations against base index `b`.
fn eliminate_route(p6: &[SparsePoly; 3], z6: &SparsePoly, k: usize, b: usize) -> Option<SparsePoly> {
    let one = GaussRat::one();
    let zc = z6.specialize(k, &one);
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let (mut u, mut v) = (others[0], others[1]);
    if zc.degree_in(v) == 0 {
        std::mem::swap(&mut u, &mut v);
    }
    if zc.degree_in(v) == 0 {
        return None;
    }
    let pc: Vec<SparsePoly> = p6.iter().map(|q| q.specialize(k, &one)).collect();
    let y = |i: usize| SparsePoly::var(6, 3 + i);
    let idx: Vec<usize> = (0..3).filter(|&i| i != b).collect();
    let h: Vec<SparsePoly> = idx.iter().map(|&i| &(&y(b) * &pc[i]) - &(&y(i) * &pc[b])).collect();
    let r1 = resultant(&zc, &h[0], v);
    let r2 = resultant(&zc, &h[1], v);
    let s = if r1.is_zero() || r2.is_zero() {
        SparsePoly::zero(6)
    } else if r1.degree_in(u) == 0 {
        r1
    } else if r2.degree_in(u) == 0 {
        r2
    } else {
        resultant(&r1, &r2, u)
    };
    Some(y_only(&s))
}

/// Image of the irreducible curve `Z` by iterated resultant elimination.
///
/// Nine routes (three charts, three incidence bases) each give an eliminant divisible by `A`;
/// their gcd is stripped of coordinate factors not vanishing along the image, reduced to its
/// squarefree part, and every surviving factor is checked to pull back into `(Z)`.
pub fn pushforward_curve(m: &PowerMorphism, z: &SparsePoly) -> Result<Pushforward> {
    check_form(z)?;
    if z.degree() == 0 {
        return Err(Error::InvalidInput("Z must have positive degree".into()));
    }
    let comps = m.components();
    // two independent linear equations cut out a point
    if equations_of_degree(&comps, z, 1).1.len() >= 2 {
        return Err(Error::EliminationCollapse("the image of Z is a point".into()));
    }
    let p6: [SparsePoly; 3] = [comps[0].remap(6, &[0, 1, 2]), comps[1].remap(6, &[0, 1, 2]), comps[2].remap(6, &[0, 1, 2])];
    let z6 = z.remap(6, &[0, 1, 2]);
    let mut elim = Vec::new();
    for k in 0..3 {
        for b in 0..3 {
            if let Some(s) = eliminate_route(&p6, &z6, k, b) {
                if !s.is_zero() {
                    elim.push(s);
                }
            }
        }
    }
    if elim.is_empty() {
        return Err(Error::EliminationCollapse("every elimination route vanished; the image of Z is a point".into()));
    }
    let g = gcd_many(3, elim.iter());
    if g.degree() == 0 {
        return Err(Error::EliminationCollapse("eliminants share no factor".into()));
    }
    let mc = g.monomial_content();
    let mut rest = g.shift_down(&mc);
    for (j, &e) in mc.iter().enumerate() {
        if e > 0 && vanishes_on(z, &comps[j]) {
            rest = &rest * &SparsePoly::var(3, j);
        }
    }
    let sf = squarefree_decompose(&rest);
    let exponent_reduced = sf.factors.iter().any(|(_, k)| *k > 1);
    let mut a = SparsePoly::one(3);
    for (q, _) in &sf.factors {
        if vanishes_on(z, &pullback(q, &comps)) {
            a = &a * q;
        }
    }
    if a.degree() == 0 {
        return Err(Error::InternalContradiction("no eliminant factor pulls back into (Z)".into()));
    }
    let a = normalize_lowest(&a);
    let pulled = pullback(&a, &comps);
    let mut vanishing_order = 0;
    let mut cur = pulled;
    while !cur.is_zero() && vanishing_order < 64 {
        match cur.div_exact(z) {
            Some(q) => {
                vanishing_order += 1;
                cur = q;
            }
            None => break,
        }
    }
    Ok(Pushforward { a, exponent_reduced, vanishing_order })
}

fn monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for k in (0..=deg).rev() {
        for mut rest in monomials(n - 1, deg - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Kernel of a matrix over `Q(i)` (rows of equal length).
fn nullspace(mut rows: Vec<Vec<GaussRat>>, ncols: usize) -> Vec<Vec<GaussRat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![GaussRat::zero(); ncols];
            v[fc] = GaussRat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][fc].clone();
            }
            v
        })
        .collect()
}

/// Monomials of degree `k` and a basis of the degree-`k` forms `A` with `Z | A(comps)`.
fn equations_of_degree(comps: &[SparsePoly; 3], z: &SparsePoly, k: u32) -> (Vec<Vec<u32>>, Vec<Vec<GaussRat>>) {
    let monos = monomials(3, k);
    let rems: Vec<SparsePoly> = monos
        .iter()
        .map(|e| {
            let mono = SparsePoly::monomial(3, e.clone(), GaussRat::one());
            pullback(&mono, comps).div_rem(z).1
        })
        .collect();
    let mut keys: Vec<Vec<u32>> = rems.iter().flat_map(|r| r.terms().keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<GaussRat>> = keys.iter().map(|key| rems.iter().map(|r| r.coeff(key)).collect()).collect();
    let ker = nullspace(rows, monos.len());
    (monos, ker)
}

/// Image curve by linear algebra: the lowest-degree `A` with `Z | A(F1^a1, F2^a2, F3^a3)`.
pub fn implicitize_linear(m: &PowerMorphism, z: &SparsePoly, max_degree: u32) -> Result<SparsePoly> {
    check_form(z)?;
    let comps = m.components();
    for k in 1..=max_degree {
        let (monos, ker) = equations_of_degree(&comps, z, k);
        match ker.len() {
            0 => continue,
            1 => {
                let a = SparsePoly::from_terms(3, monos.iter().cloned().zip(ker[0].iter().cloned()));
                return Ok(normalize_lowest(&a));
            }
            _ => return Err(Error::EliminationCollapse(format!("{}-dimensional space of degree-{k} equations", ker.len()))),
        }
    }
    Err(Error::IterationCap(format!("no image equation up to degree {max_degree}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::vars;

    fn quadric() -> SparsePoly {
        let x = vars(3);
        &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2])
    }

    fn quadric_morphism() -> PowerMorphism {
        let x = vars(3);
        PowerMorphism::new(x[0].clone(), x[1].clone(), quadric()).unwrap()
    }

    #[test]
    fn jacobians() {
        let m = quadric_morphism();
        assert_eq!(m.a, [2, 2, 1]);
        assert_eq!(jacobian_det(&m, true), SparsePoly::var(3, 2).scale(&GaussRat::from_int(2)));
        let x = vars(3);
        let full = (&(&x[0] * &x[1]) * &x[2]).scale(&GaussRat::from_int(8));
        assert_eq!(jacobian_det(&m, false), full);
        let id = PowerMorphism::new(x[0].clone(), x[1].clone(), x[2].clone()).unwrap();
        assert_eq!(jacobian_det(&id, true), SparsePoly::one(3));
    }

    #[test]
    fn euler_identities() {
        assert!(euler_identity_check(&quadric_morphism()).all());
    }

    #[test]
    fn general_position() {
        let x = vars(3);
        let lines = [x[0].clone(), x[1].clone(), x[2].clone()];
        assert!(general_position_check(&lines).unwrap().in_general_position());
        let bad = [x[0].clone(), x[1].clone(), &x[0] + &x[1]];
        let rep = general_position_check(&bad).unwrap();
        assert!(!rep.in_general_position());
        assert_eq!(rep.violations[0].point.exact, Some([GaussRat::zero(), GaussRat::zero(), GaussRat::one()]));
        let with_g = [x[0].clone(), x[1].clone(), x[2].clone(), quadric()];
        assert!(general_position_check(&with_g).unwrap().in_general_position());
        let common = [x[0].clone(), (&x[0] * &x[1]).clone()];
        assert!(matches!(general_position_check(&common), Err(Error::NonProperIntersection(0, 1))));
    }

    #[test]
    fn transversality() {
        let x = vars(3);
        let t = transversality_check(&x[0], &x[1]).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].verdict, Crossing::Transversal);
        assert_eq!(t[0].minor, Complex64::new(1.0, 0.0));
        let tangent = &x[1] * &x[2] - &x[0] * &x[0];
        let t = transversality_check(&x[1], &tangent).unwrap();
        assert!(t.iter().any(|p| p.verdict == Crossing::Tangential));
        let t = transversality_check(&quadric(), &x[0]).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|p| p.verdict == Crossing::Transversal));
    }

    #[test]
    fn pushforward_of_ramification_line() {
        let m = quadric_morphism();
        let z = SparsePoly::var(3, 2);
        let pf = pushforward_curve(&m, &z).unwrap();
        let y = vars(3);
        assert_eq!(pf.a, &(&y[2] - &y[0]) - &y[1]);
        assert_eq!(pf.vanishing_order, 2);
        assert_eq!(pullback(&pf.a, &m.components()), &z * &z);
        assert_eq!(implicitize_linear(&m, &z, 4).unwrap(), pf.a);
    }

    #[test]
    fn pushforward_identity() {
        let x = vars(3);
        let id = PowerMorphism::new(x[0].clone(), x[1].clone(), x[2].clone()).unwrap();
        let z = &quadric() + &(&x[0] * &x[1]);
        let pf = pushforward_curve(&id, &z).unwrap();
        assert!(pf.a.proportional_to(&z).is_some());
    }

    #[test]
    fn contracted_curve_collapses() {
        let x = vars(3);
        let m = PowerMorphism::new_unchecked(x[0].clone(), x[0].clone(), x[1].clone()).unwrap();
        assert!(matches!(pushforward_curve(&m, &x[0]), Err(Error::EliminationCollapse(_))));
        assert!(PowerMorphism::new(x[0].clone(), x[0].clone(), x[1].clone()).is_err());
    }
}
