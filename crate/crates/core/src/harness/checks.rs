//! Scenario runners: one margin report per targeted inequality.

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use super::report::{fit_linear, MarginReport, Verdict};
use super::scenario::{Scenario, Target};
use crate::algebra::gauss::GaussRat;
use crate::algebra::gcd::{gcd, gcd_many};
use crate::algebra::poly::SparsePoly;
use crate::constants::{choose_m, full_profile, parse_rational, MonomialFamily};
use crate::error::{Error, Result};
use crate::exceptional::build_w;
use crate::morphism::general_position_check;
use crate::nevanlinna::functionals::{cartan_t, counting_from_points, match_points, Trunc};
use crate::nevanlinna::zeros::ZeroOptions;
use crate::nevanlinna::{characteristic_t, DivisorPoint, ExpSum, LogAbs, MeroFn, RadiusGrid, Target as Div};

/// `G(f_0, ..., f_n)` for entire components.
pub fn compose(g: &SparsePoly, f: &[ExpSum]) -> Result<ExpSum> {
    if g.num_vars() != f.len() {
        return Err(Error::VarMismatch(g.num_vars(), f.len()));
    }
    let mut acc = ExpSum::zero();
    for (e, c) in g.terms() {
        let mut t = ExpSum::from_mero(&MeroFn::constant(c.clone()))?;
        for (fi, &k) in f.iter().zip(e) {
            for _ in 0..k {
                t = t.mul(fi);
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// `|f(z)|` is negligible against the sizes of its terms at `z`.
fn near_zero(f: &ExpSum, z: Complex64) -> bool {
    let (v, _, m) = f.eval_scaled_full(z);
    let scale: f64 = f
        .terms()
        .iter()
        .map(|(p, q)| p.eval_univariate_c64(0, z).norm() * (q.eval_univariate_c64(0, z).re - m).exp())
        .sum();
    v.norm() <= 1e-8 * scale
}

fn zeros_within(f: &ExpSum, radius: f64) -> Result<Vec<DivisorPoint>> {
    f.zeros(radius, ZeroOptions::default())
}

/// No common zero among the components: exact in the factored class, sampled at the
/// zeros in the disk of radius `radius` otherwise.
pub fn check_reduced(f: &[ExpSum], radius: f64) -> Result<()> {
    let nonzero: Vec<&ExpSum> = f.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::InvalidInput("all components vanish identically".into()));
    }
    if let Some(ms) = nonzero.iter().map(|c| c.as_mero()).collect::<Option<Vec<MeroFn>>>() {
        return crate::nevanlinna::functionals::validate_reduced(&ms);
    }
    let first = nonzero.iter().min_by_key(|c| c.terms().len()).unwrap();
    for z in zeros_within(first, radius)? {
        if nonzero.iter().all(|c| near_zero(c, z.center)) {
            return Err(Error::InvalidInput(format!("components vanish together near {}", z.center)));
        }
    }
    Ok(())
}

fn moduli(points: &[DivisorPoint]) -> Vec<f64> {
    points.iter().map(|p| p.center.norm()).collect()
}

fn cartan(f: &[ExpSum], r: f64) -> Result<f64> {
    let refs: Vec<&dyn LogAbs> = f.iter().filter(|c| !c.is_zero()).map(|c| c as &dyn LogAbs).collect();
    cartan_t(&refs, r)
}

fn log_plus(x: f64) -> f64 {
    x.max(1.0).ln()
}

fn grid_for(s: &Scenario, avoid: &[f64]) -> Result<(RadiusGrid, f64)> {
    let mut grid = s.params.grid.build()?;
    grid.avoid(avoid);
    let r_pass = s.params.r_pass.unwrap_or_else(|| grid.r_pass());
    Ok((grid, r_pass))
}

/// Zero radius used to collect divisors before the grid is fixed.
fn reach(s: &Scenario) -> f64 {
    s.params.grid.r_max * 1.01
}

fn per_radius<F>(grid: &RadiusGrid, f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    grid.points.par_iter().map(|&r| f(r)).collect()
}

fn column(rows: &[Vec<f64>], k: usize) -> Vec<f64> {
    rows.iter().map(|r| r[k]).collect()
}

fn zero_multiplicity_at_least(f: &ExpSum, ell: u32, radius: f64) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if let Some(m) = f.as_mero() {
        return Ok(m.min_zero_multiplicity().is_none_or(|k| k >= ell));
    }
    Ok(zeros_within(f, radius)?.iter().all(|p| p.mult >= ell))
}

fn check_ell(f: &[ExpSum], ell: u32, radius: f64, notes: &mut Vec<String>) -> Result<()> {
    for (i, c) in f.iter().enumerate() {
        if !zero_multiplicity_at_least(c, ell, radius)? {
            return Err(Error::InvalidInput(format!("component {i} has a zero of multiplicity below {ell}")));
        }
    }
    notes.push(format!("zero multiplicities >= {ell} verified"));
    Ok(())
}

pub fn run_scenario(s: &Scenario) -> Result<MarginReport> {
    match s.target {
        Target::TruncationDefect | Target::TruncatedLowerBound => truncation_check(s),
        Target::GcdBound => {
            let f = s.poly(&s.f, "f")?;
            let g = s.poly(&s.g, "g")?;
            gcd_bound_check(s, &f, &g)
        }
        Target::LogDerivative => log_derivative_check(s),
        Target::Borel | Target::TruncatedBorel => borel_check(s),
        Target::HypersurfaceSmt => smt_instance_check(s),
    }
}

/// Both halves of the truncation theorem for `G(g)`, gated by membership in `W`.
pub fn truncation_check(s: &Scenario) -> Result<MarginReport> {
    let g = s.curve_entire()?;
    let gp = s.poly(&s.g, "g")?;
    if gp.is_zero() || !gp.is_homogeneous() || gp.degree() == 0 {
        return Err(Error::InvalidInput("G must be a nonconstant form".into()));
    }
    let eps = s.params.eps_f64("1/10")?;
    let mut notes = Vec::new();
    check_reduced(&g, reach(s))?;
    if let Some(ell) = s.params.ell {
        check_ell(&g, ell, reach(s), &mut notes)?;
    }

    let mut hits = Vec::new();
    let bound = s.params.w_bound.unwrap_or(2);
    if bound > 0 {
        match s.curve_mero() {
            Some(gm) => {
                let w = build_w(&gp, bound)?;
                hits = w.member_of(&gm)?.iter().map(|c| c.describe()).collect();
                notes.push(format!("W(bound {bound}) has {} curves; {} contain the curve", w.len(), hits.len()));
            }
            None => notes.push("W membership skipped: components outside the factored class".into()),
        }
    }

    let h = compose(&gp, &g)?;
    if h.is_zero() {
        return Err(Error::InvalidInput("the curve lies inside [G = 0]".into()));
    }
    let zs = zeros_within(&h, reach(s))?;
    let (grid, r_pass) = grid_for(s, &moduli(&zs))?;
    let rows = per_radius(&grid, |r| {
        Ok(vec![counting_from_points(&zs, r, None)?, counting_from_points(&zs, r, Some(1))?, cartan(&g, r)?])
    })?;
    let (n, n1, t) = (column(&rows, 0), column(&rows, 1), column(&rows, 2));
    let deg = gp.degree() as f64;
    let (lhs, rhs): (Vec<f64>, Vec<f64>) = match s.target {
        Target::TruncationDefect => (n.iter().zip(&n1).map(|(a, b)| a - b).collect(), t.iter().map(|x| eps * x).collect()),
        _ => (t.iter().map(|x| (deg - eps) * x).collect(), n1.clone()),
    };
    let mut rep = MarginReport::assemble(&s.name, s.target.label(), &grid.points, &lhs, &rhs, r_pass, hits);
    rep.series.insert("N".into(), n);
    rep.series.insert("N1".into(), n1);
    rep.series.insert("T".into(), t);
    rep.notes.extend(notes);
    Ok(rep)
}

/// Primitive tuples (first nonzero entry positive) with `1 <= |m|_1 <= bound`.
pub fn primitive_tuples(n: usize, bound: u32) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            if cur.iter().any(|&x| x != 0) {
                out.push(cur.clone());
            }
            return;
        }
        for v in -left..=left {
            cur.push(v);
            rec(n, left - v.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, bound as i64, &mut Vec::new(), &mut out);
    out.retain(|m| {
        let first = m.iter().find(|&&x| x != 0).unwrap();
        *first > 0 && m.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
    });
    out.sort_by_key(|m| (m.iter().map(|x| x.abs()).sum::<i64>(), m.clone()));
    out
}

/// Tuples `m` with `T_{u^m}(r) <= eps^3 T_g(r)` at `r`, where `u_j = g_j / g_0`.
pub fn degeneracy_scan(g: &[MeroFn], eps: f64, bound: u32, r: f64, t_g: f64) -> Result<Vec<Vec<i64>>> {
    if g.is_empty() || g[0].is_zero() {
        return Err(Error::InvalidInput("the scan needs g_0 != 0".into()));
    }
    let u: Vec<MeroFn> = g[1..].iter().map(|gj| gj.div(&g[0])).collect::<Result<_>>()?;
    let tuples = primitive_tuples(u.len(), bound);
    let flags: Vec<bool> = tuples
        .par_iter()
        .map(|m| {
            let mut p = MeroFn::one();
            for (uj, &k) in u.iter().zip(m) {
                if k != 0 {
                    match uj.powi(k) {
                        Ok(v) => p = p.mul(&v),
                        Err(_) => return false,
                    }
                }
            }
            if p.is_zero() {
                return false;
            }
            if p.is_constant_function() {
                return true;
            }
            matches!(characteristic_t(&p, r), Ok(t) if t <= eps.powi(3) * t_g)
        })
        .collect();
    Ok(tuples.into_iter().zip(flags).filter(|(_, f)| *f).map(|(m, _)| m).collect())
}

/// `N_gcd(F(g), G(g), r)` against `eps T_g(r)`, with the degeneracy scan.
pub fn gcd_bound_check(s: &Scenario, f: &SparsePoly, gp: &SparsePoly) -> Result<MarginReport> {
    let g = s.curve_entire()?;
    let n = g.len() - 1;
    if f.num_vars() != g.len() || gp.num_vars() != g.len() {
        return Err(Error::VarMismatch(g.len(), f.num_vars()));
    }
    if gcd(f, gp).degree() > 0 {
        return Err(Error::InvalidInput("F and G share a common factor".into()));
    }
    for i in 0..g.len() {
        let mut e = vec![GaussRat::zero(); g.len()];
        e[i] = GaussRat::one();
        if f.eval(&e).is_zero() && gp.eval(&e).is_zero() {
            return Err(Error::InvalidInput(format!("F and G both vanish at the coordinate point e_{i}")));
        }
    }
    let eps_q = s.params.eps("1/2")?;
    let eps = s.params.eps_f64("1/2")?;
    let mut notes = Vec::new();
    check_reduced(&g, reach(s))?;
    let (fg, gg) = (compose(f, &g)?, compose(gp, &g)?);
    if fg.is_zero() || gg.is_zero() {
        return Err(Error::InvalidInput("F(g) or G(g) vanishes identically".into()));
    }
    let zf = zeros_within(&fg, reach(s))?;
    let zg = zeros_within(&gg, reach(s))?;
    let common = match_points(&zf, &zg)?;
    let mut all = moduli(&zf);
    all.extend(moduli(&zg));
    let (grid, r_pass) = grid_for(s, &all)?;
    notes.push(format!("{} common zeros within |z| <= {:.3}", common.len(), reach(s)));
    let rows = per_radius(&grid, |r| Ok(vec![counting_from_points(&common, r, None)?, cartan(&g, r)?]))?;
    let (ngcd, t) = (column(&rows, 0), column(&rows, 1));
    let rhs: Vec<f64> = t.iter().map(|x| eps * x).collect();

    let d = f.degree().max(gp.degree());
    let mut degenerate = Vec::new();
    match s.curve_mero() {
        Some(gm) if !gm[0].is_zero() => {
            let bound = match s.params.scan_bound {
                Some(b) => b,
                None => 2 * choose_m(&eps_q, n as u32, d)?,
            };
            let r = *grid.points.last().unwrap();
            degenerate = degeneracy_scan(&gm, eps, bound, r, *t.last().unwrap())?;
            notes.push(format!("degeneracy scan |m| <= {bound} at r = {r:.3}: {} tuples flagged", degenerate.len()));
        }
        _ => notes.push("degeneracy scan skipped: ratios outside the factored class".into()),
    }
    if let Some(fam) = &s.params.family {
        let fam = MonomialFamily::new(n, fam.clone())?;
        let c3 = s.params.c3.as_deref().map(parse_rational).transpose()?;
        let p = full_profile(&eps_q, n as u32, d, Some(&fam), c3.as_ref())?;
        notes.push(format!("constants: {}", p.to_json()));
    }

    let mut rep = MarginReport::assemble(&s.name, s.target.label(), &grid.points, &ngcd, &rhs, r_pass, vec![]);
    if !degenerate.is_empty() && rep.has_gated_violation() {
        rep.verdict = Verdict::DegenerateBranch { tuples: degenerate.clone() };
    }
    rep.degenerate_tuples = degenerate;
    rep.series.insert("Ngcd".into(), ngcd);
    rep.series.insert("T".into(), t);
    rep.notes.extend(notes);
    Ok(rep)
}

/// `T_{f'/f}` against `T_f / ell + C log+ T_f + C'`.
pub fn log_derivative_check(s: &Scenario) -> Result<MarginReport> {
    let f = s
        .function
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("scenario needs `function`".into()))?
        .mero()?;
    if !f.is_entire() || f.is_constant_function() {
        return Err(Error::InvalidInput("f must be a nonconstant entire function".into()));
    }
    let ell = match (s.params.ell, f.min_zero_multiplicity()) {
        (Some(l), Some(m)) if m < l => {
            return Err(Error::InvalidInput(format!("f has a zero of multiplicity {m} < {l}")));
        }
        (Some(l), _) => l,
        (None, Some(m)) => m,
        (None, None) => return Err(Error::InvalidInput("f has no zeros; supply `ell`".into())),
    };
    let c = s.params.log_coeff.unwrap_or(1.0);
    let c0 = s.params.offset.unwrap_or(0.0);
    let ld = f.log_derivative().to_mero()?;
    let mut avoid = moduli(&f.divisor(Div::Zeros)?);
    avoid.extend(moduli(&ld.divisor(Div::Zeros)?));
    avoid.extend(moduli(&ld.divisor(Div::Poles)?));
    let (grid, r_pass) = grid_for(s, &avoid)?;
    let rows = per_radius(&grid, |r| Ok(vec![characteristic_t(&ld, r)?, characteristic_t(&f, r)?]))?;
    let (tl, tf) = (column(&rows, 0), column(&rows, 1));
    let rhs: Vec<f64> = tf.iter().map(|t| t / ell as f64 + c * log_plus(*t) + c0).collect();
    let mut rep = MarginReport::assemble(&s.name, s.target.label(), &grid.points, &tl, &rhs, r_pass, vec![]);
    // slope of (T_{f'/f} - T_f / ell) against log T_f
    let (xs, ys): (Vec<f64>, Vec<f64>) = rep
        .rows
        .iter()
        .zip(tl.iter().zip(&tf))
        .filter(|(row, (_, t))| row.gated && **t > 1.0)
        .map(|(_, (l, t))| (t.ln(), l - t / ell as f64))
        .unzip();
    let fitted = fit_linear(&xs, &ys);
    rep.notes.push(format!("ell = {ell}, C = {c}, C' = {c0}, fitted log coefficient = {fitted:.4}"));
    rep.series.insert("T_ld".into(), tl);
    rep.series.insert("T_f".into(), tf);
    Ok(rep)
}

/// Entire multipliers `D * a_i` clearing all poles, with common polynomial factors removed.
fn entire_coefficients(a: &[MeroFn]) -> Result<Vec<MeroFn>> {
    let mut den = MeroFn::one();
    for ai in a {
        for (p, m) in ai.factors() {
            if *m < 0 {
                den = den.mul(&MeroFn::from_parts(GaussRat::one(), vec![(p.clone(), -m)], SparsePoly::zero(1))?);
            }
        }
    }
    let cleared: Vec<MeroFn> = a.iter().map(|ai| ai.mul(&den)).collect();
    let parts: Vec<SparsePoly> = cleared.iter().filter(|c| !c.is_zero()).filter_map(|c| c.polynomial_part()).collect();
    let g = gcd_many(1, parts.iter());
    if g.degree() == 0 {
        return Ok(cleared);
    }
    let gi = MeroFn::poly(&g)?.inv()?;
    Ok(cleared.iter().map(|c| c.mul(&gi)).collect())
}

fn subsets_vanishing(terms: &[ExpSum]) -> Option<Vec<usize>> {
    let idx: Vec<usize> = (0..terms.len()).filter(|&i| !terms[i].is_zero()).collect();
    let k = idx.len();
    for mask in 1u64..(1u64 << k) - 1 {
        let mut acc = ExpSum::zero();
        let mut chosen = Vec::new();
        for (b, &i) in idx.iter().enumerate() {
            if mask >> b & 1 == 1 {
                acc = acc.add(&terms[i]);
                chosen.push(i);
            }
        }
        if acc.is_zero() {
            return Some(chosen);
        }
    }
    None
}

/// Borel-type relations `sum a_i f_i = 0`: the orbifold Borel lemma and the truncated Borel theorem.
pub fn borel_check(s: &Scenario) -> Result<MarginReport> {
    let f = s.curve_entire()?;
    let a: Vec<MeroFn> = if s.coefficients.is_empty() {
        vec![MeroFn::one(); f.len()]
    } else {
        s.coefficients.iter().map(|c| c.mero()).collect::<Result<_>>()?
    };
    if a.len() != f.len() {
        return Err(Error::InvalidInput(format!("{} coefficients for {} functions", a.len(), f.len())));
    }
    if a.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidInput("all coefficients vanish".into()));
    }
    let ae = entire_coefficients(&a)?;
    let terms: Vec<ExpSum> = ae.iter().zip(&f).map(|(ai, fi)| Ok(ExpSum::from_mero(ai)?.mul(fi))).collect::<Result<_>>()?;
    let total = terms.iter().fold(ExpSum::zero(), |acc, t| acc.add(t));
    if !total.is_zero() {
        return Err(Error::InvalidInput("sum a_i f_i does not vanish identically".into()));
    }
    if let Some(sub) = subsets_vanishing(&terms) {
        return Err(Error::InvalidInput(format!("vanishing proper subsum over indices {sub:?}")));
    }
    let c = s.params.log_coeff.unwrap_or(1.0);
    let c0 = s.params.offset.unwrap_or(0.0);
    let mut notes = vec!["identity sum a_i f_i = 0 verified exactly; no proper subsum vanishes".to_string()];

    let mut avoid = Vec::new();
    let mut zero_sets = Vec::new();
    let sources: &[ExpSum] = if s.target == Target::Borel { &f } else { &terms };
    for t in sources {
        let z = if t.is_zero() { vec![] } else { zeros_within(t, reach(s))? };
        avoid.extend(moduli(&z));
        zero_sets.push(z);
    }
    let (grid, r_pass) = grid_for(s, &avoid)?;

    let (lhs, rhs, extra) = if s.target == Target::Borel {
        let n = f.len() - 1;
        check_reduced(&f, reach(s))?;
        let ell = match s.params.ell {
            Some(l) => {
                check_ell(&f, l, reach(s), &mut notes)?;
                Some(l)
            }
            None => zero_sets.iter().flatten().map(|p| p.mult).min(),
        };
        let i = s.params.index.unwrap_or_else(|| a.iter().position(|x| !x.is_zero()).unwrap());
        if i >= f.len() || a[i].is_zero() {
            return Err(Error::InvalidInput(format!("index {i} needs a nonzero coefficient")));
        }
        let a_ent: Vec<ExpSum> = ae.iter().map(ExpSum::from_mero).collect::<Result<_>>()?;
        let a_constant = {
            let nz: Vec<&MeroFn> = ae.iter().filter(|x| !x.is_zero()).collect();
            nz.iter().all(|x| x.div(nz[0]).map(|q| q.is_constant_function()).unwrap_or(false))
        };
        let kappa = ell.map_or(0.0, |l| (n * n - 1) as f64 / l as f64);
        notes.push(format!("n = {n}, ell = {ell:?}, i = {i}; T_{{f_i/f_j}} taken as the Cartan height of [f_i : f_j]"));
        let rows = per_radius(&grid, |r| {
            let tf = cartan(&f, r)?;
            let ta = if a_constant { 0.0 } else { cartan(&a_ent, r)? };
            let mut best = f64::INFINITY;
            for j in (0..f.len()).filter(|&j| j != i && !f[j].is_zero()) {
                best = best.min(cartan(&[f[i].clone(), f[j].clone()], r)?);
            }
            Ok(vec![best, 3.0 * n as f64 * ta + kappa * tf + c * log_plus(tf) + c0, tf, ta])
        })?;
        (column(&rows, 0), column(&rows, 1), vec![("T_f", column(&rows, 2)), ("T_a", column(&rows, 3))])
    } else {
        if terms.len() < 3 {
            return Err(Error::InvalidInput("the truncated Borel theorem needs at least three terms".into()));
        }
        let n = terms.len() - 2;
        let head = &terms[..=n];
        check_reduced(head, reach(s))?;
        notes.push(format!("n = {n}; counting truncated at level n"));
        let rows = per_radius(&grid, |r| {
            let t = cartan(head, r)?;
            let mut sum = 0.0;
            for z in &zero_sets {
                sum += counting_from_points(z, r, Some(n as u32))?;
            }
            Ok(vec![t, sum + c * log_plus(t) + c0, sum])
        })?;
        (column(&rows, 0), column(&rows, 1), vec![("N_trunc", column(&rows, 2))])
    };
    let mut rep = MarginReport::assemble(&s.name, s.target.label(), &grid.points, &lhs, &rhs, r_pass, vec![]);
    for (k, v) in extra {
        rep.series.insert(k.into(), v);
    }
    rep.notes.extend(notes);
    Ok(rep)
}

/// `(q - n - 1 - eps) T_g <= sum N^{(M)}(D_i) / d_i` for plane hypersurfaces in general position.
pub fn smt_instance_check(s: &Scenario) -> Result<MarginReport> {
    let g = s.curve_entire()?;
    if g.len() != 3 {
        return Err(Error::InvalidInput("the general-position check covers plane curves (three components)".into()));
    }
    let ds: Vec<SparsePoly> = s.hypersurfaces.iter().map(|h| h.resolve(3)).collect::<Result<_>>()?;
    if ds.is_empty() {
        return Err(Error::InvalidInput("no hypersurfaces".into()));
    }
    for d in &ds {
        if d.is_zero() || !d.is_homogeneous() || d.degree() == 0 {
            return Err(Error::InvalidInput(format!("{d} is not a nonconstant form")));
        }
    }
    let gp = general_position_check(&ds)?;
    if let Some(v) = gp.violations.first() {
        return Err(Error::InvalidInput(format!(
            "not in general position: D_{} passes through the intersection {} of D_{} and D_{}",
            v.other,
            v.point.describe(),
            v.pair.0,
            v.pair.1
        )));
    }
    check_reduced(&g, reach(s))?;
    let eps = s.params.eps_f64("1/10")?;
    let trunc: Trunc = s.params.truncation;
    let mut zero_sets = Vec::new();
    let mut avoid = Vec::new();
    for (i, d) in ds.iter().enumerate() {
        let h = compose(d, &g)?;
        if h.is_zero() {
            return Err(Error::InvalidInput(format!("the curve lies inside D_{i}")));
        }
        let z = zeros_within(&h, reach(s))?;
        avoid.extend(moduli(&z));
        zero_sets.push(z);
    }
    let (grid, r_pass) = grid_for(s, &avoid)?;
    let q = ds.len() as f64;
    let rows = per_radius(&grid, |r| {
        let t = cartan(&g, r)?;
        let mut sum = 0.0;
        for (z, d) in zero_sets.iter().zip(&ds) {
            sum += counting_from_points(z, r, trunc)? / d.degree() as f64;
        }
        Ok(vec![(q - 3.0 - eps) * t, sum, t])
    })?;
    let mut rep = MarginReport::assemble(&s.name, s.target.label(), &grid.points, &column(&rows, 0), &column(&rows, 1), r_pass, vec![]);
    rep.series.insert("T".into(), column(&rows, 2));
    rep.notes.push(format!("{} hypersurfaces in general position; truncation {:?}", ds.len(), trunc));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples() {
        let t = primitive_tuples(2, 2);
        assert_eq!(t, vec![vec![0, 1], vec![1, 0], vec![1, -1], vec![1, 1]]);
        assert_eq!(primitive_tuples(1, 5), vec![vec![1]]);
    }

    #[test]
    fn compose_units() {
        let g = [ExpSum::from_mero(&MeroFn::one()).unwrap(), ExpSum::from_mero(&MeroFn::exp_linear(GaussRat::one())).unwrap()];
        let p = crate::algebra::parse::parse_projective("x0^2 - x1^2", 2).unwrap();
        let h = compose(&p, &g).unwrap();
        assert_eq!(h.terms().len(), 2);
        assert!(near_zero(&h, Complex64::new(0.0, std::f64::consts::PI)));
    }
}
