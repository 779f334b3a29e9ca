//! Multivariate gcd by recursive content extraction and primitive remainder sequences.

use super::poly::SparsePoly;

/// Largest-index variable occurring in either polynomial.
fn top_var(f: &SparsePoly, g: &SparsePoly) -> Option<usize> {
    let uf = f.vars_used();
    let ug = g.vars_used();
    (0..f.num_vars()).rev().find(|&i| uf[i] || ug[i])
}

/// Pseudo-remainder of `a` by `b` in variable `v`, up to a nonzero factor free of `v`.
pub fn prem(a: &SparsePoly, b: &SparsePoly, v: usize) -> SparsePoly {
    let n = b.degree_in(v);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= n {
        let k = r.degree_in(v) - n;
        let lr = r.lc_in(v);
        let mut shift = vec![0; a.num_vars()];
        shift[v] = k;
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
    r
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub fn content_in(f: &SparsePoly, v: usize) -> SparsePoly {
    let mut c = SparsePoly::zero(f.num_vars());
    for coeff in f.coeffs_in(v) {
        if coeff.is_zero() {
            continue;
        }
        c = gcd(&c, &coeff);
        if c.is_constant() {
            break;
        }
    }
    c
}

/// Primitive part in `v`, normalised to be monic.
pub fn primitive_part_in(f: &SparsePoly, v: usize) -> SparsePoly {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, v);
    f.div_exact(&c).expect("content divides").monic()
}

/// Monic greatest common divisor over Q(i). `gcd(0, 0) = 0`.
pub fn gcd(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let n = f.num_vars();
    let v = match top_var(f, g) {
        None => return SparsePoly::one(n),
        Some(v) => v,
    };
    if !f.contains_var(v) {
        return gcd(f, &content_in(g, v));
    }
    if !g.contains_var(v) {
        return gcd(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).unwrap();
    let mut b = g.div_exact(&cg).unwrap();
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if !r.contains_var(v) {
            return c.monic();
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
    (&c * &primitive_part_in(&b, v)).monic()
}

/// Gcd of `f` and `g`, made primitive in `main_var`: constant exactly when the
/// two are coprime over the fraction field of the remaining variables.
pub fn gcd_poly(f: &SparsePoly, g: &SparsePoly, main_var: usize) -> SparsePoly {
    let h = gcd(f, g);
    if h.is_zero() {
        return h;
    }
    primitive_part_in(&h, main_var)
}

pub fn gcd_many<'a, I: IntoIterator<Item = &'a SparsePoly>>(num_vars: usize, polys: I) -> SparsePoly {
    polys.into_iter().fold(SparsePoly::zero(num_vars), |acc, p| gcd(&acc, p))
}
