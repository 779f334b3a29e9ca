//! Sylvester resultants and fraction-free determinants.

use super::poly::SparsePoly;

/// Determinant of a square matrix with polynomial entries, by Bareiss elimination.
pub fn det(mut m: Vec<Vec<SparsePoly>>, num_vars: usize) -> SparsePoly {
    let n = m.len();
    if n == 0 {
        return SparsePoly::one(num_vars);
    }
    let mut negate = false;
    let mut prev = SparsePoly::one(num_vars);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                None => return SparsePoly::zero(num_vars),
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `f` and `g` in variable `v`, `f` rows first. Entries are free of `v`.
pub fn sylvester_matrix(f: &SparsePoly, g: &SparsePoly, v: usize) -> Vec<Vec<SparsePoly>> {
    let nv = f.num_vars();
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for k in 0..n {
        let mut row = vec![SparsePoly::zero(nv); size];
        for (i, c) in fc.iter().rev().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    for k in 0..m {
        let mut row = vec![SparsePoly::zero(nv); size];
        for (i, c) in gc.iter().rev().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of `f` and `g` with respect to variable `v`.
///
/// A constant `f = c` against `g` of degree `n` gives `c^n`; two constants give 1.
/// A zero input gives 0.
pub fn resultant(f: &SparsePoly, g: &SparsePoly, v: usize) -> SparsePoly {
    let nv = f.num_vars();
    assert_eq!(nv, g.num_vars());
    if f.is_zero() || g.is_zero() {
        return SparsePoly::zero(nv);
    }
    let m = f.degree_in(v);
    let n = g.degree_in(v);
    if m == 0 && n == 0 {
        return SparsePoly::one(nv);
    }
    if m == 0 {
        return f.pow(n);
    }
    if n == 0 {
        return g.pow(m);
    }
    det(sylvester_matrix(f, g, v), nv)
}

/// Discriminant-style resultant `Res_v(f, df/dv)`.
pub fn resultant_with_derivative(f: &SparsePoly, v: usize) -> SparsePoly {
    resultant(f, &f.partial_derivative(v), v)
}
