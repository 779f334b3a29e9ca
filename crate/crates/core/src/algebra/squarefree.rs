//! Squarefree decomposition (Yun) for multivariate polynomials over Q(i).

use super::gauss::GaussRat;
use super::gcd::{content_in, gcd};
use super::poly::SparsePoly;

#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition {
    pub unit: GaussRat,
    /// Monic, squarefree, pairwise coprime factors with their multiplicities, by increasing multiplicity.
    pub factors: Vec<(SparsePoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self, num_vars: usize) -> SparsePoly {
        let mut p = SparsePoly::constant(num_vars, self.unit.clone());
        for (f, k) in &self.factors {
            p = &p * &f.pow(*k);
        }
        p
    }
}

fn yun(f: &SparsePoly, v: usize) -> Vec<(SparsePoly, u32)> {
    let df = f.partial_derivative(v);
    let a0 = gcd(f, &df);
    let mut b = f.div_exact(&a0).unwrap();
    let c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.partial_derivative(v);
    let mut out = Vec::new();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        let b_next = b.div_exact(&a).unwrap();
        let c_next = d.div_exact(&a).unwrap();
        d = &c_next - &b_next.partial_derivative(v);
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        b = b_next;
        i += 1;
    }
    out
}

fn decompose_rec(f: &SparsePoly, out: &mut Vec<(SparsePoly, u32)>) {
    let used = f.vars_used();
    let v = match (0..f.num_vars()).rev().find(|&i| used[i]) {
        None => return,
        Some(v) => v,
    };
    let c = content_in(f, v);
    let pp = f.div_exact(&c).unwrap();
    decompose_rec(&c, out);
    out.extend(yun(&pp, v));
}

/// Squarefree decomposition of a nonzero polynomial.
pub fn squarefree_decompose(f: &SparsePoly) -> SquarefreeDecomposition {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let mut raw = Vec::new();
    decompose_rec(f, &mut raw);
    // merge factors sharing a multiplicity; they are coprime across different variables' contents
    let mut merged: Vec<(SparsePoly, u32)> = Vec::new();
    for (p, k) in raw {
        match merged.iter_mut().find(|(_, m)| *m == k) {
            Some(entry) => entry.0 = (&entry.0 * &p).monic(),
            None => merged.push((p, k)),
        }
    }
    merged.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let n = f.num_vars();
    let mut prod = SparsePoly::one(n);
    for (p, k) in &merged {
        prod = &prod * &p.pow(*k);
    }
    let unit = f.leading_coeff() / prod.leading_coeff();
    SquarefreeDecomposition { unit, factors: merged }
}

/// Product of the distinct irreducible factors, monic.
pub fn squarefree_part(f: &SparsePoly) -> SparsePoly {
    let sf = squarefree_decompose(f);
    let mut p = SparsePoly::one(f.num_vars());
    for (q, _) in &sf.factors {
        p = &p * q;
    }
    p.monic()
}

pub fn is_squarefree(f: &SparsePoly) -> bool {
    squarefree_decompose(f).factors.iter().all(|(_, k)| *k == 1)
}
