#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use orbifold_workbench::algebra::gauss::GaussRat;
use orbifold_workbench::algebra::poly::SparsePoly;
use orbifold_workbench::differential::{DiffPoly, DiffRing};

pub fn small_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let re = rng.gen_range(-4..=4);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-3..=3) } else { 0 };
    let den = rng.gen_range(1..=3);
    GaussRat::complex((re, den), (im, den))
}

fn nonzero_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    loop {
        let c = small_gauss(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Exponent vectors of total degree exactly `deg` in `n` variables.
pub fn exponents_of_degree(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for k in 0..=deg {
        for mut rest in exponents_of_degree(n - 1, deg - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Random homogeneous form with at most `terms` terms; never zero.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, deg: u32, terms: usize) -> SparsePoly {
    let all = exponents_of_degree(n, deg);
    loop {
        let t: Vec<(Vec<u32>, GaussRat)> =
            (0..terms).map(|_| (all[rng.gen_range(0..all.len())].clone(), nonzero_gauss(rng))).collect();
        let p = SparsePoly::from_terms(n, t);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random polynomial of total degree at most `max_deg`; may be zero.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, terms: usize) -> SparsePoly {
    let t: Vec<(Vec<u32>, GaussRat)> = (0..terms)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg);
            let all = exponents_of_degree(n, d);
            (all[rng.gen_range(0..all.len())].clone(), small_gauss(rng))
        })
        .collect();
    SparsePoly::from_terms(n, t)
}

/// Brute-force count of distinct `t`-fold sums (with repetition) of the vectors.
pub fn brute_sumset(vectors: &[Vec<i64>], t: usize) -> usize {
    fn go(vs: &[Vec<i64>], start: usize, left: usize, acc: &mut Vec<i64>, seen: &mut std::collections::HashSet<Vec<i64>>) {
        if left == 0 {
            seen.insert(acc.clone());
            return;
        }
        for i in start..vs.len() {
            for (a, b) in acc.iter_mut().zip(&vs[i]) {
                *a += b;
            }
            go(vs, i, left - 1, acc, seen);
            for (a, b) in acc.iter_mut().zip(&vs[i]) {
                *a -= b;
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut acc = vec![0; vectors[0].len()];
    go(vectors, 0, t, &mut acc, &mut seen);
    seen.len()
}

/// `x`-degree at most 4 with coefficients in constants, `lambda`, `lambda^-1`.
pub fn random_diff_poly(r: &mut ChaCha8Rng, n: usize) -> DiffPoly {
    let ring = DiffRing::new(n);
    let nv = ring.num_vars();
    let terms = r.gen_range(1..=4);
    let mut poly = SparsePoly::zero(nv);
    for _ in 0..terms {
        let mut e = vec![0u32; nv];
        let d = r.gen_range(0..=4);
        for _ in 0..d {
            e[r.gen_range(0..=n)] += 1;
        }
        match r.gen_range(0..3) {
            1 => e[ring.lambda()] = r.gen_range(1..=2),
            2 => e[ring.lambda_inv()] = r.gen_range(1..=2),
            _ => {}
        }
        poly = &poly + &SparsePoly::monomial(nv, e, small_gauss(r));
    }
    DiffPoly::new(ring, poly).unwrap()
}
