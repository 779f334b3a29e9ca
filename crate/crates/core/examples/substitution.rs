//! The monomial substitution and the special values of Lambda for the Fermat conic.
//!
//! cargo run --example substitution -- 3

use orbifold_workbench::algebra::parse_projective;
use orbifold_workbench::exceptional::{beta_loci, canonical_pairs, substitute};

fn main() -> orbifold_workbench::Result<()> {
    let bound: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let g = parse_projective("x0^2 + x1^2 + x2^2", 3)?;
    for pair in canonical_pairs(bound) {
        let s = substitute(&g, &pair)?;
        let l = beta_loci(&s)?;
        let show = |p: &orbifold_workbench::algebra::poly::SparsePoly| p.to_string_with(&["L"]);
        println!(
            "({:>2},{:>2}) a={:>2} b={:>2}  M1={:>2} M2={:>2}  B = {:<28} alphas: {:<12} gammas: {:<8} leading: {}",
            pair.n1,
            pair.n2,
            pair.a,
            pair.b,
            s.m1,
            s.m2,
            s.b.to_string_with(&["L", "T"]),
            show(&l.alphas.defining_poly),
            show(&l.gammas.defining_poly),
            show(&l.leading.defining_poly),
        );
    }
    Ok(())
}
