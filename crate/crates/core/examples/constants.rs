//! Effective constants for a few `(eps, n, d)` choices, with a monomial family for the `b` search.
//!
//! cargo run --example constants -- 1/2 2 1

use orbifold_workbench::constants::{choose_m, constants, dim_vt, full_profile, parse_rational, MonomialFamily};

fn main() -> orbifold_workbench::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let eps = parse_rational(args.first().map_or("1/2", String::as_str))?;
    let n: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let d: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);

    let p = constants(2, 2, 4)?;
    println!("constants(n=2, d=2, m=4): M={} M'={} c={} L={}", p.big_m, p.m_prime, p.c_mnd, p.big_l);

    let m = choose_m(&eps, n, d)?;
    println!("choose_m(eps={eps}, n={n}, d={d}) = {m}");

    // units e^z, e^{-z} and a free generator
    let fam = MonomialFamily::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]])?;
    let dims: Vec<String> = (0..=6).map(|t| dim_vt(&fam, t).map(|v| v.to_string())).collect::<Result<_, _>>()?;
    println!("dim V_t for t = 0..6: {}", dims.join(", "));

    let prof = full_profile(&eps, n, d, Some(&fam), None)?;
    println!("{}", serde_json::to_string_pretty(&prof.to_json())?);
    Ok(())
}
