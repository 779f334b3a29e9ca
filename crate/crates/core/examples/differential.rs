//! The logarithmic differential operator on the Fermat conic and a few checks around it.
//!
//! cargo run --example differential

use num_complex::Complex64;

use orbifold_workbench::algebra::gauss::GaussRat;
use orbifold_workbench::algebra::parse_projective;
use orbifold_workbench::differential::{apply_du, check_product_rule, coprime_with_du, coprime_with_du_bound, verify_du_numeric, verify_dug_numeric, DiffRing};
use orbifold_workbench::nevanlinna::MeroFn;

fn main() -> orbifold_workbench::Result<()> {
    let g = parse_projective("x0^2 + x1^2 + x2^2", 3)?;
    let ring = DiffRing::new(2);
    let names = ring.symbol_names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let dg = apply_du(&ring.embed(&g)?)?;
    println!("D_u(G) = {}", dg.poly.to_string_with(&names));

    let lx = ring.var(ring.lambda()).mul(&ring.var(1)).mul(&ring.var(2));
    println!("D_u(lambda x1 x2) = {}", apply_du(&lx)?.poly.to_string_with(&names));
    println!("product rule on (G, lambda x1 x2): {}", check_product_rule(&ring.embed(&g)?, &lx)?);

    println!("G vs D_u(G): {:?}", coprime_with_du(&g)?);
    let h = parse_projective("x0 x1 + x2^2", 3)?;
    let w = [GaussRat::from_int(2), GaussRat::one()];
    println!("x0 x1 + x2^2 with u = (e^2z, e^z): {:?}", coprime_with_du_bound(&h, &w)?);

    let samples: Vec<Complex64> = (0..10).map(|k| Complex64::from_polar(0.5 + 0.3 * k as f64, 0.8 * k as f64 + 0.2)).collect();
    let z = MeroFn::z();
    let u = [MeroFn::one(), z.powi(2)?, MeroFn::poly_int(&[-1, 1]).powi(2)?];
    println!("F(u)' residual, u = (1, z^2, (z-1)^2): {:.2e}", verify_du_numeric(&g, &u, &samples)?);
    let gz = [z.clone(), z.powi(2)?, MeroFn::poly_int(&[1, 0, 1])];
    println!("G(g)' residual, g = (z, z^2, 1+z^2): {:.2e}", verify_dug_numeric(&g, &gz, &samples)?);
    Ok(())
}
