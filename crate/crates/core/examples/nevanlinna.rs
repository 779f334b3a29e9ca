//! Characteristic, counting and gcd-counting functions on a radius grid.
//!
//! cargo run --example nevanlinna

use orbifold_workbench::algebra::gauss::GaussRat;
use orbifold_workbench::nevanlinna::zeros::ZeroOptions;
use orbifold_workbench::nevanlinna::{characteristic_t, counting_n, gcd_counting, gcd_counting_points, ExpSum, MeroFn, RadiusGrid, Target};

fn main() -> orbifold_workbench::Result<()> {
    let e2 = MeroFn::exp_linear(GaussRat::from_int(2));
    // (z - 2)^3 / (z + 1)
    let rat = MeroFn::poly_int(&[-2, 1]).powi(3)?.div(&MeroFn::poly_int(&[1, 1]))?;
    let h = MeroFn::poly_int(&[-1, 0, 1]).powi(5)?;

    let mut grid = RadiusGrid::log_spaced(1.5, 100.0, 8)?;
    grid.avoid(&[1.0, 2.0]);
    println!("{:>10} {:>12} {:>12} {:>12} {:>12} {:>12}", "r", "T(e^2z)", "2r/pi", "T(rat)", "T(1/rat)", "N1(h)");
    for &r in &grid.points {
        println!(
            "{r:>10.4} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            characteristic_t(&e2, r)?,
            2.0 * r / std::f64::consts::PI,
            characteristic_t(&rat, r)?,
            characteristic_t(&rat.inv()?, r)?,
            counting_n(&h, Target::Zeros, r, Some(1))?
        );
    }

    let f = MeroFn::z().powi(2)?.mul(&MeroFn::poly_int(&[-1, 1]));
    let g = MeroFn::z().mul(&MeroFn::poly_int(&[-1, 1]).powi(3)?);
    println!("N_gcd(z^2 (z-1), z (z-1)^3, 5) = {:.6}", gcd_counting(&f, &g, 5.0)?);

    // 1 + e^z and 1 - e^{2z} share the zeros i pi (2k+1)
    let one = ExpSum::from_mero(&MeroFn::one())?;
    let a = one.add(&ExpSum::from_mero(&MeroFn::exp_linear(GaussRat::one()))?);
    let b = one.add(&ExpSum::from_mero(&e2.scale(&GaussRat::from_int(-1)))?);
    let (za, zb) = (a.zeros(30.0, ZeroOptions::default())?, b.zeros(30.0, ZeroOptions::default())?);
    println!("{} zeros of 1 + e^z, {} of 1 - e^2z in |z| <= 30", za.len(), zb.len());
    println!("N_gcd at r = 30: {:.6}", gcd_counting_points(&za, &zb, 30.0)?);
    Ok(())
}
