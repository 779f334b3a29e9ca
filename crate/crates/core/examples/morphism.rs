//! Power morphisms: Jacobians, Euler identities, general position and push-forward of curves.
//!
//! cargo run --example morphism

use orbifold_workbench::algebra::parse_projective;
use orbifold_workbench::morphism::{
    euler_identity_check, general_position_check, implicitize_linear, jacobian_det, pushforward_curve, transversality_check, PowerMorphism,
};

fn main() -> orbifold_workbench::Result<()> {
    let p = |s: &str| parse_projective(s, 3);
    let m = PowerMorphism::new(p("x0")?, p("x1")?, p("x0^2 + x1^2 + x2^2")?)?;
    println!("a = {:?}", m.a);
    println!("reduced Jacobian: {}", jacobian_det(&m, true));
    println!("full Jacobian:    {}", jacobian_det(&m, false));
    println!("Euler identities: {:?}", euler_identity_check(&m));

    let z = p("x2")?;
    let pf = pushforward_curve(&m, &z)?;
    println!("push-forward of x2 = 0: {} (vanishing order {})", pf.a.to_string_with(&["y0", "y1", "y2"]), pf.vanishing_order);
    let oracle = implicitize_linear(&m, &z, 2)?;
    println!("linear-algebra implicitization: {}", oracle.to_string_with(&["y0", "y1", "y2"]));

    let lines = ["x0", "x1", "x2", "x0 + x1 + x2"].map(|s| p(s).unwrap());
    println!("four lines in general position: {}", general_position_check(&lines)?.in_general_position());
    let concurrent = ["x0", "x1", "x0 + x1"].map(|s| p(s).unwrap());
    let rep = general_position_check(&concurrent)?;
    for v in &rep.violations {
        println!("  violation: curve {} passes through {}", v.other, v.point.describe());
    }

    for t in transversality_check(&p("x1")?, &p("x1 x2 - x0^2")?)? {
        println!("x1 meets x1 x2 - x0^2 at {}: {:?}", t.point.describe(), t.verdict);
    }
    Ok(())
}
