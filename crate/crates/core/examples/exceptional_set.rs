//! Builds the exceptional set of the Fermat conic and checks a few curves against it.
//!
//! cargo run --example exceptional_set -- [bound]

use std::time::Instant;

use orbifold_workbench::algebra::gauss::GaussRat;
use orbifold_workbench::algebra::poly::vars;
use orbifold_workbench::exceptional::{build_w, witnesses};
use orbifold_workbench::nevanlinna::MeroFn;

fn main() -> orbifold_workbench::Result<()> {
    let bound: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let x = vars(3);
    let g = &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2]);

    let start = Instant::now();
    let w = build_w(&g, bound)?;
    println!("W(x0^2 + x1^2 + x2^2, bound {bound}): {} curves in {:.2?}", w.len(), start.elapsed());
    for c in &w.curves {
        let defects: Vec<String> = match witnesses(&g, c) {
            Ok(ws) => ws.iter().map(|w| format!("{:?}", w.outcome)).collect(),
            Err(_) => vec!["-".into()],
        };
        println!("  {:<28} {:?}  sources={}  witnesses={}", c.describe(), c.kind, c.provenance.len(), defects.join(","));
    }

    let t = MeroFn::z();
    let curves = [
        ("(1, t, i)", [MeroFn::one(), t.clone(), MeroFn::constant(GaussRat::i())]),
        ("(1, t, t+1)", [MeroFn::one(), t.clone(), MeroFn::poly_int(&[1, 1])]),
        (
            "(1, e^z, e^-z/2)",
            [MeroFn::one(), MeroFn::exp_linear(GaussRat::one()), MeroFn::exp_linear(GaussRat::from_int(-1)).scale(&GaussRat::from_frac(1, 2))],
        ),
    ];
    for (name, g) in curves {
        let hits: Vec<String> = w.member_of(&g)?.iter().map(|c| c.describe()).collect();
        println!("{name:>18} -> {}", if hits.is_empty() { "not in W".to_string() } else { hits.join("; ") });
    }
    Ok(())
}
