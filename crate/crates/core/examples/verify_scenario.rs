//! Runs one scenario file, or the whole shipped directory, and prints the margin table.
//!
//! cargo run --release --example verify_scenario -- scenarios/quadric_generic_lower.json
//! cargo run --release --example verify_scenario -- scenarios/

use std::path::PathBuf;

use orbifold_workbench::harness::{run_scenario, run_suite, Scenario};

fn main() -> orbifold_workbench::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/quadric_generic_lower.json"));
    if path.is_dir() {
        let summary = run_suite(&path, None)?;
        print!("{}", summary.table());
        return Ok(());
    }
    let s = Scenario::load(&path)?;
    let rep = run_scenario(&s)?;
    println!("{} [{}]: {}", rep.scenario, rep.target, rep.verdict.label());
    println!("{:>12} {:>14} {:>14} {:>14} {}", "r", "lhs", "rhs", "margin", "gated");
    for row in &rep.rows {
        println!("{:>12.4} {:>14.6} {:>14.6} {:>14.6} {}", row.r, row.lhs, row.rhs, row.margin, row.gated);
    }
    println!("slopes vs log r: lhs {:.4}, rhs {:.4}, margin {:.4}", rep.slopes.lhs, rep.slopes.rhs, rep.slopes.margin);
    for n in &rep.notes {
        println!("note: {n}");
    }
    Ok(())
}
