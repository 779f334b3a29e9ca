use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orbifold_workbench::algebra::io::PolyDoc;
use orbifold_workbench::algebra::poly::SparsePoly;
use orbifold_workbench::constants::{choose_m, full_profile, parse_rational, MonomialFamily};
use orbifold_workbench::exceptional::build_w;
use orbifold_workbench::harness::report::write_atomic;
use orbifold_workbench::harness::{run_scenario, run_suite, FnSpec, PolyInput, Scenario};
use orbifold_workbench::morphism::{euler_identity_check, general_position_check, jacobian_det, pushforward_curve, PowerMorphism};
use orbifold_workbench::nevanlinna::functionals::{counting_n, proximity_m};
use orbifold_workbench::nevanlinna::{characteristic_t, gcd_counting, MeroFn, RadiusGrid, Target};
use orbifold_workbench::{Error, Result};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Exceptional sets, effective constants and Nevanlinna margins for orbifold curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Functional {
    T,
    N,
    N1,
    M,
    Ngcd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MorphismOp {
    Jacobian,
    Euler,
    Genpos,
    Pushforward,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exceptional set of a plane curve.
    Exset {
        #[arg(long)]
        poly: PathBuf,
        /// Bound on |n1| + |n2|; defaults to 2m for the m chosen from --eps.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Effective constants profile.
    Constants {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        c3: Option<String>,
    },
    /// Nevanlinna functional on a radius grid, as CSV.
    Nev {
        #[arg(long = "fn")]
        function: PathBuf,
        /// `rmin,rmax,count`
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum)]
        functional: Functional,
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Power morphism tools.
    Morphism {
        #[arg(long)]
        f1: PathBuf,
        #[arg(long)]
        f2: PathBuf,
        #[arg(long)]
        f3: PathBuf,
        #[arg(long, value_enum)]
        op: MorphismOp,
        #[arg(long)]
        z: Option<PathBuf>,
    },
    /// Run one scenario and write its margin rows.
    Verify {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every scenario in a directory.
    Suite {
        #[arg(long)]
        dir: PathBuf,
        /// Directory for per-scenario CSV files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// A polynomial file: a term document or a JSON string such as `"x0^2 + x1^2 + x2^2"`.
fn read_poly(path: &Path) -> Result<SparsePoly> {
    let text = read_text(path)?;
    let input: PolyInput = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match &input {
        PolyInput::Doc(d) => d.to_poly(),
        PolyInput::Text(_) => input.resolve(3),
    }
}

fn read_fn(path: &Path) -> Result<MeroFn> {
    let spec: FnSpec = serde_json::from_str(&read_text(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    spec.mero()
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    let mut so = std::io::stdout().lock();
    match cmd {
        Cmd::Exset { poly, bound, eps, out } => {
            let g = read_poly(&poly)?;
            let bound = match (bound, eps) {
                (Some(b), _) => b,
                (None, Some(e)) => {
                    let b = 2 * choose_m(&parse_rational(&e)?, 2, g.degree())?;
                    eprintln!("bound {b} = 2m for eps {e}; pass --bound to override");
                    b
                }
                (None, None) => return Err(Error::InvalidInput("give --bound or --eps".into())),
            };
            let w = build_w(&g, bound)?;
            match out {
                Some(p) => {
                    write_atomic(&p, w.to_json().as_bytes())?;
                    writeln!(so, "{} curves written to {}", w.len(), p.display())?;
                }
                None => writeln!(so, "{}", w.to_json())?,
            }
        }
        Cmd::Constants { n, d, eps, family, c3 } => {
            let eps = parse_rational(&eps)?;
            let fam = match family {
                Some(p) => Some(MonomialFamily::from_json(&serde_json::from_str(&read_text(&p)?)?)?),
                None => None,
            };
            let c3 = c3.as_deref().map(parse_rational).transpose()?;
            let p = full_profile(&eps, n, d, fam.as_ref(), c3.as_ref())?;
            writeln!(so, "{}", serde_json::to_string_pretty(&p.to_json())?)?;
        }
        Cmd::Nev { function, grid, functional, other } => {
            let f = read_fn(&function)?;
            let parts: Vec<&str> = grid.split(',').collect();
            let bad = || Error::Parse(format!("grid must be rmin,rmax,count, got `{grid}`"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let rmin: f64 = parts[0].trim().parse().map_err(|_| bad())?;
            let rmax: f64 = parts[1].trim().parse().map_err(|_| bad())?;
            let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
            let mut g = RadiusGrid::log_spaced(rmin, rmax, count)?;
            let mut moduli: Vec<f64> = f.divisor(Target::Zeros)?.iter().chain(&f.divisor(Target::Poles)?).map(|p| p.center.norm()).collect();
            let other = other.map(|p| read_fn(&p)).transpose()?;
            if let Some(o) = &other {
                moduli.extend(o.divisor(Target::Zeros)?.iter().map(|p| p.center.norm()));
            }
            g.avoid(&moduli);
            writeln!(so, "r,value")?;
            for &r in &g.points {
                let v = match functional {
                    Functional::T => characteristic_t(&f, r)?,
                    Functional::N => counting_n(&f, Target::Zeros, r, None)?,
                    Functional::N1 => counting_n(&f, Target::Zeros, r, Some(1))?,
                    Functional::M => proximity_m(&f, r)?,
                    Functional::Ngcd => {
                        let o = other.as_ref().ok_or_else(|| Error::InvalidInput("Ngcd needs --other".into()))?;
                        gcd_counting(&f, o, r)?
                    }
                };
                writeln!(so, "{r:.12e},{v:.12e}")?;
            }
        }
        Cmd::Morphism { f1, f2, f3, op, z } => {
            let fs = [read_poly(&f1)?, read_poly(&f2)?, read_poly(&f3)?];
            match op {
                MorphismOp::Genpos => {
                    let rep = general_position_check(&fs)?;
                    for ((i, j), p) in &rep.points {
                        writeln!(so, "F{} . F{}: {}", i + 1, j + 1, p.describe())?;
                    }
                    for v in &rep.violations {
                        writeln!(so, "violation: F{} passes through {} on F{} . F{}", v.other + 1, v.point.describe(), v.pair.0 + 1, v.pair.1 + 1)?;
                    }
                    writeln!(so, "general position: {}", rep.in_general_position())?;
                }
                _ => {
                    let [a, b, c] = fs;
                    let m = PowerMorphism::new(a, b, c)?;
                    writeln!(so, "a = {:?}", m.a)?;
                    match op {
                        MorphismOp::Jacobian => {
                            writeln!(so, "reduced: {}", jacobian_det(&m, true))?;
                            writeln!(so, "full: {}", jacobian_det(&m, false))?;
                        }
                        MorphismOp::Euler => writeln!(so, "{}", serde_json::to_string_pretty(&euler_identity_check(&m))?)?,
                        _ => {
                            let z = read_poly(z.as_deref().ok_or_else(|| Error::InvalidInput("pushforward needs --z".into()))?)?;
                            let pf = pushforward_curve(&m, &z)?;
                            writeln!(so, "A = {}", pf.a.to_string_with(&["y0", "y1", "y2"]))?;
                            writeln!(so, "vanishing order = {}, exponent reduced = {}", pf.vanishing_order, pf.exponent_reduced)?;
                            writeln!(so, "{}", serde_json::to_string_pretty(&PolyDoc::from_poly(&pf.a))?)?;
                        }
                    }
                }
            }
        }
        Cmd::Verify { scenario, out } => {
            let s = Scenario::load(&scenario)?;
            let rep = run_scenario(&s)?;
            match out {
                Some(p) => rep.write_csv(&p)?,
                None => write!(so, "{}", rep.to_csv())?,
            }
            eprintln!("{} [{}]: {} (min margin {:.6})", rep.scenario, rep.target, rep.verdict.label(), rep.min_margin());
            for n in &rep.notes {
                eprintln!("  {n}");
            }
            return Ok(if rep.has_gated_violation() { ExitCode::FAILURE } else { ExitCode::SUCCESS });
        }
        Cmd::Suite { dir, out } => {
            let summary = run_suite(&dir, out.as_deref())?;
            write!(so, "{}", summary.table())?;
            return Ok(ExitCode::from(summary.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse().cmd) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
