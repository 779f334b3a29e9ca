//! Margin rows, verdicts and fitted slopes for inequalities `lhs <= rhs` sampled on a radius grid.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MarginRow {
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
    /// `r >= r_pass`: only gated rows decide the verdict.
    pub gated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnGrid,
    ViolatedAt { radii: Vec<f64> },
    ExcludedByW { curves: Vec<String> },
    /// The inequality fails but the curve satisfies the degenerate alternative of the gcd bound.
    DegenerateBranch { tuples: Vec<Vec<i64>> },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::HoldsOnGrid => "holds-on-grid",
            Verdict::ViolatedAt { .. } => "violated-at",
            Verdict::ExcludedByW { .. } => "excluded-by-W",
            Verdict::DegenerateBranch { .. } => "degenerate-branch",
        }
    }
}

/// Least-squares slopes against `log r` over the gated rows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Slopes {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginReport {
    pub scenario: String,
    pub target: String,
    pub rows: Vec<MarginRow>,
    pub verdict: Verdict,
    pub slopes: Slopes,
    pub r_pass: f64,
    /// Named per-radius series behind `lhs` and `rhs` (e.g. `N`, `N1`, `T`).
    pub series: BTreeMap<String, Vec<f64>>,
    /// Hypothesis checks performed, fitted constants, skipped steps.
    pub notes: Vec<String>,
    /// Primitive exponent tuples flagged by the degeneracy scan.
    pub degenerate_tuples: Vec<Vec<i64>>,
}

/// Slope of `ys` against `ln xs`; `NaN` with fewer than two points.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    fit_linear(&xs.iter().map(|x| x.ln()).collect::<Vec<_>>(), ys)
}

/// Least-squares slope of `ys` against `us`.
pub fn fit_linear(lx: &[f64], ys: &[f64]) -> f64 {
    let n = lx.len() as f64;
    if lx.len() < 2 {
        return f64::NAN;
    }
    let mx = lx.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn tolerance(row: &MarginRow) -> f64 {
    1e-9 * (1.0 + row.lhs.abs() + row.rhs.abs())
}

impl MarginReport {
    /// Builds rows, slopes and the verdict; `w_hits` (curves of `W` containing the curve) overrides.
    pub fn assemble(
        scenario: &str,
        target: &str,
        radii: &[f64],
        lhs: &[f64],
        rhs: &[f64],
        r_pass: f64,
        w_hits: Vec<String>,
    ) -> MarginReport {
        let rows: Vec<MarginRow> = radii
            .iter()
            .zip(lhs.iter().zip(rhs))
            .map(|(&r, (&l, &h))| MarginRow { r, lhs: l, rhs: h, margin: h - l, gated: r >= r_pass })
            .collect();
        let gated: Vec<&MarginRow> = rows.iter().filter(|r| r.gated).collect();
        let xs: Vec<f64> = gated.iter().map(|r| r.r).collect();
        let slopes = Slopes {
            lhs: fit_slope(&xs, &gated.iter().map(|r| r.lhs).collect::<Vec<_>>()),
            rhs: fit_slope(&xs, &gated.iter().map(|r| r.rhs).collect::<Vec<_>>()),
            margin: fit_slope(&xs, &gated.iter().map(|r| r.margin).collect::<Vec<_>>()),
        };
        let bad: Vec<f64> = gated.iter().filter(|r| !(r.margin >= -tolerance(r))).map(|r| r.r).collect();
        let verdict = if !w_hits.is_empty() {
            Verdict::ExcludedByW { curves: w_hits }
        } else if bad.is_empty() {
            Verdict::HoldsOnGrid
        } else {
            Verdict::ViolatedAt { radii: bad }
        };
        MarginReport {
            scenario: scenario.to_string(),
            target: target.to_string(),
            rows,
            verdict,
            slopes,
            r_pass,
            series: BTreeMap::new(),
            notes: Vec::new(),
            degenerate_tuples: Vec::new(),
        }
    }

    pub fn min_margin(&self) -> f64 {
        self.rows.iter().filter(|r| r.gated).map(|r| r.margin).fold(f64::INFINITY, f64::min)
    }

    /// A gated row violates the inequality and the curve is not excused by `W`.
    pub fn has_gated_violation(&self) -> bool {
        matches!(self.verdict, Verdict::ViolatedAt { .. })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,lhs,rhs,margin,gated\n");
        for row in &self.rows {
            s.push_str(&format!("{:.12e},{:.12e},{:.12e},{:.12e},{}\n", row.r, row.lhs, row.rhs, row.margin, row.gated));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Writes the CSV through a temporary file in the same directory.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_log() {
        let xs = [1.0, 10.0, 100.0, 1000.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.ln() + 1.0).collect();
        assert!((fit_slope(&xs, &ys) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn verdicts() {
        let r = [1.0, 10.0, 100.0];
        let rep = MarginReport::assemble("s", "t", &r, &[5.0, 1.0, 1.0], &[0.0, 2.0, 3.0], 10.0, vec![]);
        assert_eq!(rep.verdict, Verdict::HoldsOnGrid);
        assert!(!rep.rows[0].gated);
        let rep = MarginReport::assemble("s", "t", &r, &[0.0, 1.0, 4.0], &[0.0, 2.0, 3.0], 10.0, vec![]);
        assert_eq!(rep.verdict, Verdict::ViolatedAt { radii: vec![100.0] });
        assert!(rep.has_gated_violation());
        let rep = MarginReport::assemble("s", "t", &r, &[0.0, 1.0, 4.0], &[0.0, 2.0, 3.0], 10.0, vec!["x2 = x0".into()]);
        assert!(!rep.has_gated_violation());
        assert!(rep.to_csv().starts_with("r,lhs,rhs,margin,gated\n"));
    }
}
