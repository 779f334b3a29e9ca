//! Batch runs over a directory of scenario files.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::checks::run_scenario;
use super::report::{write_atomic, MarginReport};
use super::scenario::Scenario;
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub file: PathBuf,
    pub scenario: String,
    pub target: String,
    /// Verdict label, or `error: ...` for rejected hypotheses and failures.
    pub verdict: String,
    pub min_margin: Option<f64>,
    pub gated_violation: bool,
    /// `Some(false)` when the scenario's `expect` field disagrees with the outcome.
    pub expectation_met: Option<bool>,
    #[serde(skip)]
    pub report: Option<MarginReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteSummary {
    /// Nonzero iff some scenario has a gated violation outside `W`.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.entries.iter().any(|e| e.gated_violation))
    }

    pub fn table(&self) -> String {
        let mut s = format!("{:<34} {:<16} {:<20} {:>12}  {}\n", "scenario", "target", "verdict", "min-margin", "expected");
        for e in &self.entries {
            let m = e.min_margin.map_or("-".to_string(), |m| format!("{m:.4}"));
            let x = match e.expectation_met {
                None => "-",
                Some(true) => "ok",
                Some(false) => "MISMATCH",
            };
            let v: String = e.verdict.chars().take(60).collect();
            s.push_str(&format!("{:<34} {:<16} {:<20} {:>12}  {}\n", e.scenario, e.target, v, m, x));
        }
        s
    }
}

fn entry(path: &Path, out_dir: Option<&Path>) -> SuiteEntry {
    let loaded = Scenario::load(path);
    let (name, target, expect) = match &loaded {
        Ok(s) => (s.name.clone(), s.target.label().to_string(), s.expect.clone()),
        Err(_) => (path.file_stem().unwrap_or_default().to_string_lossy().into_owned(), "-".into(), None),
    };
    let result = loaded.and_then(|s| run_scenario(&s));
    let (verdict, min_margin, gated_violation, report) = match result {
        Ok(rep) => {
            if let Some(dir) = out_dir {
                let _ = write_atomic(&dir.join(format!("{name}.csv")), rep.to_csv().as_bytes());
            }
            (rep.verdict.label().to_string(), Some(rep.min_margin()), rep.has_gated_violation(), Some(rep))
        }
        Err(e) => (format!("error: {e}"), None, false, None),
    };
    let expectation_met = expect.map(|x| if x == "error" { verdict.starts_with("error") } else { verdict == x });
    SuiteEntry { file: path.to_path_buf(), scenario: name, target, verdict, min_margin, gated_violation, expectation_met, report }
}

/// Runs every `*.json` scenario in `dir` (sorted by file name), optionally writing one CSV each.
pub fn run_suite(dir: &Path, out_dir: Option<&Path>) -> Result<SuiteSummary> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if let Some(d) = out_dir {
        std::fs::create_dir_all(d)?;
    }
    let entries = files.par_iter().map(|p| entry(p, out_dir)).collect();
    Ok(SuiteSummary { entries })
}
