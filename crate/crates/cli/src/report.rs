//! Read-only summary of every results CSV in a directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::CliError;
use crate::results::{read_results, worst_verdict, RawRow, Verdict};

const SUFFIX: &str = "_results.csv";

/// Largest ratio (value and stored text), worst verdict, row count.
type Group = (Option<(f64, String)>, Verdict, usize);

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub verdict: Verdict,
    pub runs: usize,
    pub rows: usize,
}

/// Collects `*_results.csv` in `dir` (sorted by name) and tabulates them.
/// Values are printed exactly as stored; nothing is recomputed or written.
pub fn report(dir: &Path) -> Result<Report, CliError> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.ends_with(SUFFIX))
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::EmptyReport(dir.display().to_string()));
    }

    let mut runs: Vec<(String, Vec<RawRow>)> = Vec::with_capacity(files.len());
    for f in &files {
        let name = f.file_name().and_then(|n| n.to_str()).unwrap_or_default();
        let run = name.trim_end_matches(SUFFIX).to_string();
        let rows = read_results(fs::File::open(f)?)?;
        runs.push((run, rows));
    }

    let columns = [
        "experiment",
        "alpha",
        "beta",
        "sign",
        "j",
        "k",
        "measured",
        "predicted",
        "ratio",
        "verdict",
    ];
    let mut table: Vec<Vec<String>> = vec![std::iter::once("run")
        .chain(columns)
        .map(str::to_string)
        .collect()];
    let mut verdicts = Vec::new();
    for (run, rows) in &runs {
        for r in rows {
            let mut line = vec![run.clone()];
            line.extend(columns.iter().map(|c| r.get(c).to_string()));
            table.push(line);
            verdicts.push(r.verdict().unwrap_or(Verdict::Invalid));
        }
    }
    let verdict = worst_verdict(&verdicts);
    let mut text = render(&table);

    // per (run, experiment): largest ratio, worst verdict
    let mut groups: BTreeMap<(String, String), Group> = BTreeMap::new();
    for (run, rows) in &runs {
        for r in rows {
            let e = groups
                .entry((run.clone(), r.get("experiment").to_string()))
                .or_insert((None, Verdict::Pass, 0));
            e.2 += 1;
            e.1 = e.1.max(r.verdict().unwrap_or(Verdict::Invalid));
            if let Ok(v) = r.get("ratio").parse::<f64>() {
                if e.0.as_ref().is_none_or(|(best, _)| v > *best) {
                    e.0 = Some((v, r.get("ratio").to_string()));
                }
            }
        }
    }
    text.push_str("\naggregates:\n");
    for ((run, exp), (max, worst, n)) in &groups {
        let max = max.as_ref().map(|m| m.1.as_str()).unwrap_or("-");
        text.push_str(&format!("  {run} {exp}: {n} rows, max ratio {max}, {worst}\n"));
    }
    let slopes: Vec<String> = runs
        .iter()
        .flat_map(|(run, rows)| {
            rows.iter()
                .filter(|r| r.get("experiment") == "strichartz_fit")
                .map(move |r| {
                    format!(
                        "  {run} alpha={} beta={} k={}: slope {} (predicted {}) {}\n",
                        r.get("alpha"),
                        r.get("beta"),
                        r.get("k"),
                        r.get("measured"),
                        r.get("predicted"),
                        r.get("verdict")
                    )
                })
        })
        .collect();
    if !slopes.is_empty() {
        text.push_str("\nfitted slopes:\n");
        for s in slopes {
            text.push_str(&s);
        }
    }
    text.push_str(&format!("\noverall: {verdict}\n"));
    Ok(Report {
        text,
        verdict,
        runs: runs.len(),
        rows: verdicts.len(),
    })
}

fn render(table: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..table[0].len())
        .map(|c| table.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in table {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}
