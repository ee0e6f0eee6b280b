//! Text and CSV rendering of search results.
//!
//! Amplitude-damping rows form a table with one line per `n`; dephasing rows
//! form an `n × r` grid. A cell shows the best dimension, `-` when no code
//! with `K >= 2` is known (or the cell was not run), and a trailing `*` when
//! the value is only a lower bound.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{CwsError, Result};
use crate::error_model::ErrorSetKind;
use crate::search::{ResultsRow, ResultsTable};

/// Column order of the CSV output.
pub const CSV_COLUMNS: [&str; 13] = [
    "n",
    "error_set",
    "r",
    "mode",
    "best_k",
    "exhaustive",
    "strict_degeneracy",
    "connected_only",
    "seed",
    "iterations",
    "instances",
    "elapsed_seconds",
    "witness",
];

/// Reads `DIR/results.json`, or every `results.json` one level below `DIR`.
pub fn load_results(dir: &Path) -> Result<ResultsTable> {
    let direct = dir.join("results.json");
    if direct.is_file() {
        return ResultsTable::parse(&fs::read_to_string(direct)?);
    }
    let mut subdirs: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("results.json").is_file())
        .collect();
    subdirs.sort();
    let mut table = ResultsTable::default();
    for d in subdirs {
        table
            .rows
            .extend(ResultsTable::parse(&fs::read_to_string(d.join("results.json"))?)?.rows);
    }
    if table.rows.is_empty() {
        return Err(CwsError::InvalidParameter(format!(
            "no results.json in {} or its subdirectories",
            dir.display()
        )));
    }
    Ok(table)
}

pub fn cell(row: Option<&ResultsRow>) -> String {
    match row.and_then(|r| r.best_k.map(|k| (k, r.exhaustive))) {
        Some((k, exhaustive)) if k >= 2 => {
            if exhaustive {
                k.to_string()
            } else {
                format!("{k}*")
            }
        }
        _ => "-".to_string(),
    }
}

/// Preference when several rows share a cell: exhaustive first, then larger K.
fn better(a: &ResultsRow, b: &ResultsRow) -> bool {
    (a.exhaustive, a.best_k) > (b.exhaustive, b.best_k)
}

fn pick<'a, K: Ord>(map: &mut BTreeMap<K, &'a ResultsRow>, key: K, row: &'a ResultsRow) {
    match map.get(&key) {
        Some(old) if !better(row, old) => {}
        _ => {
            map.insert(key, row);
        }
    }
}

pub fn render_text(table: &ResultsTable) -> String {
    let mut ad: BTreeMap<(usize, u8), &ResultsRow> = BTreeMap::new();
    let mut dephase: BTreeMap<(usize, usize), &ResultsRow> = BTreeMap::new();
    let mut custom = Vec::new();
    for row in &table.rows {
        match row.error_set {
            ErrorSetKind::Ad1 => pick(&mut ad, (row.n, 1), row),
            ErrorSetKind::Ad2 => pick(&mut ad, (row.n, 2), row),
            ErrorSetKind::Dephase { r } => pick(&mut dephase, (row.n, r), row),
            ErrorSetKind::Custom => custom.push(row),
        }
    }
    let mut out = String::new();
    if !ad.is_empty() {
        out.push_str("Amplitude damping\n");
        out.push_str(&format!("{:>3}  {:>6}  {:>6}\n", "n", "AD1", "AD2"));
        let ns: std::collections::BTreeSet<usize> = ad.keys().map(|k| k.0).collect();
        for n in ns {
            out.push_str(&format!(
                "{:>3}  {:>6}  {:>6}\n",
                n,
                cell(ad.get(&(n, 1)).copied()),
                cell(ad.get(&(n, 2)).copied())
            ));
        }
    }
    if !dephase.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        let max_r = dephase.keys().map(|k| k.1).max().unwrap_or(1);
        out.push_str("Single error plus dephasing up to weight r\n");
        out.push_str(&format!("{:>3}", "n"));
        for r in 1..=max_r {
            out.push_str(&format!("  {:>5}", format!("r={r}")));
        }
        out.push('\n');
        let ns: std::collections::BTreeSet<usize> = dephase.keys().map(|k| k.0).collect();
        for n in ns {
            out.push_str(&format!("{n:>3}"));
            for r in 1..=max_r {
                out.push_str(&format!("  {:>5}", cell(dephase.get(&(n, r)).copied())));
            }
            out.push('\n');
        }
    }
    if !custom.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str("Custom error sets\n");
        for row in custom {
            out.push_str(&format!("{:>3}  {:>6}\n", row.n, cell(Some(row))));
        }
    }
    out
}

pub fn render_csv(table: &ResultsTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CwsError::InvalidParameter(format!("csv: {e}"));
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for row in &table.rows {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let witness = row
            .witnesses
            .first()
            .and_then(|w| w.file.clone())
            .unwrap_or_default();
        w.write_record([
            row.n.to_string(),
            row.error_set.name().to_string(),
            row.error_set.r().map(|r| r.to_string()).unwrap_or_default(),
            format!("{:?}", row.mode).to_lowercase(),
            row.best_k.map(|k| k.to_string()).unwrap_or_default(),
            row.exhaustive.to_string(),
            row.strict_degeneracy.to_string(),
            row.connected_only.to_string(),
            opt(row.seed),
            opt(row.iterations),
            row.instances.to_string(),
            format!("{:.3}", row.elapsed_seconds),
            witness,
        ])
        .map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CwsError::InvalidParameter(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
