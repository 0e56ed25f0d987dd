//! Report assembly and emission: `report.json` (the full scan report),
//! `rows.csv` (the flat table), and named two-column plot series.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! repeated run with the same config and seed reproduces every data file
//! byte for byte; only the provenance timestamp differs between runs.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Provenance {
    pub version: String,
    pub timestamp: String,
    pub seed: u64,
}

/// A named plot series: a projection of two row columns.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SeriesDef {
    pub x_column: String,
    pub y_column: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScanReport {
    pub scenario: String,
    pub config_echo: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub verdicts: Vec<Verdict>,
    pub series: BTreeMap<String, SeriesDef>,
    pub provenance: Provenance,
}

impl ScanReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Config(format!("report has no column '{name}'")))
    }

    /// Write report.json, rows.csv, and one CSV per registered series.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(
            dir.join("report.json"),
            serde_json::to_string_pretty(self).expect("report serialization cannot fail"),
        )?;
        fs::write(dir.join("rows.csv"), self.rows_csv())?;
        for name in self.series.keys() {
            let (path, text) = self.series_csv(name, dir)?;
            fs::write(path, text)?;
        }
        Ok(())
    }

    pub fn rows_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn series_csv(&self, name: &str, dir: &Path) -> Result<(PathBuf, String)> {
        let def = self.series.get(name).ok_or_else(|| Error::UnknownSeries {
            name: name.to_string(),
            available: self.series.keys().cloned().collect(),
        })?;
        let xi = self.column_index(&def.x_column)?;
        let yi = self.column_index(&def.y_column)?;
        let mut text = format!("{},{}\n", def.x_column, def.y_column);
        for row in &self.rows {
            text.push_str(&format!("{},{}\n", fmt_f64(row[xi]), fmt_f64(row[yi])));
        }
        Ok((dir.join(format!("{name}.csv")), text))
    }
}

/// Shortest round-trip decimal form; `{}` on f64 is exactly that in Rust.
/// NaN and infinities are spelled out so the CSV stays parseable.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v}")
    }
}

/// Re-emit a named series from a written report; returns the output path.
pub fn emit_plot_series(report_path: &Path, series: &str) -> Result<PathBuf> {
    let text = fs::read_to_string(report_path)?;
    let report: ScanReport = serde_json::from_str(&text)?;
    let dir = report_path.parent().unwrap_or_else(|| Path::new("."));
    let (path, csv) = report.series_csv(series, dir)?;
    fs::write(&path, csv)?;
    Ok(path)
}
