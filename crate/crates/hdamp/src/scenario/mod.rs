//! Deterministic scenario runner behind the `hdamp` CLI.
//!
//! A scenario wires the special-function, amplitude, bound, and zero-scan
//! machinery into one reproducible experiment: a flat key=value config plus
//! a seed fully determine the run, which emits `report.json`, a flat
//! `rows.csv`, and per-plot series CSVs into the output directory. The exit
//! status contract is: zero iff every verdict passed and no sub-operation
//! errored.

mod config;
mod report;
mod runner;

pub use config::{parse_config_text, ResolvedConfig, ScenarioKind};
pub use report::{emit_plot_series, Provenance, ScanReport, Verdict};
pub use runner::run_scenario;
