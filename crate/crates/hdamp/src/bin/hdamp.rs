//! Thin CLI over the scenario runner.
//!
//! `hdamp run --scenario <name> [--config <file>] --out <dir> [--ctx.N 2 ...]`
//! runs one scenario and writes report.json, rows.csv, and the plot series
//! into the output directory; the exit status is 0 only when every verdict
//! passed. `hdamp plot --report <file> --series <name>` re-emits one series
//! CSV from a written report. Trailing `--dotted.key value` pairs override
//! config-file and default values.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hdamp::scenario::{emit_plot_series, parse_config_text, run_scenario, ResolvedConfig, ScenarioKind};

#[derive(Parser)]
#[command(name = "hdamp", version, about = "High-dimensional amplitude bound scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its report artifacts.
    Run {
        /// Scenario name (orthogonality, lemma1, zero-spacing, bound-sweep,
        /// sigma-scaling, zero-census, harnack, jensen).
        #[arg(long)]
        scenario: String,
        /// Optional key=value config file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for report.json, rows.csv, and series CSVs.
        #[arg(long)]
        out: PathBuf,
        /// Trailing overrides: `--ctx.N 2.0 --seed 7 ...`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// Re-emit a named plot series from a written report.
    Plot {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        series: String,
    },
}

/// Parse `--key value` / `--key=value` pairs into an override map.
fn parse_overrides(args: &[String]) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        let flag = flag
            .strip_prefix("--")
            .ok_or_else(|| format!("override '{flag}' must start with --"))?;
        if let Some((k, v)) = flag.split_once('=') {
            map.insert(k.to_string(), v.to_string());
        } else {
            let v = it
                .next()
                .ok_or_else(|| format!("override --{flag} is missing a value"))?;
            map.insert(flag.to_string(), v.clone());
        }
    }
    Ok(map)
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Run {
            scenario,
            config,
            out,
            overrides,
        } => {
            let kind: ScenarioKind = scenario.parse().map_err(|e| format!("{e}"))?;
            let file_map = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("config {}: {e}", path.display()))?;
                    parse_config_text(&text).map_err(|e| format!("{e}"))?
                }
                None => BTreeMap::new(),
            };
            let over = parse_overrides(&overrides)?;
            let resolved =
                ResolvedConfig::resolve(kind, &file_map, &over).map_err(|e| format!("{e}"))?;
            let report = run_scenario(&resolved, &out).map_err(|e| format!("{e}"))?;
            for v in &report.verdicts {
                let status = if v.pass { "pass" } else { "FAIL" };
                println!("[{status}] {}: {}", v.name, v.detail);
            }
            println!(
                "report: {} ({} rows, {} verdicts)",
                out.join("report.json").display(),
                report.rows.len(),
                report.verdicts.len()
            );
            Ok(report.all_pass())
        }
        Command::Plot { report, series } => {
            let path = emit_plot_series(&report, &series).map_err(|e| format!("{e}"))?;
            println!("{}", path.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
