//! CSV and JSON writers. Each table goes to its own file,
//! `<out>/<scenario>_<table>.<ext>`, so CSV and JSON outputs correspond one to one.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::report::{Report, Table};
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn header_lines(cfg: &RunConfig, table: &Table) -> Vec<String> {
    let mut lines = vec![
        format!("weakval-cli schema {SCHEMA_VERSION}"),
        format!("table: {}", table.name),
        format!("seed: {}", cfg.seed),
    ];
    let config: Vec<String> = cfg.echo().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    lines.push(format!("config: {}", config.join(" ")));
    for c in &table.columns {
        lines.push(format!("column {}: {}", c.name, c.doc));
    }
    lines
}

fn write_csv(path: &Path, cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    let mut file = fs::File::create(path)?;
    for line in header_lines(cfg, table) {
        writeln!(file, "# {line}")?;
    }
    let mut w = csv::Writer::from_writer(file);
    w.write_record(table.columns.iter().map(|c| c.name))?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| v.render()))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonTable<'a> {
    schema: u32,
    table: &'a str,
    seed: u64,
    config: &'a RunConfig,
    columns: &'a [crate::report::Column],
    rows: &'a [Vec<crate::report::Value>],
}

fn write_json(path: &Path, cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    let doc = JsonTable {
        schema: SCHEMA_VERSION,
        table: table.name,
        seed: cfg.seed,
        config: cfg,
        columns: &table.columns,
        rows: &table.rows,
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Writes every table plus the summary; returns the paths written.
pub fn write_report(cfg: &RunConfig, report: &Report) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(&cfg.out)?;
    let summary = report.summary_table();
    let ext = match cfg.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut written = Vec::new();
    for table in report.tables.iter().chain(std::iter::once(&summary)) {
        let path = cfg.out.join(format!("{}_{}.{ext}", cfg.scenario, table.name));
        match cfg.format {
            Format::Csv => write_csv(&path, cfg, table)?,
            Format::Json => write_json(&path, cfg, table)?,
        }
        written.push(path);
    }
    Ok(written)
}
