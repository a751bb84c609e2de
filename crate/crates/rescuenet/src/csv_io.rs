//! Sweep CSV format.
//!
//! One header line, then one row per record in fleet-then-axis order.
//! Numbers use Rust's shortest round-trip decimal form, so parsing a file
//! back gives the exact values that were written. Capacity cells are empty
//! when a conditional estimate is undefined.

use std::io::Write;
use std::path::Path;

use rescuenet_core::CapacityMode;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::sweep::{SweepRecord, SweepResult};

pub const HEADER: [&str; 11] = [
    "sweep_variable",
    "sweep_value_km",
    "platform",
    "n_a",
    "capacity_mode",
    "ergodic_capacity_bps",
    "ci95_low",
    "ci95_high",
    "coverage_probability",
    "iterations",
    "seed",
];

/// One parsed CSV row.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CsvRow {
    pub sweep_variable: String,
    pub sweep_value_km: f64,
    pub platform: String,
    pub n_a: usize,
    pub capacity_mode: String,
    pub ergodic_capacity_bps: Option<f64>,
    pub ci95_low: Option<f64>,
    pub ci95_high: Option<f64>,
    pub coverage_probability: f64,
    pub iterations: u64,
    pub seed: u64,
}

impl From<&SweepRecord> for CsvRow {
    fn from(r: &SweepRecord) -> Self {
        Self {
            sweep_variable: r.variable.label().to_string(),
            sweep_value_km: r.value,
            platform: r.platform.clone(),
            n_a: r.fleet_size,
            capacity_mode: mode_label(r.mode).to_string(),
            ergodic_capacity_bps: r.estimate.map(|e| e.ergodic_capacity),
            ci95_low: r.estimate.map(|e| e.ci95_low),
            ci95_high: r.estimate.map(|e| e.ci95_high),
            coverage_probability: r.coverage_probability,
            iterations: r.iterations,
            seed: r.seed,
        }
    }
}

fn mode_label(mode: CapacityMode) -> &'static str {
    mode.as_str()
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(HEADER)?;
    for record in &result.records {
        let row = CsvRow::from(record);
        writer.write_record([
            row.sweep_variable,
            row.sweep_value_km.to_string(),
            row.platform,
            row.n_a.to_string(),
            row.capacity_mode,
            cell(row.ergodic_capacity_bps),
            cell(row.ci95_low),
            cell(row.ci95_high),
            row.coverage_probability.to_string(),
            row.iterations.to_string(),
            row.seed.to_string(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes `result` to `path`.
pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(result, std::io::BufWriter::new(file)).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let header = reader.headers().map_err(csv_err)?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::config(
            path.display().to_string(),
            "CSV header does not match the sweep schema",
        ));
    }
    reader
        .deserialize()
        .collect::<csv::Result<Vec<CsvRow>>>()
        .map_err(csv_err)
}
