//! Advisor report output.

use std::io::Write;
use std::path::Path;

use rescuenet_core::{AdvisorReport, CandidateOutcome};

use crate::error::{Error, Result};

pub const HEADER: [&str; 11] = [
    "stage",
    "platform",
    "n_a",
    "budget",
    "capacity_mode",
    "ergodic_capacity_bps",
    "ci95_low",
    "ci95_high",
    "coverage_probability",
    "seed",
    "best",
];

fn row(stage: &str, o: &CandidateOutcome, mode: &str, seed: u64, best: bool) -> [String; 11] {
    let num = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    [
        stage.to_string(),
        o.fleet.platform.name.clone(),
        o.fleet.size.to_string(),
        o.budget.to_string(),
        mode.to_string(),
        num(o.estimate.map(|e| e.ergodic_capacity)),
        num(o.estimate.map(|e| e.ci95_low)),
        num(o.estimate.map(|e| e.ci95_high)),
        o.coverage_probability.to_string(),
        seed.to_string(),
        best.to_string(),
    ]
}

/// Finalists first, then candidates dropped during screening.
pub fn write_report<W: Write>(
    report: &AdvisorReport,
    mode: &str,
    seed: u64,
    out: W,
) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(HEADER)?;
    for o in &report.table {
        writer.write_record(row("final", o, mode, seed, o.index == report.best))?;
    }
    for o in &report.eliminated {
        writer.write_record(row("eliminated", o, mode, seed, false))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn emit_report(report: &AdvisorReport, mode: &str, seed: u64, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_report(report, mode, seed, std::io::BufWriter::new(file)).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// One-line recommendation for the terminal.
pub fn recommendation(report: &AdvisorReport) -> String {
    let best = report.best_outcome();
    let capacity = best
        .estimate
        .map(|e| format!("{:.4e} bit/s", e.ergodic_capacity))
        .unwrap_or_else(|| "undefined".into());
    format!(
        "recommendation: {} x{} (capacity {}, coverage {:.4}, margin {:.4e} bit/s, {})",
        best.fleet.platform.name,
        best.fleet.size,
        capacity,
        best.coverage_probability,
        report.margin,
        if report.statistically_resolved {
            "resolved"
        } else {
            "not statistically resolved"
        }
    )
}
