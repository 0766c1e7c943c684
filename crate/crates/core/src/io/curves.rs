//! CSV emission for entropy tables and accuracy curves.

use std::io::Write;
use std::path::Path;

use super::dataset::{create, csv_error};
use crate::analysis::{CurvePoint, EntropyReport, ScatterPoint};
use crate::domain::Response;
use crate::error::Result;

pub const CURVE_HEADER: [&str; 4] = ["x", "model", "accuracy", "n"];

pub fn write_curve<W: Write>(points: &[CurvePoint], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CURVE_HEADER)?;
    for p in points {
        w.write_record([
            p.x.to_string(),
            p.model.clone(),
            p.accuracy.to_string(),
            p.n.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_scatter<W: Write>(points: &[ScatterPoint], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["task", "entropy", "model", "accuracy", "n"])?;
    for p in points {
        w.write_record([
            p.task.code(),
            p.entropy.to_string(),
            p.model.clone(),
            p.accuracy.to_string(),
            p.n.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per task: respondent count, entropy, then the relative frequency of each
/// response in canonical order.
pub fn write_entropy_report<W: Write>(report: &EntropyReport, writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["task", "n", "entropy"];
    header.extend(Response::ALL.iter().map(|r| r.code()));
    w.write_record(&header)?;
    for t in &report.tasks {
        let mut row = vec![
            t.task.code(),
            t.distribution.total().to_string(),
            t.entropy.to_string(),
        ];
        row.extend(t.distribution.probabilities().iter().map(|p| p.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_curve(points: &[CurvePoint], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_curve(points, create(path)?).map_err(|e| csv_error(path, e))
}

pub fn save_scatter(points: &[ScatterPoint], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_scatter(points, create(path)?).map_err(|e| csv_error(path, e))
}

pub fn save_entropy_report(report: &EntropyReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_entropy_report(report, create(path)?).map_err(|e| csv_error(path, e))
}
