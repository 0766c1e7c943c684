//! Benchmark output: `trials.csv` with one row per trial and `summary.json`
//! with per-model accuracies and the effective configuration.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::dataset::{create, csv_error};
use crate::domain::{parse_response, parse_task};
use crate::error::{Error, Result};
use crate::harness::{accuracy_summary, BenchmarkResult, TrialOutcome};

pub const TRIALS_FILE: &str = "trials.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const TRIALS_HEADER: [&str; 7] = [
    "model",
    "subject",
    "seq",
    "task",
    "prediction",
    "truth",
    "hit",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelAccuracy {
    pub model: String,
    pub accuracy: f64,
    pub hits: usize,
    pub trials: usize,
    pub per_task: BTreeMap<String, f64>,
    pub per_subject: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub version: String,
    pub seed: u64,
    pub config: RunConfig,
    pub models: Vec<ModelAccuracy>,
}

impl Summary {
    pub fn build(result: &BenchmarkResult, config: &RunConfig) -> Result<Self> {
        let models = accuracy_summary(result)?
            .into_iter()
            .map(|s| ModelAccuracy {
                accuracy: s.accuracy(),
                hits: s.overall.hits,
                trials: s.overall.trials,
                per_task: s
                    .per_task
                    .iter()
                    .map(|(t, tally)| (t.code(), tally.accuracy().unwrap_or(0.0)))
                    .collect(),
                per_subject: s
                    .per_subject
                    .iter()
                    .map(|(id, tally)| (id.clone(), tally.accuracy().unwrap_or(0.0)))
                    .collect(),
                model: s.model,
            })
            .collect();
        Ok(Summary {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: config.seed,
            config: config.clone(),
            models,
        })
    }

    pub fn model(&self, id: &str) -> Option<&ModelAccuracy> {
        self.models.iter().find(|m| m.model == id)
    }
}

pub fn write_trials<W: Write>(result: &BenchmarkResult, writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(TRIALS_HEADER)?;
    for o in result.outcomes() {
        w.write_record([
            o.model.as_str(),
            o.subject.as_str(),
            &o.seq.to_string(),
            &o.task.code(),
            o.prediction.code(),
            o.truth.code(),
            if o.hit { "1" } else { "0" },
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `trials.csv` and `summary.json` into `dir`, creating it if needed.
pub fn save_results(
    result: &BenchmarkResult,
    config: &RunConfig,
    dir: impl AsRef<Path>,
) -> Result<Summary> {
    let dir = dir.as_ref();
    let trials_path = dir.join(TRIALS_FILE);
    write_trials(result, create(&trials_path)?).map_err(|e| csv_error(&trials_path, e))?;

    let summary = Summary::build(result, config)?;
    let summary_path = dir.join(SUMMARY_FILE);
    let mut file = create(&summary_path)?;
    let json = serde_json::to_string_pretty(&summary).expect("summary serialises");
    writeln!(file, "{json}").map_err(|source| Error::Io {
        path: summary_path,
        source,
    })?;
    Ok(summary)
}

/// Reads a `trials.csv` back into a result.
pub fn load_trials(path: impl AsRef<Path>) -> Result<BenchmarkResult> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut rdr = csv::Reader::from_reader(file);
    let row_err = |row: usize, reason: String| Error::Row {
        path: PathBuf::from(path),
        row,
        reason,
    };
    let headers = rdr.headers().map_err(|e| csv_error(path, e))?;
    if headers.iter().collect::<Vec<_>>() != TRIALS_HEADER {
        return Err(row_err(
            1,
            format!("expected header {}", TRIALS_HEADER.join(",")),
        ));
    }
    let mut outcomes = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let seq = rec[2]
            .parse()
            .map_err(|_| row_err(line, format!("invalid seq \"{}\"", &rec[2])))?;
        let task = parse_task(&rec[3]).map_err(|e| row_err(line, e.to_string()))?;
        let prediction = parse_response(&rec[4]).map_err(|e| row_err(line, e.to_string()))?;
        let truth = parse_response(&rec[5]).map_err(|e| row_err(line, e.to_string()))?;
        let o = TrialOutcome::new(&rec[0], &rec[1], seq, task, prediction, truth);
        let hit = match &rec[6] {
            "1" => true,
            "0" => false,
            other => return Err(row_err(line, format!("invalid hit \"{other}\""))),
        };
        if hit != o.hit {
            return Err(row_err(
                line,
                "hit column disagrees with prediction and truth".into(),
            ));
        }
        outcomes.push(o);
    }
    Ok(BenchmarkResult::new(outcomes))
}

pub fn load_summary(path: impl AsRef<Path>) -> Result<Summary> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
