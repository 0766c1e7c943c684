//! Models given as prediction tables: each task maps to an ordered list of
//! conclusions, most preferred first.
//!
//! File format: a JSON object whose keys are the 64 task codes and whose
//! values are non-empty arrays of response codes.
//!
//! ```json
//! { "AA1": ["Aac", "Iac"], "AA2": ["NVC"], ... }
//! ```

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use super::Model;
use crate::domain::{enumerate_tasks, parse_response, parse_task, Response, Task, NUM_TASKS};
use crate::error::{Error, ModelError, Result};

/// A total mapping from tasks to preference-ordered responses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictionTable {
    entries: Vec<Vec<Response>>,
}

impl PredictionTable {
    /// Validates totality and code membership.
    pub fn new(entries: BTreeMap<String, Vec<String>>) -> Result<Self> {
        let mut table: Vec<Option<Vec<Response>>> = vec![None; NUM_TASKS];
        for (code, responses) in entries {
            let task =
                parse_task(&code).map_err(|e| Error::Table(format!("key \"{code}\": {e}")))?;
            if responses.is_empty() {
                return Err(Error::Table(format!("task {code} lists no responses")));
            }
            let parsed = responses
                .iter()
                .map(|r| parse_response(r))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Table(format!("task {code}: {e}")))?;
            table[task.index()] = Some(parsed);
        }
        let missing: Vec<String> = enumerate_tasks()
            .iter()
            .filter(|t| table[t.index()].is_none())
            .map(|t| t.code())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Table(format!(
                "missing tasks: {}",
                missing.join(", ")
            )));
        }
        Ok(PredictionTable {
            entries: table.into_iter().flatten().collect(),
        })
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let raw: BTreeMap<String, Vec<String>> =
            serde_json::from_str(json).map_err(|e| Error::Table(e.to_string()))?;
        Self::new(raw)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Builds a table from a per-task function.
    pub fn from_fn(mut f: impl FnMut(Task) -> Vec<Response>) -> Self {
        let entries = enumerate_tasks().iter().map(|t| f(*t)).collect::<Vec<_>>();
        assert!(entries.iter().all(|e| !e.is_empty()), "empty table entry");
        PredictionTable { entries }
    }

    pub fn responses(&self, task: Task) -> &[Response] {
        &self.entries[task.index()]
    }

    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, Vec<&str>> = enumerate_tasks()
            .iter()
            .map(|t| {
                (
                    t.code(),
                    self.responses(*t).iter().map(|r| r.code()).collect(),
                )
            })
            .collect();
        serde_json::to_string_pretty(&map).expect("table serialises")
    }
}

/// Answers with the first listed response of a [`PredictionTable`].
#[derive(Debug, Clone)]
pub struct TableModel {
    id: String,
    table: Arc<PredictionTable>,
}

impl TableModel {
    pub fn new(id: impl Into<String>, table: Arc<PredictionTable>) -> Self {
        TableModel {
            id: id.into(),
            table,
        }
    }
}

impl Model for TableModel {
    fn id(&self) -> &str {
        &self.id
    }

    fn predict(&mut self, task: Task) -> Result<Response, ModelError> {
        Ok(self.table.responses(task)[0])
    }

    fn ranking(&mut self, task: Task) -> Result<Vec<Response>, ModelError> {
        let listed = self.table.responses(task);
        let mut out: Vec<Response> = Vec::with_capacity(9);
        for r in listed.iter().chain(Response::ALL.iter()) {
            if !out.contains(r) {
                out.push(*r);
            }
        }
        Ok(out)
    }
}
