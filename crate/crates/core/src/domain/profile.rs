use std::collections::HashSet;

use super::{Response, Task};
use crate::error::{Error, Result};

/// A single answered trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub seq: u32,
    pub task: Task,
    pub response: Response,
}

impl Record {
    pub fn new(seq: u32, task: Task, response: Response) -> Self {
        Record {
            seq,
            task,
            response,
        }
    }
}

/// One reasoner's answers in presentation order.
///
/// Sequence indices are strictly increasing and no task occurs twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReasonerProfile {
    subject: String,
    records: Vec<Record>,
}

impl ReasonerProfile {
    pub fn new(subject: impl Into<String>, records: Vec<Record>) -> Result<Self> {
        let subject = subject.into();
        let invalid = |reason: String| Error::InvalidProfile {
            subject: subject.clone(),
            reason,
        };
        let mut seen = HashSet::new();
        for (i, rec) in records.iter().enumerate() {
            if i > 0 && rec.seq <= records[i - 1].seq {
                return Err(invalid(format!(
                    "sequence index {} does not increase after {}",
                    rec.seq,
                    records[i - 1].seq
                )));
            }
            if !seen.insert(rec.task) {
                return Err(invalid(format!("task {} answered twice", rec.task)));
            }
        }
        Ok(ReasonerProfile { subject, records })
    }

    /// Builds a profile from responses in the given order, numbering trials from 1.
    pub fn from_responses(
        subject: impl Into<String>,
        answers: impl IntoIterator<Item = (Task, Response)>,
    ) -> Result<Self> {
        let records = answers
            .into_iter()
            .zip(1..)
            .map(|((task, response), seq)| Record::new(seq, task, response))
            .collect();
        Self::new(subject, records)
    }

    pub fn subject(&self) -> &str {
        &self.subject
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True when every one of the 64 tasks is answered.
    pub fn is_complete(&self) -> bool {
        self.records.len() == super::NUM_TASKS
    }

    pub fn response_to(&self, task: Task) -> Option<Response> {
        self.records
            .iter()
            .find(|r| r.task == task)
            .map(|r| r.response)
    }

    /// Responses indexed by task index.
    pub fn response_table(&self) -> [Option<Response>; super::NUM_TASKS] {
        let mut out = [None; super::NUM_TASKS];
        for r in &self.records {
            out[r.task.index()] = Some(r.response);
        }
        out
    }

    /// Same records with responses replaced; tasks and order are kept.
    pub(crate) fn with_responses(&self, responses: impl IntoIterator<Item = Response>) -> Self {
        let records = self
            .records
            .iter()
            .zip(responses)
            .map(|(r, response)| Record { response, ..*r })
            .collect::<Vec<_>>();
        debug_assert_eq!(records.len(), self.records.len());
        ReasonerProfile {
            subject: self.subject.clone(),
            records,
        }
    }
}
