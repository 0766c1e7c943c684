//! Leave-one-out evaluation under the predict-then-adapt protocol.
//!
//! Each subject in turn is held out. Every model is built fresh, pre-trained
//! on the remaining subjects and then queried trial by trial: the model
//! predicts, the prediction is recorded, and only then is the true response
//! revealed through `adapt`.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::domain::{ReasonerProfile, Response, Task};
use crate::error::{Error, Result};
use crate::models::{Model, ModelFactory, SubjectContext};
use crate::stream::stream_key;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub model: String,
    pub subject: String,
    pub seq: u32,
    pub task: Task,
    pub prediction: Response,
    pub truth: Response,
    pub hit: bool,
}

impl TrialOutcome {
    pub fn new(
        model: impl Into<String>,
        subject: impl Into<String>,
        seq: u32,
        task: Task,
        prediction: Response,
        truth: Response,
    ) -> Self {
        TrialOutcome {
            model: model.into(),
            subject: subject.into(),
            seq,
            task,
            prediction,
            truth,
            hit: prediction == truth,
        }
    }
}

/// Trial outcomes, sorted by (model, subject, seq).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BenchmarkResult {
    outcomes: Vec<TrialOutcome>,
}

impl BenchmarkResult {
    pub fn new(mut outcomes: Vec<TrialOutcome>) -> Self {
        outcomes.sort_by(|a, b| (&a.model, &a.subject, a.seq).cmp(&(&b.model, &b.subject, b.seq)));
        BenchmarkResult { outcomes }
    }

    pub fn outcomes(&self) -> &[TrialOutcome] {
        &self.outcomes
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Distinct model ids, sorted.
    pub fn model_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.outcomes.iter().map(|o| o.model.as_str()).collect();
        ids.dedup();
        ids
    }

    pub fn for_model<'a>(&'a self, model: &'a str) -> impl Iterator<Item = &'a TrialOutcome> + 'a {
        self.outcomes.iter().filter(move |o| o.model == model)
    }

    /// Overall accuracy of one model, `None` if it has no trials.
    pub fn accuracy(&self, model: &str) -> Option<f64> {
        let mut tally = Tally::default();
        self.for_model(model).for_each(|o| tally.add(o.hit));
        tally.accuracy()
    }
}

/// Hit counter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub hits: usize,
    pub trials: usize,
}

impl Tally {
    pub fn add(&mut self, hit: bool) {
        self.hits += usize::from(hit);
        self.trials += 1;
    }

    pub fn accuracy(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.hits as f64 / self.trials as f64)
    }
}

/// Accuracies of one model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSummary {
    pub model: String,
    pub overall: Tally,
    pub per_task: BTreeMap<Task, Tally>,
    pub per_subject: BTreeMap<String, Tally>,
}

impl ModelSummary {
    pub fn accuracy(&self) -> f64 {
        self.overall.accuracy().unwrap_or(0.0)
    }
}

/// Overall, per-task and per-subject accuracy for every model, sorted by id.
pub fn accuracy_summary(result: &BenchmarkResult) -> Result<Vec<ModelSummary>> {
    if result.is_empty() {
        return Err(Error::Config("no trial outcomes to summarise".into()));
    }
    let mut by_model: BTreeMap<&str, ModelSummary> = BTreeMap::new();
    for o in result.outcomes() {
        let s = by_model.entry(&o.model).or_insert_with(|| ModelSummary {
            model: o.model.clone(),
            overall: Tally::default(),
            per_task: BTreeMap::new(),
            per_subject: BTreeMap::new(),
        });
        s.overall.add(o.hit);
        s.per_task.entry(o.task).or_default().add(o.hit);
        s.per_subject
            .entry(o.subject.clone())
            .or_default()
            .add(o.hit);
    }
    Ok(by_model.into_values().collect())
}

/// Runs one pre-trained model over a subject's trials in stored order.
///
/// The model's random stream is keyed by `(seed, model id, subject id)`.
pub fn evaluate_subject(
    model: &mut dyn Model,
    profile: &ReasonerProfile,
    seed: u64,
) -> Result<Vec<TrialOutcome>> {
    let model_id = model.id().to_string();
    let ctx = SubjectContext {
        subject: profile.subject(),
        stream_key: stream_key(seed, &["model", &model_id, profile.subject()]),
    };
    model.start_subject(&ctx);
    let mut out = Vec::with_capacity(profile.len());
    for rec in profile.records() {
        let prediction = model
            .predict(rec.task)
            .map_err(|e| Error::ProtocolViolation {
                model: model_id.clone(),
                subject: profile.subject().to_string(),
                seq: rec.seq,
                task: rec.task.code(),
                reason: e.to_string(),
            })?;
        out.push(TrialOutcome::new(
            model_id.as_str(),
            profile.subject(),
            rec.seq,
            rec.task,
            prediction,
            rec.response,
        ));
        model.adapt(rec.task, rec.response);
    }
    Ok(out)
}

/// Leave-one-out cross-validation of every model on every subject.
///
/// Folds run in parallel; the result does not depend on scheduling or on the
/// order of subjects in `dataset`.
pub fn run_loo(
    dataset: &[ReasonerProfile],
    models: &[ModelFactory],
    seed: u64,
) -> Result<BenchmarkResult> {
    if dataset.len() < 2 {
        return Err(Error::Config(format!(
            "leave-one-out needs at least 2 subjects, got {}",
            dataset.len()
        )));
    }
    let mut ids = HashSet::new();
    for p in dataset {
        if !ids.insert(p.subject()) {
            return Err(Error::Config(format!(
                "duplicate subject id '{}'",
                p.subject()
            )));
        }
    }
    let folds: Vec<Vec<TrialOutcome>> = (0..dataset.len())
        .into_par_iter()
        .map(|held_out| {
            let training: Vec<ReasonerProfile> = dataset
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != held_out)
                .map(|(_, p)| p.clone())
                .collect();
            let mut fold = Vec::new();
            for factory in models {
                let mut model = factory.build();
                model.pre_train(&training)?;
                fold.extend(evaluate_subject(model.as_mut(), &dataset[held_out], seed)?);
            }
            Ok(fold)
        })
        .collect::<Result<_>>()?;
    Ok(BenchmarkResult::new(folds.into_iter().flatten().collect()))
}
