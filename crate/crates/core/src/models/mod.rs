//! The model zoo and the predict/adapt lifecycle shared by every model.

mod baselines;
mod registry;
mod rules;
mod table;

pub use baselines::{Mfa, RandomModel};
pub use registry::{ModelKind, MODEL_NAMES};
pub use rules::{
    atmosphere_predict, conversion_predict, fol_predict, matching_predict, RuleModel, Strategy,
};
pub use table::{PredictionTable, TableModel};

use std::fmt;
use std::sync::Arc;

use crate::domain::{ReasonerProfile, Response, Task};
use crate::error::{ModelError, Result};

/// Per-subject information handed to a model before its first prediction.
#[derive(Debug, Clone)]
pub struct SubjectContext<'a> {
    pub subject: &'a str,
    /// Key for the model's private random stream on this subject.
    pub stream_key: [u8; 32],
}

/// A predictive model of individual responses.
///
/// The harness drives every model through the same lifecycle: `pre_train` once
/// per fold, then for each test subject `start_subject` followed by
/// alternating `predict` and `adapt` calls. `adapt` for a trial is only ever
/// called after that trial's prediction has been returned.
pub trait Model: Send {
    fn id(&self) -> &str;

    fn pre_train(&mut self, _training: &[ReasonerProfile]) -> Result<()> {
        Ok(())
    }

    /// Resets all per-subject state.
    fn start_subject(&mut self, _ctx: &SubjectContext<'_>) {}

    fn predict(&mut self, task: Task) -> Result<Response, ModelError>;

    fn adapt(&mut self, _task: Task, _truth: Response) {}

    /// Whether `adapt` can change later predictions.
    fn is_adaptive(&self) -> bool {
        false
    }

    /// All nine responses, most preferred first. The head equals `predict`.
    fn ranking(&mut self, task: Task) -> Result<Vec<Response>, ModelError> {
        let top = self.predict(task)?;
        Ok(ranked_after(top))
    }
}

/// `top` followed by the remaining responses in canonical order.
pub fn ranked_after(top: Response) -> Vec<Response> {
    std::iter::once(top)
        .chain(Response::ALL.into_iter().filter(|r| *r != top))
        .collect()
}

/// Builds fresh model instances, one per fold.
#[derive(Clone)]
pub struct ModelFactory {
    id: String,
    build: Arc<dyn Fn() -> Box<dyn Model> + Send + Sync>,
}

impl ModelFactory {
    pub fn new<F>(id: impl Into<String>, build: F) -> Self
    where
        F: Fn() -> Box<dyn Model> + Send + Sync + 'static,
    {
        ModelFactory {
            id: id.into(),
            build: Arc::new(build),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn build(&self) -> Box<dyn Model> {
        (self.build)()
    }
}

impl fmt::Debug for ModelFactory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelFactory")
            .field("id", &self.id)
            .finish()
    }
}
