use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Model, SubjectContext};
use crate::domain::{ReasonerProfile, Response, Task, NUM_RESPONSES, NUM_TASKS};
use crate::error::{Error, ModelError, Result};

/// Index of the largest count; the earliest index wins ties.
pub(crate) fn first_argmax<T: PartialOrd + Copy>(scores: &[T]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate().skip(1) {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

/// Per-task response counts over a set of profiles.
pub(crate) fn response_counts(profiles: &[ReasonerProfile]) -> Vec<[u32; NUM_RESPONSES]> {
    let mut counts = vec![[0u32; NUM_RESPONSES]; NUM_TASKS];
    for p in profiles {
        for r in p.records() {
            counts[r.task.index()][r.response.index()] += 1;
        }
    }
    counts
}

/// Most frequent answer in the training data, per task. Ties go to the
/// earlier response in canonical order; a task no training subject answered
/// gets the first canonical response.
#[derive(Debug, Clone, Default)]
pub struct Mfa {
    counts: Vec<[u32; NUM_RESPONSES]>,
}

impl Mfa {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counts(&self, task: Task) -> Option<&[u32; NUM_RESPONSES]> {
        self.counts.get(task.index())
    }
}

impl Model for Mfa {
    fn id(&self) -> &str {
        "mfa"
    }

    fn pre_train(&mut self, training: &[ReasonerProfile]) -> Result<()> {
        if training.is_empty() {
            return Err(Error::Config(
                "mfa requires at least one training profile".into(),
            ));
        }
        self.counts = response_counts(training);
        Ok(())
    }

    fn predict(&mut self, task: Task) -> Result<Response, ModelError> {
        let counts = self
            .counts(task)
            .ok_or_else(|| ModelError("mfa used before pre_train".into()))?;
        Ok(Response::ALL[first_argmax(counts)])
    }

    fn ranking(&mut self, task: Task) -> Result<Vec<Response>, ModelError> {
        let counts = *self
            .counts(task)
            .ok_or_else(|| ModelError("mfa used before pre_train".into()))?;
        let mut out = Response::ALL.to_vec();
        // stable sort keeps canonical order among equal counts
        out.sort_by_key(|r| std::cmp::Reverse(counts[r.index()]));
        Ok(out)
    }
}

/// Uniform guessing over the nine responses.
#[derive(Debug, Clone)]
pub struct RandomModel {
    rng: ChaCha8Rng,
}

impl RandomModel {
    pub fn new() -> Self {
        RandomModel {
            rng: ChaCha8Rng::from_seed([0; 32]),
        }
    }
}

impl Default for RandomModel {
    fn default() -> Self {
        Self::new()
    }
}

impl Model for RandomModel {
    fn id(&self) -> &str {
        "random"
    }

    fn start_subject(&mut self, ctx: &SubjectContext<'_>) {
        self.rng = ChaCha8Rng::from_seed(ctx.stream_key);
    }

    fn predict(&mut self, _task: Task) -> Result<Response, ModelError> {
        Ok(Response::ALL[self.rng.gen_range(0..NUM_RESPONSES)])
    }
}
