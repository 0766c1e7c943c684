//! Item-based collaborative filtering over (task, response) items.
//!
//! `M[i][j]` counts the training subjects that gave both item `i` and item
//! `j`. The test subject's revealed answers form a binary vector `u`, and the
//! prediction for a task is the best-scoring of its nine items in `M × u`.
//! If all nine scores are zero the diagonal (item popularity) is used instead.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{pick, rank, CfOptions, TieBreak};
use crate::domain::{
    item_index, Figure, ReasonerProfile, Response, Task, NUM_ITEMS, NUM_RESPONSES, NUM_TASKS,
};
use crate::error::{Error, ModelError, Result};
use crate::models::{Model, SubjectContext};

/// Symmetric item co-occurrence counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemMatrix {
    counts: Vec<u32>,
    subjects: usize,
}

impl ItemMatrix {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.counts[i * NUM_ITEMS + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.counts[i * NUM_ITEMS..(i + 1) * NUM_ITEMS]
    }

    /// Number of training subjects that gave item `i`.
    pub fn popularity(&self, i: usize) -> u32 {
        self.get(i, i)
    }

    pub fn subjects(&self) -> usize {
        self.subjects
    }

    /// `M × u`.
    pub fn multiply(&self, u: &UserVector) -> Vec<u64> {
        let mut out = vec![0u64; NUM_ITEMS];
        for h in u.items() {
            for (o, m) in out.iter_mut().zip(self.row(h)) {
                *o += u64::from(*m);
            }
        }
        out
    }

    /// Non-zero entries as `(row, column, count)` in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(k, c)| (k / NUM_ITEMS, k % NUM_ITEMS, *c))
    }

    /// Writes the non-zero entries as CSV `item_i,item_j,count`, items coded
    /// `TASK:RESPONSE`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "item_i,item_j,count")?;
        for (i, j, c) in self.nonzero() {
            writeln!(out, "{},{},{}", item_code(i), item_code(j), c)?;
        }
        Ok(())
    }
}

fn item_code(item: usize) -> String {
    let task = Task::from_index(item / NUM_RESPONSES).expect("item in range");
    format!("{}:{}", task, Response::ALL[item % NUM_RESPONSES])
}

/// Builds the co-occurrence matrix of the training profiles.
pub fn ibcf_build(training: &[ReasonerProfile]) -> ItemMatrix {
    let mut counts = vec![0u32; NUM_ITEMS * NUM_ITEMS];
    let mut items = Vec::with_capacity(NUM_TASKS);
    for p in training {
        items.clear();
        items.extend(p.records().iter().map(|r| item_index(r.task, r.response)));
        for &i in &items {
            let row = &mut counts[i * NUM_ITEMS..(i + 1) * NUM_ITEMS];
            for &j in &items {
                row[j] += 1;
            }
        }
    }
    ItemMatrix {
        counts,
        subjects: training.len(),
    }
}

/// Binary vector of revealed (task, response) items, at most one per task.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UserVector {
    by_task: Vec<Option<Response>>,
}

impl UserVector {
    pub fn new() -> Self {
        UserVector {
            by_task: vec![None; NUM_TASKS],
        }
    }

    /// Marks an item. Returns `false` and leaves the vector unchanged if the
    /// task was already revealed.
    pub fn reveal(&mut self, task: Task, response: Response) -> bool {
        let slot = &mut self.by_task[task.index()];
        if slot.is_some() {
            return false;
        }
        *slot = Some(response);
        true
    }

    pub fn from_history(history: &[(Task, Response)]) -> Self {
        let mut u = Self::new();
        for (t, r) in history {
            u.reveal(*t, *r);
        }
        u
    }

    /// Indices of the set items, in task order.
    pub fn items(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_task
            .iter()
            .enumerate()
            .filter_map(|(t, r)| r.map(|r| t * NUM_RESPONSES + r.index()))
    }

    fn items_in(&self, figure: Figure) -> impl Iterator<Item = usize> + '_ {
        self.items()
            .filter(move |i| (i / NUM_RESPONSES) % 4 == figure.index())
    }

    pub fn is_empty(&self) -> bool {
        self.by_task.iter().all(Option::is_none)
    }
}

fn candidate_scores(
    task: Task,
    matrix: &ItemMatrix,
    history: impl Iterator<Item = usize>,
) -> [u64; NUM_RESPONSES] {
    let base = task.index() * NUM_RESPONSES;
    let mut scores = [0u64; NUM_RESPONSES];
    for h in history {
        for (k, s) in scores.iter_mut().enumerate() {
            *s += u64::from(matrix.get(base + k, h));
        }
    }
    with_popularity_fallback(task, matrix, scores)
}

fn with_popularity_fallback(
    task: Task,
    matrix: &ItemMatrix,
    mut scores: [u64; NUM_RESPONSES],
) -> [u64; NUM_RESPONSES] {
    if scores.iter().all(|s| *s == 0) {
        let base = task.index() * NUM_RESPONSES;
        for (k, s) in scores.iter_mut().enumerate() {
            *s = u64::from(matrix.popularity(base + k));
        }
    }
    scores
}

fn choose(scores: &[u64; NUM_RESPONSES]) -> Response {
    let mut unused = ChaCha8Rng::from_seed([0; 32]);
    pick(scores, TieBreak::Canonical, &mut unused)
}

/// Best of the task's nine items in `M × u`, canonical tie-break.
pub fn ibcf_predict(task: Task, u: &UserVector, matrix: &ItemMatrix) -> Response {
    choose(&candidate_scores(task, matrix, u.items()))
}

/// As [`ibcf_predict`] with `u` restricted to items of the task's figure.
pub fn ibcf_fit_predict(task: Task, u: &UserVector, matrix: &ItemMatrix) -> Response {
    choose(&candidate_scores(task, matrix, u.items_in(task.figure)))
}

/// Incremental IBCF model. Keeps `M × u` split by the figure of the revealed
/// items, so both variants cost nine lookups per prediction.
#[derive(Debug, Clone)]
pub struct Ibcf {
    id: String,
    figure_masked: bool,
    options: CfOptions,
    matrix: Option<ItemMatrix>,
    scores_by_figure: Vec<[u64; NUM_ITEMS]>,
    rng: ChaCha8Rng,
}

impl Ibcf {
    pub fn new(options: CfOptions) -> Self {
        Self::build("ibcf", false, options)
    }

    /// The figure-structured variant.
    pub fn fit(options: CfOptions) -> Self {
        Self::build("ibcf-fit", true, options)
    }

    fn build(id: &str, figure_masked: bool, options: CfOptions) -> Self {
        Ibcf {
            id: id.to_string(),
            figure_masked,
            options,
            matrix: None,
            scores_by_figure: vec![[0; NUM_ITEMS]; 4],
            rng: ChaCha8Rng::from_seed([0; 32]),
        }
    }

    pub fn matrix(&self) -> Option<&ItemMatrix> {
        self.matrix.as_ref()
    }

    fn scores(&self, task: Task) -> Result<[u64; NUM_RESPONSES], ModelError> {
        let matrix = self
            .matrix
            .as_ref()
            .ok_or_else(|| ModelError(format!("{} used before pre_train", self.id)))?;
        let base = task.index() * NUM_RESPONSES;
        let mut scores = [0u64; NUM_RESPONSES];
        for (f, by_item) in self.scores_by_figure.iter().enumerate() {
            if self.figure_masked && f != task.figure.index() {
                continue;
            }
            for (k, s) in scores.iter_mut().enumerate() {
                *s += by_item[base + k];
            }
        }
        Ok(with_popularity_fallback(task, matrix, scores))
    }
}

impl Model for Ibcf {
    fn id(&self) -> &str {
        &self.id
    }

    fn pre_train(&mut self, training: &[ReasonerProfile]) -> Result<()> {
        if training.is_empty() {
            return Err(Error::Config(format!(
                "{} requires training users",
                self.id
            )));
        }
        self.matrix = Some(ibcf_build(training));
        Ok(())
    }

    fn start_subject(&mut self, ctx: &SubjectContext<'_>) {
        self.scores_by_figure.iter_mut().for_each(|s| s.fill(0));
        self.rng = ChaCha8Rng::from_seed(ctx.stream_key);
    }

    fn predict(&mut self, task: Task) -> Result<Response, ModelError> {
        let scores = self.scores(task)?;
        Ok(pick(&scores, self.options.tie_break, &mut self.rng))
    }

    fn adapt(&mut self, task: Task, truth: Response) {
        let Some(matrix) = self.matrix.as_ref() else {
            return;
        };
        let h = item_index(task, truth);
        let acc = &mut self.scores_by_figure[task.figure.index()];
        // M is symmetric, so column h equals row h
        for (s, m) in acc.iter_mut().zip(matrix.row(h)) {
            *s += u64::from(*m);
        }
    }

    fn is_adaptive(&self) -> bool {
        true
    }

    fn ranking(&mut self, task: Task) -> Result<Vec<Response>, ModelError> {
        let scores = self.scores(task)?;
        let top = pick(&scores, self.options.tie_break, &mut self.rng);
        let mut out = rank(&scores);
        out.retain(|r| *r != top);
        out.insert(0, top);
        Ok(out)
    }
}
