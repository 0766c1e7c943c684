//! User-based collaborative filtering.
//!
//! Every training user votes for the response they gave to the target task,
//! weighted by the number of revealed responses they share with the test
//! subject. When no user carries any weight the vote falls back to an
//! unweighted majority, which makes the cold-start prediction equal to MFA.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{pick, rank, CfOptions};
use crate::domain::{Figure, ReasonerProfile, Response, Task, NUM_RESPONSES, NUM_TASKS};
use crate::error::{Error, ModelError, Result};
use crate::models::{Model, SubjectContext};

/// Number of revealed trials on which `candidate` gave the same response.
pub fn ubcf_similarity(history: &[(Task, Response)], candidate: &ReasonerProfile) -> u32 {
    similarity_where(history, candidate, |_| true)
}

fn similarity_where(
    history: &[(Task, Response)],
    candidate: &ReasonerProfile,
    keep: impl Fn(Task) -> bool,
) -> u32 {
    history
        .iter()
        .filter(|(t, r)| keep(*t) && candidate.response_to(*t) == Some(*r))
        .count() as u32
}

fn vote(
    task: Task,
    training: &[ReasonerProfile],
    weight: impl Fn(&ReasonerProfile) -> u32,
) -> Response {
    let mut scores = [0u64; NUM_RESPONSES];
    let mut counts = [0u64; NUM_RESPONSES];
    for candidate in training {
        if let Some(r) = candidate.response_to(task) {
            scores[r.index()] += u64::from(weight(candidate));
            counts[r.index()] += 1;
        }
    }
    let scores = if scores.iter().all(|s| *s == 0) {
        counts
    } else {
        scores
    };
    let mut unused = ChaCha8Rng::from_seed([0; 32]);
    pick(&scores, super::TieBreak::Canonical, &mut unused)
}

/// Similarity-weighted vote over all training users, canonical tie-break.
pub fn ubcf_predict(
    task: Task,
    history: &[(Task, Response)],
    training: &[ReasonerProfile],
) -> Response {
    vote(task, training, |c| ubcf_similarity(history, c))
}

/// As [`ubcf_predict`], but similarity only counts matches on tasks of the
/// target task's figure.
pub fn ubcf_fit_predict(
    task: Task,
    history: &[(Task, Response)],
    training: &[ReasonerProfile],
) -> Response {
    vote(task, training, |c| {
        similarity_where(history, c, |t| t.figure == task.figure)
    })
}

#[derive(Debug, Clone)]
struct Candidate {
    subject: String,
    responses: [Option<Response>; NUM_TASKS],
}

/// Incremental UBCF model. Similarities are kept per candidate and figure and
/// updated on every `adapt`.
#[derive(Debug, Clone)]
pub struct Ubcf {
    id: String,
    figure_masked: bool,
    options: CfOptions,
    candidates: Vec<Candidate>,
    matches: Vec<[u32; 4]>,
    rng: ChaCha8Rng,
}

impl Ubcf {
    pub fn new(options: CfOptions) -> Self {
        Self::build("ubcf", false, options)
    }

    /// The figure-structured variant.
    pub fn fit(options: CfOptions) -> Self {
        Self::build("ubcf-fit", true, options)
    }

    fn build(id: &str, figure_masked: bool, options: CfOptions) -> Self {
        Ubcf {
            id: id.to_string(),
            figure_masked,
            options,
            candidates: Vec::new(),
            matches: Vec::new(),
            rng: ChaCha8Rng::from_seed([0; 32]),
        }
    }

    fn weight(&self, candidate: usize, figure: Figure) -> u32 {
        let m = &self.matches[candidate];
        if self.figure_masked {
            m[figure.index()]
        } else {
            m.iter().sum()
        }
    }

    fn scores(&self, task: Task) -> Result<[u64; NUM_RESPONSES], ModelError> {
        if self.candidates.is_empty() {
            return Err(ModelError(format!("{} has no training users", self.id)));
        }
        let t = task.index();
        let weights: Vec<u32> = (0..self.candidates.len())
            .map(|c| self.weight(c, task.figure))
            .collect();
        let mut voters: Vec<usize> = (0..self.candidates.len()).collect();
        if let Some(k) = self.options.top_k {
            voters.sort_by(|&a, &b| {
                weights[b]
                    .cmp(&weights[a])
                    .then_with(|| self.candidates[a].subject.cmp(&self.candidates[b].subject))
            });
            voters.truncate(k);
        }
        let mut scores = [0u64; NUM_RESPONSES];
        for &c in &voters {
            if let Some(r) = self.candidates[c].responses[t] {
                scores[r.index()] += u64::from(weights[c]);
            }
        }
        if scores.iter().all(|s| *s == 0) {
            for cand in &self.candidates {
                if let Some(r) = cand.responses[t] {
                    scores[r.index()] += 1;
                }
            }
        }
        Ok(scores)
    }
}

impl Model for Ubcf {
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
        self.candidates = training
            .iter()
            .map(|p| Candidate {
                subject: p.subject().to_string(),
                responses: p.response_table(),
            })
            .collect();
        self.matches = vec![[0; 4]; self.candidates.len()];
        Ok(())
    }

    fn start_subject(&mut self, ctx: &SubjectContext<'_>) {
        self.matches.iter_mut().for_each(|m| *m = [0; 4]);
        self.rng = ChaCha8Rng::from_seed(ctx.stream_key);
    }

    fn predict(&mut self, task: Task) -> Result<Response, ModelError> {
        let scores = self.scores(task)?;
        Ok(pick(&scores, self.options.tie_break, &mut self.rng))
    }

    fn adapt(&mut self, task: Task, truth: Response) {
        let (t, f) = (task.index(), task.figure.index());
        for (cand, m) in self.candidates.iter().zip(self.matches.iter_mut()) {
            if cand.responses[t] == Some(truth) {
                m[f] += 1;
            }
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{enumerate_tasks, parse_response, parse_task};

    fn t(code: &str) -> Task {
        parse_task(code).unwrap()
    }
    fn r(code: &str) -> Response {
        parse_response(code).unwrap()
    }
    fn profile(id: &str, answers: &[(&str, &str)]) -> ReasonerProfile {
        ReasonerProfile::from_responses(id, answers.iter().map(|(a, b)| (t(a), r(b)))).unwrap()
    }

    #[test]
    fn similarity_counts_matching_responses() {
        let cand = profile(
            "c",
            &[
                ("AA1", "Aac"),
                ("AA2", "Aac"),
                ("AA3", "NVC"),
                ("AA4", "Iac"),
                ("AI1", "Iac"),
            ],
        );
        assert_eq!(ubcf_similarity(&[], &cand), 0);
        let history = [
            (t("AA1"), r("Aac")),
            (t("AA2"), r("Aac")),
            (t("AA3"), r("Aac")),
            (t("AA4"), r("Iac")),
            (t("AI1"), r("NVC")),
        ];
        assert_eq!(ubcf_similarity(&history, &cand), 3);
    }

    #[test]
    fn similarity_upper_bound_is_history_length() {
        let answers: Vec<(Task, Response)> = enumerate_tasks()
            .iter()
            .map(|t| (*t, Response::Nvc))
            .collect();
        let cand = ReasonerProfile::from_responses("c", answers.clone()).unwrap();
        assert_eq!(ubcf_similarity(&answers[..63], &cand), 63);
    }

    #[test]
    fn weighted_vote() {
        // similarities 3 and 1
        let a = profile(
            "a",
            &[
                ("AA1", "Aac"),
                ("AA2", "Aac"),
                ("AA3", "Aac"),
                ("EE1", "Eac"),
            ],
        );
        let b = profile(
            "b",
            &[
                ("AA1", "Aac"),
                ("AA2", "Iac"),
                ("AA3", "Iac"),
                ("EE1", "NVC"),
            ],
        );
        let history = [
            (t("AA1"), r("Aac")),
            (t("AA2"), r("Aac")),
            (t("AA3"), r("Aac")),
        ];
        assert_eq!(
            ubcf_predict(t("EE1"), &history, &[b.clone(), a.clone()]),
            r("Eac")
        );
    }

    #[test]
    fn cold_start_falls_back_to_majority() {
        let a = profile("a", &[("AA1", "NVC")]);
        let b = profile("b", &[("AA1", "Iac")]);
        let c = profile("c", &[("AA1", "Iac")]);
        assert_eq!(ubcf_predict(t("AA1"), &[], &[a, b, c]), r("Iac"));
    }

    #[test]
    fn unanimity_wins_regardless_of_weights() {
        let a = profile("a", &[("AA1", "Oca"), ("AA2", "Aac")]);
        let b = profile("b", &[("AA1", "Oca"), ("AA2", "NVC")]);
        for h in [
            vec![],
            vec![(t("AA2"), r("Aac"))],
            vec![(t("AA2"), r("Eac"))],
        ] {
            assert_eq!(
                ubcf_predict(t("AA1"), &h, &[a.clone(), b.clone()]),
                r("Oca")
            );
        }
    }

    #[test]
    fn fit_masks_other_figures() {
        // candidate x agrees on many figure-1 trials but not on figure 2
        let x = profile(
            "x",
            &[
                ("AA1", "Aac"),
                ("AI1", "Iac"),
                ("AE1", "Eac"),
                ("AA2", "Aca"),
                ("IA2", "NVC"),
            ],
        );
        let y = profile(
            "y",
            &[
                ("AA1", "NVC"),
                ("AI1", "NVC"),
                ("AE1", "NVC"),
                ("AA2", "Aac"),
                ("IA2", "Iac"),
            ],
        );
        let history = [
            (t("AA1"), r("Aac")),
            (t("AI1"), r("Iac")),
            (t("AE1"), r("Eac")),
            (t("AA2"), r("Aac")),
        ];
        assert_eq!(
            ubcf_predict(t("IA2"), &history, &[x.clone(), y.clone()]),
            r("NVC")
        );
        assert_eq!(ubcf_fit_predict(t("IA2"), &history, &[x, y]), r("Iac"));
    }

    #[test]
    fn incremental_model_matches_definition() {
        let training: Vec<ReasonerProfile> = (0..6)
            .map(|s| {
                let answers = enumerate_tasks()
                    .iter()
                    .enumerate()
                    .map(|(i, task)| (*task, Response::ALL[(i * (s + 2) + s) % 9 % 4]));
                ReasonerProfile::from_responses(format!("s{s}"), answers).unwrap()
            })
            .collect();
        let truth: Vec<(Task, Response)> = enumerate_tasks()
            .iter()
            .enumerate()
            .map(|(i, t)| (*t, Response::ALL[(i * 5) % 9 % 3]))
            .collect();
        for fit in [false, true] {
            let mut model = if fit {
                Ubcf::fit(CfOptions::default())
            } else {
                Ubcf::new(CfOptions::default())
            };
            model.pre_train(&training).unwrap();
            model.start_subject(&SubjectContext {
                subject: "x",
                stream_key: [0; 32],
            });
            for (i, (task, resp)) in truth.iter().enumerate() {
                let direct = if fit {
                    ubcf_fit_predict(*task, &truth[..i], &training)
                } else {
                    ubcf_predict(*task, &truth[..i], &training)
                };
                assert_eq!(model.predict(*task).unwrap(), direct, "trial {i}");
                model.adapt(*task, *resp);
            }
        }
    }

    #[test]
    fn top_k_restricts_voters() {
        let a = profile("a", &[("AA1", "Aac"), ("AA2", "Aac")]);
        let b = profile("b", &[("AA1", "Aac"), ("AA2", "NVC")]);
        let c = profile("c", &[("AA1", "Iac"), ("AA2", "NVC")]);
        let mut model = Ubcf::new(CfOptions {
            top_k: Some(1),
            ..Default::default()
        });
        model.pre_train(&[b, c, a]).unwrap();
        model.start_subject(&SubjectContext {
            subject: "x",
            stream_key: [0; 32],
        });
        model.adapt(t("AA1"), r("Aac"));
        // a and b tie on similarity; a wins by subject id and answers Aac
        assert_eq!(model.predict(t("AA2")).unwrap(), r("Aac"));
        let mut all = Ubcf::new(CfOptions::default());
        all.pre_train(&[
            profile("a", &[("AA1", "Aac"), ("AA2", "Aac")]),
            profile("b", &[("AA1", "Aac"), ("AA2", "NVC")]),
            profile("c", &[("AA1", "Iac"), ("AA2", "NVC")]),
        ])
        .unwrap();
        all.start_subject(&SubjectContext {
            subject: "x",
            stream_key: [0; 32],
        });
        all.adapt(t("AA1"), r("Aac"));
        // a and b both weigh 1: Aac 1 vs NVC 1, canonical order picks Aac
        assert_eq!(all.predict(t("AA2")).unwrap(), r("Aac"));
    }

    #[test]
    fn start_subject_resets_state() {
        let a = profile("a", &[("AA1", "Aac"), ("AA2", "Aac")]);
        let b = profile("b", &[("AA1", "Iac"), ("AA2", "NVC")]);
        let c = profile("c", &[("AA1", "Iac"), ("AA2", "NVC")]);
        let mut m = Ubcf::new(CfOptions::default());
        m.pre_train(&[a, b, c]).unwrap();
        let ctx = SubjectContext {
            subject: "x",
            stream_key: [0; 32],
        };
        m.start_subject(&ctx);
        m.adapt(t("AA1"), r("Aac"));
        assert_eq!(m.predict(t("AA2")).unwrap(), r("Aac"));
        m.start_subject(&ctx);
        assert_eq!(m.predict(t("AA2")).unwrap(), r("NVC"));
    }
}
