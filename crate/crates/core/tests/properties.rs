mod common;

use proptest::prelude::*;

use syllobench_core::domain::{
    enumerate_tasks, item_index, Figure, ReasonerProfile, Response, Task, NUM_ITEMS, NUM_TASKS,
};
use syllobench_core::harness::{evaluate_subject, run_loo, BenchmarkResult};
use syllobench_core::models::{Mfa, Model, ModelFactory, ModelKind};
use syllobench_core::recommenders::{
    ibcf_build, ibcf_fit_predict, ibcf_predict, ubcf_fit_predict, ubcf_predict, CfOptions, Ibcf,
    Ubcf, UserVector,
};

/// Profiles over a random subset of tasks with answers from a small alphabet,
/// so that agreements and ties are common.
fn population(max_subjects: usize) -> impl Strategy<Value = Vec<ReasonerProfile>> {
    prop::collection::vec(
        prop::collection::vec(prop::option::weighted(0.8, 0usize..3), NUM_TASKS),
        1..=max_subjects,
    )
    .prop_map(|rows| {
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                ReasonerProfile::from_responses(
                    format!("s{i}"),
                    enumerate_tasks()
                        .iter()
                        .zip(row)
                        .filter_map(|(t, a)| a.map(|a| (*t, Response::ALL[a * 3]))),
                )
                .unwrap()
            })
            .collect()
    })
}

fn history() -> impl Strategy<Value = Vec<(Task, Response)>> {
    prop::collection::vec(prop::option::weighted(0.4, 0usize..3), NUM_TASKS).prop_map(|row| {
        enumerate_tasks()
            .iter()
            .zip(row)
            .filter_map(|(t, a)| a.map(|a| (*t, Response::ALL[a * 3])))
            .collect()
    })
}

fn any_task() -> impl Strategy<Value = Task> {
    (0..NUM_TASKS).prop_map(|i| Task::from_index(i).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn item_matrix_is_symmetric_with_counting_diagonal(pop in population(6)) {
        let m = ibcf_build(&pop);
        prop_assert_eq!(m.subjects(), pop.len());
        for i in 0..NUM_ITEMS {
            for j in 0..NUM_ITEMS {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        for t in enumerate_tasks() {
            for r in Response::ALL {
                let answered = pop.iter().filter(|p| p.response_to(*t) == Some(r)).count();
                prop_assert_eq!(m.popularity(item_index(*t, r)) as usize, answered);
            }
        }
    }

    #[test]
    fn ubcf_ignores_training_duplication(pop in population(5), h in history(), task in any_task()) {
        let doubled: Vec<ReasonerProfile> = pop.iter().chain(pop.iter()).cloned().collect();
        prop_assert_eq!(ubcf_predict(task, &h, &pop), ubcf_predict(task, &h, &doubled));
        prop_assert_eq!(ubcf_fit_predict(task, &h, &pop), ubcf_fit_predict(task, &h, &doubled));
    }

    #[test]
    fn ibcf_without_history_is_mfa(pop in population(6)) {
        let m = ibcf_build(&pop);
        let mut mfa = Mfa::new();
        mfa.pre_train(&pop).unwrap();
        let empty = UserVector::new();
        for t in enumerate_tasks() {
            let expected = mfa.predict(*t).unwrap();
            prop_assert_eq!(ibcf_predict(*t, &empty, &m), expected);
            prop_assert_eq!(ibcf_fit_predict(*t, &empty, &m), expected);
        }
    }

    // With a raw co-occurrence matrix, the item score of a candidate response
    // sums, over training users who gave it, their number of matches with the
    // history - exactly the user-based vote.
    #[test]
    fn item_and_user_scores_coincide(pop in population(6), h in history(), task in any_task()) {
        let m = ibcf_build(&pop);
        let u = UserVector::from_history(&h);
        prop_assert_eq!(ibcf_predict(task, &u, &m), ubcf_predict(task, &h, &pop));
        prop_assert_eq!(ibcf_fit_predict(task, &u, &m), ubcf_fit_predict(task, &h, &pop));
    }

    // Outside the target figure every training user answers NVC and the
    // history never does, so those tasks add no weight and masking them
    // changes nothing.
    #[test]
    fn masking_is_neutral_when_other_figures_are_constant(
        pop in population(6),
        h in history(),
        figure in 1u8..=4,
    ) {
        let figure = Figure::new(figure).unwrap();
        let flatten = |p: &ReasonerProfile| {
            ReasonerProfile::from_responses(
                p.subject(),
                enumerate_tasks().iter().filter_map(|t| {
                    if t.figure == figure {
                        p.response_to(*t).map(|r| (*t, r))
                    } else {
                        Some((*t, Response::Nvc))
                    }
                }),
            )
            .unwrap()
        };
        let pop: Vec<ReasonerProfile> = pop.iter().map(flatten).collect();
        let m = ibcf_build(&pop);
        let u = UserVector::from_history(&h);
        for t in enumerate_tasks().iter().filter(|t| t.figure == figure) {
            prop_assert_eq!(ubcf_fit_predict(*t, &h, &pop), ubcf_predict(*t, &h, &pop));
            prop_assert_eq!(ibcf_fit_predict(*t, &u, &m), ibcf_predict(*t, &u, &m));
        }
    }

    // Predictions up to trial k depend only on trials before k: rewriting the
    // subject's later answers leaves them unchanged.
    #[test]
    fn later_answers_do_not_leak(
        pop in population(5),
        subject in population(1),
        replacement in prop::collection::vec(0usize..9, NUM_TASKS),
        cut in 0usize..NUM_TASKS,
    ) {
        let subject = &subject[0];
        prop_assume!(!subject.is_empty());
        let cut = cut % subject.len();
        let rewritten = ReasonerProfile::from_responses(
            subject.subject(),
            subject.records().iter().enumerate().map(|(i, r)| {
                (r.task, if i > cut { Response::ALL[replacement[i]] } else { r.response })
            }),
        )
        .unwrap();
        for name in ["mfa", "random", "ubcf", "ibcf", "ubcf-fit", "ibcf-fit", "conversion"] {
            let f = name.parse::<ModelKind>().unwrap().factory(CfOptions::default()).unwrap();
            let run = |p: &ReasonerProfile| {
                let mut m = f.build();
                m.pre_train(&pop).unwrap();
                evaluate_subject(m.as_mut(), p, 9).unwrap()
            };
            let (a, b) = (run(subject), run(&rewritten));
            for k in 0..=cut {
                prop_assert_eq!(a[k].prediction, b[k].prediction, "{} trial {}", name, k);
            }
        }
    }

    #[test]
    fn loo_ignores_subject_order(pop in population(6), seed in any::<u64>()) {
        prop_assume!(pop.len() >= 2);
        let models: Vec<ModelFactory> = ["random", "mfa", "ubcf-fit", "ibcf"]
            .iter()
            .map(|n| n.parse::<ModelKind>().unwrap().factory(CfOptions::default()).unwrap())
            .collect();
        let mut shuffled = pop.clone();
        shuffled.rotate_left(1);
        shuffled.reverse();
        prop_assert_eq!(run_loo(&pop, &models, seed).unwrap(), run_loo(&shuffled, &models, seed).unwrap());
    }

    // Summary figures can be recomputed from the raw outcomes.
    #[test]
    fn accuracies_recompute_from_outcomes(pop in population(6)) {
        prop_assume!(pop.len() >= 2 && pop.iter().all(|p| !p.is_empty()));
        let models: Vec<ModelFactory> = ["random", "ubcf"]
            .iter()
            .map(|n| n.parse::<ModelKind>().unwrap().factory(CfOptions::default()).unwrap())
            .collect();
        let result = run_loo(&pop, &models, 3).unwrap();
        let summary = syllobench_core::harness::accuracy_summary(&result).unwrap();
        for s in &summary {
            let rows: Vec<_> = result.for_model(&s.model).collect();
            let hits = rows.iter().filter(|o| o.prediction == o.truth).count();
            prop_assert!((s.accuracy() - hits as f64 / rows.len() as f64).abs() < 1e-12);
            let per_task_trials: usize = s.per_task.values().map(|t| t.trials).sum();
            prop_assert_eq!(per_task_trials, rows.len());
        }
    }
}

type UserReference = fn(Task, &[(Task, Response)], &[ReasonerProfile]) -> Response;

#[test]
fn incremental_recommenders_match_their_definitions() {
    let pop = syllobench_core::synthetic::inject_noise_population(
        &syllobench_core::synthetic::generate_population()[..40],
        &syllobench_core::synthetic::NoiseSpec::new(0.3, 5).unwrap(),
    );
    let (training, tests) = pop.split_at(36);
    for subject in tests {
        let mut models: Vec<(Box<dyn Model>, UserReference)> = vec![
            (Box::new(Ubcf::new(CfOptions::default())), ubcf_predict),
            (Box::new(Ubcf::fit(CfOptions::default())), ubcf_fit_predict),
        ];
        for (model, reference) in models.iter_mut() {
            model.pre_train(training).unwrap();
            let out = evaluate_subject(model.as_mut(), subject, 0).unwrap();
            let mut h = Vec::new();
            for (o, r) in out.iter().zip(subject.records()) {
                assert_eq!(o.prediction, reference(r.task, &h, training));
                h.push((r.task, r.response));
            }
        }
        let m = ibcf_build(training);
        for (mut model, reference) in [
            (
                Ibcf::new(CfOptions::default()),
                ibcf_predict as fn(Task, &UserVector, &_) -> Response,
            ),
            (Ibcf::fit(CfOptions::default()), ibcf_fit_predict),
        ] {
            model.pre_train(training).unwrap();
            let out = evaluate_subject(&mut model, subject, 0).unwrap();
            let mut u = UserVector::new();
            for (o, r) in out.iter().zip(subject.records()) {
                assert_eq!(o.prediction, reference(r.task, &u, &m));
                u.reveal(r.task, r.response);
            }
        }
    }
}

#[test]
fn twins_are_recovered_after_the_first_trial() {
    let answers: Vec<usize> = (0..NUM_TASKS).map(|i| (i * 5 + i / 7) % 9).collect();
    let a = common::full_profile("a", &answers);
    let b = common::full_profile("b", &answers);
    let f = ModelKind::Ubcf.factory(CfOptions::default()).unwrap();
    let result: BenchmarkResult = run_loo(&[a, b], &[f], 1).unwrap();
    // the lone training user is also the majority, so even the fallback hits
    assert!(result.outcomes().iter().all(|o| o.hit));
    assert_eq!(result.outcomes().len(), 2 * NUM_TASKS);
}
