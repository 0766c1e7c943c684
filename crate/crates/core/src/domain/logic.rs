//! Validity of quantified conclusions under classical first-order semantics,
//! without existential import.
//!
//! A model over the monadic predicates A, B, C is characterised up to the
//! truth of every statement by which of the eight Venn regions are inhabited.
//! A conclusion follows from a set of premises iff it holds in every
//! inhabitation pattern that satisfies the premises.

use std::sync::OnceLock;

use super::{enumerate_tasks, premises_of, Mood, Premise, Response, Task, NUM_TASKS};

/// Truth of `statement` in the model whose inhabited regions are `occupied`.
/// Region `r` collects the elements whose membership bits equal `r`.
fn holds(statement: Premise, occupied: u8) -> bool {
    let s = statement.subject.bit();
    let p = statement.predicate.bit();
    let exists = |want_p: bool| {
        (0u8..8).any(|r| occupied & (1 << r) != 0 && r & s != 0 && (r & p != 0) == want_p)
    };
    match statement.mood {
        Mood::A => !exists(false),
        Mood::I => exists(true),
        Mood::E => !exists(true),
        Mood::O => exists(false),
    }
}

/// Whether `conclusion` is true in every model of `premises`.
pub fn entails(premises: &[Premise], conclusion: Premise) -> bool {
    (0u16..256)
        .map(|occ| occ as u8)
        .filter(|&occ| premises.iter().all(|&p| holds(p, occ)))
        .all(|occ| holds(conclusion, occ))
}

/// Quantified responses entailed by an arbitrary premise set, canonical order.
pub fn valid_conclusions_from(premises: &[Premise]) -> Vec<Response> {
    Response::ALL
        .iter()
        .copied()
        .filter(|r| r.statement().is_some_and(|c| entails(premises, c)))
        .collect()
}

fn table() -> &'static [u16; NUM_TASKS] {
    static TABLE: OnceLock<[u16; NUM_TASKS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0u16; NUM_TASKS];
        for task in enumerate_tasks() {
            let (p1, p2) = premises_of(*task);
            for r in valid_conclusions_from(&[p1, p2]) {
                out[task.index()] |= 1 << r.index();
            }
        }
        out
    })
}

/// Quantified conclusions that follow from the task's premises, in canonical
/// response order. Never contains NVC; an empty result means NVC is correct.
pub fn valid_conclusions(task: Task) -> Vec<Response> {
    let mask = table()[task.index()];
    Response::ALL
        .iter()
        .copied()
        .filter(|r| mask & (1 << r.index()) != 0)
        .collect()
}
