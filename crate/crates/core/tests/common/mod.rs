//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use syllobench_core::domain::{enumerate_tasks, ReasonerProfile, Response, Task};

/// Conclusions (in canonical response order, NVC excluded) that hold in every
/// model over a six-element universe. Sets are bitmasks; universals carry no
/// existential import.
///
/// Written from the task code alone so it shares nothing with the library's
/// region-based checker.
pub fn brute_force_valid(code: &str) -> Vec<&'static str> {
    let chars: Vec<char> = code.chars().collect();
    let (m1, m2, fig) = (chars[0], chars[1], chars[2]);
    // (subject, predicate) of each premise; 0 = A, 1 = B, 2 = C
    let (p1, p2) = match fig {
        '1' => ((0, 1), (1, 2)),
        '2' => ((1, 0), (2, 1)),
        '3' => ((1, 0), (1, 2)),
        '4' => ((0, 1), (2, 1)),
        _ => panic!("bad figure in {code}"),
    };
    let holds = |mood: char, x: u8, y: u8| match mood {
        'A' => x & !y == 0,
        'I' => x & y != 0,
        'E' => x & y == 0,
        'O' => x & !y != 0,
        _ => unreachable!(),
    };
    // candidate conclusions in canonical order
    let candidates: [(&str, char, usize, usize); 8] = [
        ("Aac", 'A', 0, 2),
        ("Aca", 'A', 2, 0),
        ("Iac", 'I', 0, 2),
        ("Ica", 'I', 2, 0),
        ("Eac", 'E', 0, 2),
        ("Eca", 'E', 2, 0),
        ("Oac", 'O', 0, 2),
        ("Oca", 'O', 2, 0),
    ];
    let mut refuted = [false; 8];
    for a in 0u8..64 {
        for b in 0u8..64 {
            for c in 0u8..64 {
                let sets = [a, b, c];
                if !holds(m1, sets[p1.0], sets[p1.1]) || !holds(m2, sets[p2.0], sets[p2.1]) {
                    continue;
                }
                for (k, (_, mood, x, y)) in candidates.iter().enumerate() {
                    if !holds(*mood, sets[*x], sets[*y]) {
                        refuted[k] = true;
                    }
                }
            }
        }
    }
    candidates
        .iter()
        .zip(refuted)
        .filter(|(_, r)| !r)
        .map(|(c, _)| c.0)
        .collect()
}

/// A complete profile answering task `i` with `answers[i]`.
pub fn full_profile(id: &str, answers: &[usize]) -> ReasonerProfile {
    ReasonerProfile::from_responses(
        id,
        enumerate_tasks()
            .iter()
            .zip(answers)
            .map(|(t, a)| (*t, Response::ALL[*a])),
    )
    .unwrap()
}

pub fn tasks_in_order() -> Vec<Task> {
    enumerate_tasks().to_vec()
}
