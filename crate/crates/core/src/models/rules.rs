//! Rule-based cognitive models.
//!
//! The mood heuristics (atmosphere, matching) always answer in the A-C
//! direction and never answer NVC.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::Model;
use crate::domain::{
    enumerate_tasks, premises_of, valid_conclusions, valid_conclusions_from, Direction, Mood,
    Premise, Response, Task, NUM_TASKS,
};
use crate::error::ModelError;

/// Negative if any premise is negative, particular if any premise is particular.
pub fn atmosphere_predict(task: Task) -> Response {
    let moods = [task.mood1, task.mood2];
    let negative = moods.iter().any(|m| m.is_negative());
    let particular = moods.iter().any(|m| m.is_particular());
    let mood = match (negative, particular) {
        (false, false) => Mood::A,
        (false, true) => Mood::I,
        (true, false) => Mood::E,
        (true, true) => Mood::O,
    };
    Response::conclusion(mood, Direction::Ac)
}

fn conservativeness(mood: Mood) -> u8 {
    match mood {
        Mood::A => 0,
        Mood::I | Mood::O => 1,
        Mood::E => 2,
    }
}

/// The most conservative premise mood (E > O = I > A); equal ranks keep the
/// first premise's mood.
pub fn matching_predict(task: Task) -> Response {
    let mood = if conservativeness(task.mood2) > conservativeness(task.mood1) {
        task.mood2
    } else {
        task.mood1
    };
    Response::conclusion(mood, Direction::Ac)
}

/// First entailed conclusion in canonical order, NVC when nothing follows.
pub fn fol_predict(task: Task) -> Response {
    valid_conclusions(task)
        .first()
        .copied()
        .unwrap_or(Response::Nvc)
}

fn converted_premises(task: Task) -> Vec<Premise> {
    let (p1, p2) = premises_of(task);
    let mut out = vec![p1, p2];
    for p in [p1, p2] {
        // E and I are symmetric already
        if matches!(p.mood, Mood::A | Mood::O) {
            out.push(p.converse());
        }
    }
    out
}

/// Illicit conversion: A and O premises are also read in reverse, then the
/// first conclusion entailed by the enlarged premise set is returned.
pub fn conversion_predict(task: Task) -> Response {
    valid_conclusions_from(&converted_premises(task))
        .first()
        .copied()
        .unwrap_or(Response::Nvc)
}

/// The four rule models used as generating strategies for synthetic reasoners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Atmosphere,
    Matching,
    FirstOrderLogic,
    Conversion,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Atmosphere,
        Strategy::Matching,
        Strategy::FirstOrderLogic,
        Strategy::Conversion,
    ];

    /// Three-letter code used in synthetic subject ids.
    pub fn code(self) -> &'static str {
        match self {
            Strategy::Atmosphere => "atm",
            Strategy::Matching => "mat",
            Strategy::FirstOrderLogic => "fol",
            Strategy::Conversion => "con",
        }
    }

    /// Model id in the registry.
    pub fn model_id(self) -> &'static str {
        match self {
            Strategy::Atmosphere => "atmosphere",
            Strategy::Matching => "matching",
            Strategy::FirstOrderLogic => "fol",
            Strategy::Conversion => "conversion",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    fn compute(self, task: Task) -> Response {
        match self {
            Strategy::Atmosphere => atmosphere_predict(task),
            Strategy::Matching => matching_predict(task),
            Strategy::FirstOrderLogic => fol_predict(task),
            Strategy::Conversion => conversion_predict(task),
        }
    }

    /// Response to every task, indexed by task index.
    pub fn responses(self) -> &'static [Response; NUM_TASKS] {
        static TABLES: OnceLock<[[Response; NUM_TASKS]; 4]> = OnceLock::new();
        &TABLES.get_or_init(|| {
            Strategy::ALL.map(|s| {
                let mut out = [Response::Nvc; NUM_TASKS];
                for t in enumerate_tasks() {
                    out[t.index()] = s.compute(*t);
                }
                out
            })
        })[self.index()]
    }

    pub fn respond(self, task: Task) -> Response {
        self.responses()[task.index()]
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.code() == s)
            .ok_or_else(|| format!("unknown strategy code '{s}'"))
    }
}

/// A rule model wrapped in the benchmark lifecycle. Stateless.
#[derive(Debug, Clone, Copy)]
pub struct RuleModel {
    strategy: Strategy,
}

impl RuleModel {
    pub fn new(strategy: Strategy) -> Self {
        RuleModel { strategy }
    }
}

impl Model for RuleModel {
    fn id(&self) -> &str {
        self.strategy.model_id()
    }

    fn predict(&mut self, task: Task) -> Result<Response, ModelError> {
        Ok(self.strategy.respond(task))
    }

    fn ranking(&mut self, task: Task) -> Result<Vec<Response>, ModelError> {
        if self.strategy != Strategy::FirstOrderLogic {
            return Ok(super::ranked_after(self.strategy.respond(task)));
        }
        // entailed conclusions first, then NVC, then the rest
        let mut out = valid_conclusions(task);
        out.push(Response::Nvc);
        let rest: Vec<Response> = Response::ALL
            .into_iter()
            .filter(|r| !out.contains(r))
            .collect();
        out.extend(rest);
        Ok(out)
    }
}
