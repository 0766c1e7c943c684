//! The syllogistic task space.
//!
//! A task pairs two quantified premises over the terms A, B and C. The middle
//! term B occurs in both premises, A only in the first and C only in the
//! second. The four figures fix the term order inside each premise:
//!
//! | figure | premise 1 | premise 2 |
//! |--------|-----------|-----------|
//! | 1      | A-B       | B-C       |
//! | 2      | B-A       | C-B       |
//! | 3      | B-A       | B-C       |
//! | 4      | A-B       | C-B       |
//!
//! Responses relate the end terms A and C with one of the four moods in either
//! direction, or assert that nothing follows (NVC).

mod logic;
mod profile;

pub use logic::{entails, valid_conclusions, valid_conclusions_from};
pub use profile::{ReasonerProfile, Record};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Number of distinct tasks.
pub const NUM_TASKS: usize = 64;
/// Number of response options, NVC included.
pub const NUM_RESPONSES: usize = 9;
/// Number of (task, response) items.
pub const NUM_ITEMS: usize = NUM_TASKS * NUM_RESPONSES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid mood letter '{ch}' at position {pos} in \"{code}\"")]
    InvalidMood { code: String, ch: char, pos: usize },
    #[error("invalid figure '{ch}' in \"{code}\" (expected 1-4)")]
    InvalidFigure { code: String, ch: char },
    #[error("task code \"{0}\" must be exactly three characters")]
    TaskLength(String),
    #[error("invalid response code \"{0}\"")]
    InvalidResponse(String),
}

/// Premise or conclusion quantifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mood {
    /// All X are Y
    A,
    /// Some X are Y
    I,
    /// No X are Y
    E,
    /// Some X are not Y
    O,
}

impl Mood {
    /// Canonical order, as used by the response list.
    pub const ALL: [Mood; 4] = [Mood::A, Mood::I, Mood::E, Mood::O];

    pub fn letter(self) -> char {
        match self {
            Mood::A => 'A',
            Mood::I => 'I',
            Mood::E => 'E',
            Mood::O => 'O',
        }
    }

    pub fn from_letter(ch: char) -> Option<Mood> {
        match ch {
            'A' => Some(Mood::A),
            'I' => Some(Mood::I),
            'E' => Some(Mood::E),
            'O' => Some(Mood::O),
            _ => None,
        }
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Mood::E | Mood::O)
    }

    pub fn is_particular(self) -> bool {
        matches!(self, Mood::I | Mood::O)
    }

    /// Position in the canonical order A, I, E, O.
    pub fn index(self) -> usize {
        self as usize
    }

    // Rank of the letter in alphabetical order (A, E, I, O), used for task codes.
    fn lexical_rank(self) -> usize {
        match self {
            Mood::A => 0,
            Mood::E => 1,
            Mood::I => 2,
            Mood::O => 3,
        }
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Term arrangement, 1 through 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Figure(u8);

impl Figure {
    pub const ALL: [Figure; 4] = [Figure(1), Figure(2), Figure(3), Figure(4)];

    pub fn new(number: u8) -> Option<Figure> {
        (1..=4).contains(&number).then_some(Figure(number))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// Zero-based index.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One of the three terms of a syllogism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    A,
    B,
    C,
}

impl Term {
    pub fn bit(self) -> u8 {
        match self {
            Term::A => 0b001,
            Term::B => 0b010,
            Term::C => 0b100,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Term::A => "A",
            Term::B => "B",
            Term::C => "C",
        };
        f.write_str(s)
    }
}

/// A quantified statement `mood(subject, predicate)`. Used for premises and
/// for quantified conclusions alike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Premise {
    pub mood: Mood,
    pub subject: Term,
    pub predicate: Term,
}

impl Premise {
    pub fn new(mood: Mood, subject: Term, predicate: Term) -> Self {
        Premise {
            mood,
            subject,
            predicate,
        }
    }

    /// Same mood with subject and predicate swapped.
    pub fn converse(self) -> Premise {
        Premise::new(self.mood, self.predicate, self.subject)
    }
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, p) = (self.subject, self.predicate);
        match self.mood {
            Mood::A => write!(f, "All {s} are {p}"),
            Mood::I => write!(f, "Some {s} are {p}"),
            Mood::E => write!(f, "No {s} are {p}"),
            Mood::O => write!(f, "Some {s} are not {p}"),
        }
    }
}

/// A syllogistic problem: two premise moods and a figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Task {
    pub mood1: Mood,
    pub mood2: Mood,
    pub figure: Figure,
}

impl Task {
    pub fn new(mood1: Mood, mood2: Mood, figure: Figure) -> Self {
        Task {
            mood1,
            mood2,
            figure,
        }
    }

    /// Position in [`enumerate_tasks`], i.e. in lexicographic code order.
    pub fn index(self) -> usize {
        self.mood1.lexical_rank() * 16 + self.mood2.lexical_rank() * 4 + self.figure.index()
    }

    pub fn from_index(index: usize) -> Option<Task> {
        TASKS.get(index).copied()
    }

    pub fn code(self) -> String {
        format!("{}{}{}", self.mood1, self.mood2, self.figure)
    }

    pub fn premises(self) -> (Premise, Premise) {
        premises_of(self)
    }
}

impl Ord for Task {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for Task {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.mood1, self.mood2, self.figure)
    }
}

impl FromStr for Task {
    type Err = ParseError;

    fn from_str(code: &str) -> Result<Self, Self::Err> {
        parse_task(code)
    }
}

/// Parses a case-sensitive task code such as `"AE3"`.
pub fn parse_task(code: &str) -> Result<Task, ParseError> {
    let chars: Vec<char> = code.chars().collect();
    if chars.len() != 3 {
        return Err(ParseError::TaskLength(code.to_string()));
    }
    let mood = |pos: usize| {
        Mood::from_letter(chars[pos]).ok_or_else(|| ParseError::InvalidMood {
            code: code.to_string(),
            ch: chars[pos],
            pos,
        })
    };
    let mood1 = mood(0)?;
    let mood2 = mood(1)?;
    let figure = chars[2]
        .to_digit(10)
        .and_then(|d| Figure::new(d as u8))
        .ok_or_else(|| ParseError::InvalidFigure {
            code: code.to_string(),
            ch: chars[2],
        })?;
    Ok(Task::new(mood1, mood2, figure))
}

static TASKS: [Task; NUM_TASKS] = build_tasks();

const fn build_tasks() -> [Task; NUM_TASKS] {
    const LEXICAL: [Mood; 4] = [Mood::A, Mood::E, Mood::I, Mood::O];
    let mut out = [Task {
        mood1: Mood::A,
        mood2: Mood::A,
        figure: Figure(1),
    }; NUM_TASKS];
    let mut i = 0;
    while i < NUM_TASKS {
        out[i] = Task {
            mood1: LEXICAL[i / 16],
            mood2: LEXICAL[(i / 4) % 4],
            figure: Figure((i % 4) as u8 + 1),
        };
        i += 1;
    }
    out
}

/// All 64 tasks in lexicographic order of their codes (`AA1` .. `OO4`).
pub fn enumerate_tasks() -> &'static [Task; NUM_TASKS] {
    &TASKS
}

/// Premises of a task, terms arranged by figure.
pub fn premises_of(task: Task) -> (Premise, Premise) {
    let (first, second) = match task.figure.number() {
        1 => ((Term::A, Term::B), (Term::B, Term::C)),
        2 => ((Term::B, Term::A), (Term::C, Term::B)),
        3 => ((Term::B, Term::A), (Term::B, Term::C)),
        4 => ((Term::A, Term::B), (Term::C, Term::B)),
        _ => unreachable!("figure out of range"),
    };
    (
        Premise::new(task.mood1, first.0, first.1),
        Premise::new(task.mood2, second.0, second.1),
    )
}

/// Direction of a quantified conclusion: A-C (`ac`) or C-A (`ca`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Ac,
    Ca,
}

/// One of the nine conclusion choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Response {
    Conclusion { mood: Mood, direction: Direction },
    Nvc,
}

impl Response {
    /// Canonical order: Aac, Aca, Iac, Ica, Eac, Eca, Oac, Oca, NVC.
    pub const ALL: [Response; NUM_RESPONSES] = [
        Response::conclusion(Mood::A, Direction::Ac),
        Response::conclusion(Mood::A, Direction::Ca),
        Response::conclusion(Mood::I, Direction::Ac),
        Response::conclusion(Mood::I, Direction::Ca),
        Response::conclusion(Mood::E, Direction::Ac),
        Response::conclusion(Mood::E, Direction::Ca),
        Response::conclusion(Mood::O, Direction::Ac),
        Response::conclusion(Mood::O, Direction::Ca),
        Response::Nvc,
    ];

    pub const fn conclusion(mood: Mood, direction: Direction) -> Response {
        Response::Conclusion { mood, direction }
    }

    /// Position in the canonical order.
    pub fn index(self) -> usize {
        match self {
            Response::Conclusion { mood, direction } => {
                mood.index() * 2
                    + match direction {
                        Direction::Ac => 0,
                        Direction::Ca => 1,
                    }
            }
            Response::Nvc => 8,
        }
    }

    pub fn from_index(index: usize) -> Option<Response> {
        Response::ALL.get(index).copied()
    }

    pub fn code(self) -> &'static str {
        const CODES: [&str; NUM_RESPONSES] = [
            "Aac", "Aca", "Iac", "Ica", "Eac", "Eca", "Oac", "Oca", "NVC",
        ];
        CODES[self.index()]
    }

    /// The quantified statement this response asserts, `None` for NVC.
    pub fn statement(self) -> Option<Premise> {
        match self {
            Response::Conclusion { mood, direction } => Some(match direction {
                Direction::Ac => Premise::new(mood, Term::A, Term::C),
                Direction::Ca => Premise::new(mood, Term::C, Term::A),
            }),
            Response::Nvc => None,
        }
    }
}

impl Ord for Response {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for Response {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Response {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Response {
    type Err = ParseError;

    fn from_str(code: &str) -> Result<Self, Self::Err> {
        parse_response(code)
    }
}

/// Parses one of the nine case-sensitive response codes.
pub fn parse_response(code: &str) -> Result<Response, ParseError> {
    Response::ALL
        .iter()
        .copied()
        .find(|r| r.code() == code)
        .ok_or_else(|| ParseError::InvalidResponse(code.to_string()))
}

/// Index of a (task, response) pair in the 576-item space.
pub fn item_index(task: Task, response: Response) -> usize {
    task.index() * NUM_RESPONSES + response.index()
}

macro_rules! string_serde {
    ($ty:ty, $parse:path) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                $parse(&s).map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(Task, parse_task);
string_serde!(Response, parse_response);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_task_codes() {
        let t = parse_task("AA1").unwrap();
        assert_eq!(t, Task::new(Mood::A, Mood::A, Figure(1)));
        let t = parse_task("OE4").unwrap();
        assert_eq!(t, Task::new(Mood::O, Mood::E, Figure(4)));
    }

    #[test]
    fn rejects_bad_task_codes() {
        match parse_task("AX2") {
            Err(ParseError::InvalidMood {
                ch: 'X', pos: 1, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_task("AA5"),
            Err(ParseError::InvalidFigure { ch: '5', .. })
        ));
        assert!(matches!(parse_task("AA"), Err(ParseError::TaskLength(_))));
        assert!(matches!(parse_task("AA12"), Err(ParseError::TaskLength(_))));
        // case-sensitive
        assert!(parse_task("aa1").is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let tasks = enumerate_tasks();
        assert_eq!(tasks.len(), 64);
        assert_eq!(tasks[0].code(), "AA1");
        assert_eq!(tasks[63].code(), "OO4");
        let codes: Vec<String> = tasks.iter().map(|t| t.code()).collect();
        let mut sorted = codes.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(codes, sorted);
        for (i, t) in tasks.iter().enumerate() {
            assert_eq!(t.index(), i);
            assert_eq!(Task::from_index(i), Some(*t));
        }
    }

    #[test]
    fn codes_round_trip() {
        for t in enumerate_tasks() {
            assert_eq!(parse_task(&t.code()).unwrap(), *t);
        }
        for (i, r) in Response::ALL.iter().enumerate() {
            assert_eq!(r.index(), i);
            assert_eq!(parse_response(r.code()).unwrap(), *r);
        }
        assert!(parse_response("nvc").is_err());
        assert!(parse_response("XYZ").is_err());
    }

    #[test]
    fn premise_arrangement_by_figure() {
        let render = |code: &str| {
            let (p1, p2) = premises_of(parse_task(code).unwrap());
            format!("{p1}; {p2}")
        };
        assert_eq!(render("AA1"), "All A are B; All B are C");
        assert_eq!(render("EI2"), "No B are A; Some C are B");
        assert_eq!(render("AO4"), "All A are B; Some C are not B");
        assert_eq!(render("IE3"), "Some B are A; No B are C");
    }

    #[test]
    fn premises_share_middle_term_once() {
        for t in enumerate_tasks() {
            let (p1, p2) = premises_of(*t);
            for (p, end) in [(p1, Term::A), (p2, Term::C)] {
                let terms = [p.subject, p.predicate];
                assert_eq!(terms.iter().filter(|x| **x == Term::B).count(), 1);
                assert!(terms.contains(&end));
            }
            assert_eq!(p1.mood, t.mood1);
            assert_eq!(p2.mood, t.mood2);
        }
    }

    #[test]
    fn item_indices_are_dense() {
        let mut seen = vec![false; NUM_ITEMS];
        for t in enumerate_tasks() {
            for r in Response::ALL {
                let i = item_index(*t, r);
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }
}
