//! Artificial reasoners with one rule strategy per figure, and noise injection.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::domain::{enumerate_tasks, Figure, ReasonerProfile, Response, Task, NUM_RESPONSES};
use crate::error::{Error, Result};
use crate::models::Strategy;
use crate::stream::stream_rng;

/// Which rule strategy answers the tasks of each figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyAssignment([Strategy; 4]);

impl StrategyAssignment {
    pub fn new(per_figure: [Strategy; 4]) -> Self {
        StrategyAssignment(per_figure)
    }

    /// The same strategy on every figure.
    pub fn pure(strategy: Strategy) -> Self {
        StrategyAssignment([strategy; 4])
    }

    /// All 4^4 assignments; figure 1 varies slowest.
    pub fn all() -> Vec<StrategyAssignment> {
        (0..256)
            .map(|n| {
                StrategyAssignment([
                    Strategy::ALL[(n >> 6) & 3],
                    Strategy::ALL[(n >> 4) & 3],
                    Strategy::ALL[(n >> 2) & 3],
                    Strategy::ALL[n & 3],
                ])
            })
            .collect()
    }

    pub fn strategy_for(&self, figure: Figure) -> Strategy {
        self.0[figure.index()]
    }

    pub fn respond(&self, task: Task) -> Response {
        self.strategy_for(task.figure).respond(task)
    }

    /// Subject id such as `atm-mat-fol-con`.
    pub fn subject_id(&self) -> String {
        self.to_string()
    }

    /// Noise-free profile, tasks in canonical order.
    pub fn profile(&self) -> ReasonerProfile {
        ReasonerProfile::from_responses(
            self.subject_id(),
            enumerate_tasks().iter().map(|t| (*t, self.respond(*t))),
        )
        .expect("canonical task order is a valid profile")
    }
}

impl fmt::Display for StrategyAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<&str> = self.0.iter().map(|s| s.code()).collect();
        f.write_str(&codes.join("-"))
    }
}

impl FromStr for StrategyAssignment {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split('-').collect();
        if parts.len() != 4 {
            return Err(format!("assignment '{s}' needs four strategy codes"));
        }
        let mut out = [Strategy::Atmosphere; 4];
        for (slot, code) in out.iter_mut().zip(parts) {
            *slot = code.parse()?;
        }
        Ok(StrategyAssignment(out))
    }
}

/// One profile per strategy assignment: 256 reasoners with 64 answers each.
pub fn generate_population() -> Vec<ReasonerProfile> {
    StrategyAssignment::all()
        .iter()
        .map(|a| a.profile())
        .collect()
}

/// Proportion of responses to replace, and the seed of the replacement draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    proportion: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(proportion: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&proportion) {
            return Err(Error::Config(format!(
                "noise proportion {proportion} outside [0, 1]"
            )));
        }
        Ok(NoiseSpec { proportion, seed })
    }

    pub fn proportion(&self) -> f64 {
        self.proportion
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Replaces each response, with probability `p`, by a uniform draw over all
/// nine options (which may reproduce the original).
///
/// Every record consumes one selection draw and one replacement draw whatever
/// `p` is, from a stream keyed by the seed and subject id. Runs that share a
/// seed therefore corrupt nested sets of records as `p` grows.
pub fn inject_noise(profile: &ReasonerProfile, spec: &NoiseSpec) -> ReasonerProfile {
    let mut rng = stream_rng(spec.seed, &["noise", profile.subject()]);
    let responses: Vec<Response> = profile
        .records()
        .iter()
        .map(|rec| {
            let u: f64 = rng.gen();
            let replacement = Response::ALL[rng.gen_range(0..NUM_RESPONSES)];
            if u < spec.proportion {
                replacement
            } else {
                rec.response
            }
        })
        .collect();
    profile.with_responses(responses)
}

pub fn inject_noise_population(
    population: &[ReasonerProfile],
    spec: &NoiseSpec,
) -> Vec<ReasonerProfile> {
    population
        .par_iter()
        .map(|p| inject_noise(p, spec))
        .collect()
}
