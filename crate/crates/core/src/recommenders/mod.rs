//! Memory-based collaborative filtering.
//!
//! Both recommenders come in a domain-agnostic form and a figure-structured
//! ("fit") form. The fit forms only use revealed evidence from tasks that
//! share the target task's figure, reflecting that synthetic reasoners apply
//! one strategy per figure.
//!
//! Each recommender is available as a pure function computed straight from
//! its definition and as an incremental [`Model`](crate::models::Model)
//! implementation for the benchmark harness. The two are kept in agreement by
//! tests.

mod item_based;
mod user_based;

pub use item_based::{ibcf_build, ibcf_fit_predict, ibcf_predict, Ibcf, ItemMatrix, UserVector};
pub use user_based::{ubcf_fit_predict, ubcf_predict, ubcf_similarity, Ubcf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{Response, NUM_RESPONSES};

/// How equal scores are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Earliest response in canonical order.
    #[default]
    Canonical,
    /// Uniform among the tied responses, from the subject's random stream.
    Seeded,
}

impl std::str::FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "canonical" => Ok(TieBreak::Canonical),
            "seeded" => Ok(TieBreak::Seeded),
            _ => Err(format!(
                "unknown tie-break policy '{s}' (expected canonical or seeded)"
            )),
        }
    }
}

/// Options shared by the recommenders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CfOptions {
    #[serde(default)]
    pub tie_break: TieBreak,
    /// Restrict UBCF votes to the k most similar training users. Off by default.
    #[serde(default)]
    pub top_k: Option<usize>,
}

fn pick(scores: &[u64; NUM_RESPONSES], tie_break: TieBreak, rng: &mut ChaCha8Rng) -> Response {
    let best = *scores.iter().max().expect("nine scores");
    match tie_break {
        TieBreak::Canonical => {
            Response::ALL[scores.iter().position(|s| *s == best).expect("max exists")]
        }
        TieBreak::Seeded => {
            let tied: Vec<usize> = (0..NUM_RESPONSES).filter(|i| scores[*i] == best).collect();
            Response::ALL[tied[rng.gen_range(0..tied.len())]]
        }
    }
}

fn rank(scores: &[u64; NUM_RESPONSES]) -> Vec<Response> {
    let mut out = Response::ALL.to_vec();
    out.sort_by_key(|r| std::cmp::Reverse(scores[r.index()]));
    out
}
