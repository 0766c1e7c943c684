//! Benchmarking predictive models of human syllogistic reasoning.
//!
//! The crate covers the 64-task / 9-response syllogistic domain with a
//! first-order validity checker, rule-based cognitive models and baselines,
//! user- and item-based collaborative filtering, a synthetic population of
//! strategy-mixing reasoners with noise injection, a leave-one-out
//! predict-then-adapt harness, and entropy/noise analyses.

pub mod analysis;
pub mod domain;
pub mod error;
pub mod harness;
pub mod io;
pub mod models;
pub mod recommenders;
pub mod stream;
pub mod synthetic;

pub use error::{Error, ModelError, Result};
