//! File formats: dataset CSV, results, run configuration and curve CSVs.

mod config;
mod curves;
mod dataset;
mod results;

pub use config::{ModelEntry, RunConfig};
pub use curves::{
    save_curve, save_entropy_report, save_scatter, write_curve, write_entropy_report,
    write_scatter, CURVE_HEADER,
};
pub use dataset::{load_dataset, parse_dataset, save_dataset, write_dataset, DATASET_HEADER};
pub use results::{
    load_summary, load_trials, save_results, write_trials, ModelAccuracy, Summary, SUMMARY_FILE,
    TRIALS_FILE, TRIALS_HEADER,
};
