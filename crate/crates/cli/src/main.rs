//! `syllobench`: generate synthetic reasoners, benchmark models on them and
//! analyse the results.
//!
//! Exit codes: 0 on success, 1 on runtime errors, 2 on usage errors.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use syllobench_core::analysis::{
    default_noise_grid, entropy_accuracy_curve, entropy_report, noise_accuracy_curve,
};
use syllobench_core::harness::run_loo;
use syllobench_core::io::{
    load_dataset, load_trials, save_curve, save_dataset, save_entropy_report, save_results,
    save_scatter, ModelEntry, RunConfig,
};
use syllobench_core::models::{ModelFactory, ModelKind, PredictionTable};
use syllobench_core::recommenders::{ibcf_build, CfOptions, TieBreak};
use syllobench_core::synthetic::{generate_population, inject_noise_population, NoiseSpec};

const DATASET_FILE: &str = "dataset.csv";
const MATRIX_FILE: &str = "item_matrix.csv";
const ENTROPY_FILE: &str = "entropy.csv";
const ENTROPY_CURVE_FILE: &str = "entropy_curve.csv";
const ENTROPY_SCATTER_FILE: &str = "entropy_scatter.csv";
const NOISE_CURVE_FILE: &str = "noise_curve.csv";
const NOISE_ENTROPY_FILE: &str = "noise_entropy_curve.csv";
const CURVE_MODELS: [&str; 4] = ["ubcf", "ibcf", "ubcf-fit", "ibcf-fit"];

#[derive(Parser)]
#[command(
    name = "syllobench",
    version,
    about = "Benchmark predictive models of syllogistic reasoning"
)]
struct Cli {
    /// Worker threads (default: all available processors). Results do not
    /// depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the 256 synthetic reasoners, optionally with noise, to <out>/dataset.csv
    Gen(GenArgs),
    /// Leave-one-out benchmark; writes <out>/trials.csv and <out>/summary.json
    Run(RunArgs),
    /// Per-task response entropy, and accuracy against entropy given results
    Entropy(EntropyArgs),
    /// Accuracy of models over a grid of noise levels on the synthetic population
    Curve(CurveArgs),
    /// Check a dataset (.csv) or prediction table (.json) and report what it holds
    Validate(ValidateArgs),
}

#[derive(Args)]
struct SeedArg {
    /// Seed for every random stream
    #[arg(long, env = "SYLLOBENCH_SEED")]
    seed: u64,
}

#[derive(Args)]
struct GenArgs {
    /// Proportion of responses replaced by uniform draws, in [0, 1]
    #[arg(long, default_value = "0", value_parser = parse_proportion)]
    noise: f64,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct CfArgs {
    /// Tie-breaking among equally scored responses (canonical or seeded)
    #[arg(long)]
    tie_break: Option<TieBreak>,
    /// Only the k most similar training users vote (user-based models)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    top_k: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    /// Dataset CSV; may be repeated
    #[arg(long = "data")]
    data: Vec<PathBuf>,
    /// Comma-separated model names, or table:<path>
    #[arg(long, value_delimiter = ',', value_parser = parse_model)]
    models: Vec<ModelKind>,
    /// TOML run configuration; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed for every random stream
    #[arg(long, env = "SYLLOBENCH_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    cf: CfArgs,
    /// Also write the item co-occurrence matrix of the full dataset
    #[arg(long)]
    dump_matrix: bool,
}

#[derive(Args)]
struct EntropyArgs {
    #[arg(long = "data")]
    data: PathBuf,
    /// trials.csv from a run on the same dataset
    #[arg(long)]
    results: Option<PathBuf>,
    /// Number of equal-width entropy bins
    #[arg(long, default_value = "6", value_parser = clap::value_parser!(u64).range(1..))]
    bins: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct CurveArgs {
    /// Comma-separated noise levels in [0, 1] (default 0, 0.1, ..., 1)
    #[arg(long, value_delimiter = ',', value_parser = parse_proportion)]
    grid: Option<Vec<f64>>,
    /// Comma-separated model names, or table:<path>
    #[arg(long, value_delimiter = ',', value_parser = parse_model)]
    models: Vec<ModelKind>,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    cf: CfArgs,
}

#[derive(Args)]
struct ValidateArgs {
    path: PathBuf,
}

fn parse_proportion(s: &str) -> Result<f64, String> {
    let p: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is outside [0, 1]"))
    }
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.trim().parse()
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(ErrorKind::ValueValidation, message)
        .exit()
}

fn cf_options(cf: &CfArgs) -> CfOptions {
    CfOptions {
        tie_break: cf.tie_break.unwrap_or_default(),
        top_k: cf.top_k.map(|k| k as usize),
    }
}

fn factories(kinds: &[ModelKind], options: CfOptions) -> anyhow::Result<Vec<ModelFactory>> {
    kinds
        .iter()
        .map(|k| {
            k.factory(options)
                .with_context(|| format!("building model '{k}'"))
        })
        .collect()
}

fn gen(args: GenArgs) -> anyhow::Result<()> {
    let spec = NoiseSpec::new(args.noise, args.seed.seed)?;
    let data = inject_noise_population(&generate_population(), &spec);
    let path = args.out.join(DATASET_FILE);
    save_dataset(&data, &path)?;
    eprintln!(
        "wrote {} ({} reasoners, noise {})",
        path.display(),
        data.len(),
        args.noise
    );
    Ok(())
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::new(args.seed.unwrap_or_else(|| {
            usage_error("--seed (or SYLLOBENCH_SEED, or a config file) is required")
        })),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if !args.data.is_empty() {
        config.datasets = args.data.clone();
    }
    if !args.models.is_empty() {
        config.models = args
            .models
            .iter()
            .map(|k| ModelEntry::named(k.to_string()))
            .collect();
    }
    if config.models.is_empty() {
        config.models = syllobench_core::models::MODEL_NAMES
            .iter()
            .map(|n| ModelEntry::named(*n))
            .collect();
    }
    if let Some(out) = &args.out {
        config.out = out.clone();
    }
    if let Some(tb) = args.cf.tie_break {
        config.tie_break = tb;
    }
    if let Some(k) = args.cf.top_k {
        config.top_k = Some(k as usize);
    }
    if config.datasets.is_empty() {
        usage_error("no dataset given: pass --data <path> or list datasets in the config");
    }
    config.validate()?;
    let models = config.factories()?;

    let several = config.datasets.len() > 1;
    for path in &config.datasets {
        let data = load_dataset(path)?;
        let dir = if several {
            config.out.join(path.file_stem().unwrap_or_default())
        } else {
            config.out.clone()
        };
        let result = run_loo(&data, &models, config.seed)?;
        let summary = save_results(&result, &config, &dir)?;
        if args.dump_matrix {
            let matrix_path = dir.join(MATRIX_FILE);
            let file = File::create(&matrix_path)
                .with_context(|| format!("creating {}", matrix_path.display()))?;
            ibcf_build(&data)
                .write_csv(BufWriter::new(file))
                .with_context(|| format!("writing {}", matrix_path.display()))?;
        }
        println!("{} ({} subjects)", path.display(), data.len());
        for m in &summary.models {
            println!(
                "  {:<20} {:.4}  ({}/{})",
                m.model, m.accuracy, m.hits, m.trials
            );
        }
    }
    Ok(())
}

fn entropy(args: EntropyArgs) -> anyhow::Result<()> {
    let data = load_dataset(&args.data)?;
    if data.is_empty() {
        bail!("{} holds no trials", args.data.display());
    }
    let report = entropy_report(&data);
    save_entropy_report(&report, args.out.join(ENTROPY_FILE))?;
    println!(
        "mean task entropy {:.4} bits over {} tasks",
        report.mean_entropy(),
        report.tasks.len()
    );
    if let Some(results) = &args.results {
        let result = load_trials(results)?;
        let curve = entropy_accuracy_curve(&result, &data, args.bins as usize)?;
        save_curve(&curve.points, args.out.join(ENTROPY_CURVE_FILE))?;
        save_scatter(&curve.scatter, args.out.join(ENTROPY_SCATTER_FILE))?;
    }
    Ok(())
}

fn curve(args: CurveArgs) -> anyhow::Result<()> {
    let grid = args.grid.unwrap_or_else(default_noise_grid);
    if grid.is_empty() {
        usage_error("--grid needs at least one noise level");
    }
    let kinds = if args.models.is_empty() {
        CURVE_MODELS
            .iter()
            .map(|n| n.parse().expect("built-in name"))
            .collect()
    } else {
        args.models
    };
    let models = factories(&kinds, cf_options(&args.cf))?;
    let curve = noise_accuracy_curve(&generate_population(), &grid, &models, args.seed.seed)?;
    save_curve(&curve.by_noise, args.out.join(NOISE_CURVE_FILE))?;
    save_curve(&curve.by_entropy, args.out.join(NOISE_ENTROPY_FILE))?;
    for p in &curve.by_noise {
        println!("p={:.2}  {:<12} {:.4}", p.x, p.model, p.accuracy);
    }
    Ok(())
}

fn validate(args: ValidateArgs) -> anyhow::Result<()> {
    let path: &Path = &args.path;
    if path.extension().is_some_and(|e| e == "json") {
        PredictionTable::load(path)?;
        println!(
            "{}: valid prediction table covering all 64 tasks",
            path.display()
        );
    } else {
        let data = load_dataset(path)?;
        let trials: usize = data.iter().map(|p| p.len()).sum();
        let complete = data.iter().filter(|p| p.is_complete()).count();
        println!(
            "{}: valid dataset, {} subjects ({} complete), {} trials",
            path.display(),
            data.len(),
            complete,
            trials
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Run(a) => run(a),
        Command::Entropy(a) => entropy(a),
        Command::Curve(a) => curve(a),
        Command::Validate(a) => validate(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
