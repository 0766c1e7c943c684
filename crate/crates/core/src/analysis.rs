//! Response entropy and the accuracy curves over entropy and noise.

use std::collections::BTreeMap;

use crate::domain::{ReasonerProfile, Task, NUM_RESPONSES};
use crate::error::{Error, Result};
use crate::harness::{run_loo, BenchmarkResult, Tally};
use crate::models::ModelFactory;
use crate::synthetic::{inject_noise_population, NoiseSpec};

/// Largest possible entropy over nine responses, `log2 9`.
pub fn max_entropy() -> f64 {
    (NUM_RESPONSES as f64).log2()
}

/// Shannon entropy in bits. Zero probabilities contribute nothing.
pub fn entropy_bits(probabilities: &[f64]) -> f64 {
    probabilities
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| p * (1.0 / p).log2())
        .sum::<f64>()
}

/// Empirical response counts for one task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResponseDistribution {
    counts: [u32; NUM_RESPONSES],
}

impl ResponseDistribution {
    pub fn from_counts(counts: [u32; NUM_RESPONSES]) -> Self {
        ResponseDistribution { counts }
    }

    pub fn counts(&self) -> &[u32; NUM_RESPONSES] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Relative frequencies, no smoothing.
    pub fn probabilities(&self) -> [f64; NUM_RESPONSES] {
        let total = f64::from(self.total());
        self.counts.map(|c| {
            if total > 0.0 {
                f64::from(c) / total
            } else {
                0.0
            }
        })
    }

    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.probabilities())
    }
}

pub fn response_distribution(
    dataset: &[ReasonerProfile],
    task: Task,
) -> Result<ResponseDistribution> {
    let mut counts = [0u32; NUM_RESPONSES];
    for p in dataset {
        if let Some(r) = p.response_to(task) {
            counts[r.index()] += 1;
        }
    }
    if counts.iter().all(|c| *c == 0) {
        return Err(Error::MissingTask(task.code()));
    }
    Ok(ResponseDistribution { counts })
}

/// Entropy in bits of the responses given to `task`.
pub fn task_entropy(dataset: &[ReasonerProfile], task: Task) -> Result<f64> {
    Ok(response_distribution(dataset, task)?.entropy())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskEntropy {
    pub task: Task,
    pub distribution: ResponseDistribution,
    pub entropy: f64,
}

/// Distribution and entropy of every task the dataset contains, task order.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub tasks: Vec<TaskEntropy>,
}

impl EntropyReport {
    pub fn mean_entropy(&self) -> f64 {
        if self.tasks.is_empty() {
            return 0.0;
        }
        self.tasks.iter().map(|t| t.entropy).sum::<f64>() / self.tasks.len() as f64
    }

    pub fn get(&self, task: Task) -> Option<&TaskEntropy> {
        self.tasks.iter().find(|t| t.task == task)
    }
}

pub fn entropy_report(dataset: &[ReasonerProfile]) -> EntropyReport {
    let mut counts: BTreeMap<Task, [u32; NUM_RESPONSES]> = BTreeMap::new();
    for p in dataset {
        for r in p.records() {
            counts.entry(r.task).or_default()[r.response.index()] += 1;
        }
    }
    let tasks = counts
        .into_iter()
        .map(|(task, c)| {
            let distribution = ResponseDistribution::from_counts(c);
            TaskEntropy {
                task,
                distribution,
                entropy: distribution.entropy(),
            }
        })
        .collect();
    EntropyReport { tasks }
}

/// Mean accuracy of one model at one x position, over `n` trials.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub model: String,
    pub accuracy: f64,
    pub n: usize,
}

/// Accuracy of one model on one task, placed at the task's entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub task: Task,
    pub entropy: f64,
    pub model: String,
    pub accuracy: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyCurve {
    /// Binned means, x at the bin midpoint. Empty bins are omitted.
    pub points: Vec<CurvePoint>,
    pub scatter: Vec<ScatterPoint>,
}

/// Groups tasks into `bins` equal-width entropy bins over `[0, log2 9]` and
/// reports trial-weighted accuracy per bin and model.
pub fn entropy_accuracy_curve(
    result: &BenchmarkResult,
    dataset: &[ReasonerProfile],
    bins: usize,
) -> Result<EntropyCurve> {
    if bins == 0 {
        return Err(Error::Config("entropy curve needs at least one bin".into()));
    }
    let report = entropy_report(dataset);
    let width = max_entropy() / bins as f64;

    let mut per_task: BTreeMap<(&str, Task), Tally> = BTreeMap::new();
    for o in result.outcomes() {
        per_task.entry((&o.model, o.task)).or_default().add(o.hit);
    }

    let mut binned: BTreeMap<(usize, &str), Tally> = BTreeMap::new();
    let mut scatter = Vec::with_capacity(per_task.len());
    for ((model, task), tally) in &per_task {
        let entropy = report
            .get(*task)
            .ok_or_else(|| Error::MissingTask(task.code()))?
            .entropy;
        let bin = ((entropy / width) as usize).min(bins - 1);
        let acc = binned.entry((bin, model)).or_default();
        acc.hits += tally.hits;
        acc.trials += tally.trials;
        scatter.push(ScatterPoint {
            task: *task,
            entropy,
            model: model.to_string(),
            accuracy: tally.accuracy().unwrap_or(0.0),
            n: tally.trials,
        });
    }
    let points = binned
        .into_iter()
        .map(|((bin, model), tally)| CurvePoint {
            x: (bin as f64 + 0.5) * width,
            model: model.to_string(),
            accuracy: tally.accuracy().unwrap_or(0.0),
            n: tally.trials,
        })
        .collect();
    Ok(EntropyCurve { points, scatter })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseCurve {
    /// x is the noise proportion.
    pub by_noise: Vec<CurvePoint>,
    /// x is the mean task entropy of the noisy data.
    pub by_entropy: Vec<CurvePoint>,
}

/// For each noise level: corrupt the population, run leave-one-out, record
/// each model's accuracy. The same seed drives both noise and models.
pub fn noise_accuracy_curve(
    population: &[ReasonerProfile],
    grid: &[f64],
    models: &[ModelFactory],
    seed: u64,
) -> Result<NoiseCurve> {
    let mut by_noise = Vec::new();
    let mut by_entropy = Vec::new();
    for &p in grid {
        let noisy = inject_noise_population(population, &NoiseSpec::new(p, seed)?);
        let mean_entropy = entropy_report(&noisy).mean_entropy();
        let result = run_loo(&noisy, models, seed)?;
        for f in models {
            let mut tally = Tally::default();
            result.for_model(f.id()).for_each(|o| tally.add(o.hit));
            let accuracy = tally.accuracy().unwrap_or(0.0);
            by_noise.push(CurvePoint {
                x: p,
                model: f.id().to_string(),
                accuracy,
                n: tally.trials,
            });
            by_entropy.push(CurvePoint {
                x: mean_entropy,
                model: f.id().to_string(),
                accuracy,
                n: tally.trials,
            });
        }
    }
    Ok(NoiseCurve {
        by_noise,
        by_entropy,
    })
}

/// `0, 0.1, ..., 1.0`.
pub fn default_noise_grid() -> Vec<f64> {
    (0..=10).map(|i| f64::from(i) / 10.0).collect()
}

/// Reads a noise curve backwards: the noise level at which `model` reaches
/// `target` accuracy, by linear interpolation between neighbouring grid
/// points. `None` if the curve never crosses the target.
pub fn noise_for_accuracy(points: &[CurvePoint], model: &str, target: f64) -> Option<f64> {
    let mut curve: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.model == model)
        .map(|p| (p.x, p.accuracy))
        .collect();
    curve.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in curve.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        let (lo, hi) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
        if (lo..=hi).contains(&target) {
            if y1 == y0 {
                return Some(x0);
            }
            return Some(x0 + (target - y0) * (x1 - x0) / (y1 - y0));
        }
    }
    match curve.as_slice() {
        [(x, y)] if *y == target => Some(*x),
        _ => None,
    }
}

/// Ordinary least-squares line with its coefficient of determination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Some(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{enumerate_tasks, parse_task, Response};

    fn answering(task: Task, responses: &[usize]) -> Vec<ReasonerProfile> {
        responses
            .iter()
            .enumerate()
            .map(|(i, r)| {
                ReasonerProfile::from_responses(format!("s{i}"), [(task, Response::ALL[*r])])
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn entropy_unit_values() {
        let t = parse_task("AA1").unwrap();
        assert_eq!(task_entropy(&answering(t, &[3; 20]), t).unwrap(), 0.0);
        let uniform: Vec<usize> = (0..9).collect();
        assert!((task_entropy(&answering(t, &uniform), t).unwrap() - 9f64.log2()).abs() < 1e-9);
        assert!((task_entropy(&answering(t, &[0, 8]), t).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn missing_task_is_an_error() {
        let t = parse_task("AA1").unwrap();
        let data = answering(t, &[0]);
        assert!(matches!(
            task_entropy(&data, parse_task("AA2").unwrap()),
            Err(Error::MissingTask(_))
        ));
    }

    #[test]
    fn entropy_ignores_label_permutation() {
        let p = [0.5, 0.2, 0.1, 0.1, 0.1, 0.0, 0.0, 0.0, 0.0];
        let mut q = p;
        q.reverse();
        assert!((entropy_bits(&p) - entropy_bits(&q)).abs() < 1e-12);
    }

    #[test]
    fn linear_fit_of_a_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let fit = linear_fit(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]).is_none());
    }

    #[test]
    fn inverse_read_off_interpolates() {
        let pts: Vec<CurvePoint> = [(0.0, 0.9), (0.5, 0.5), (1.0, 0.1)]
            .iter()
            .map(|(x, a)| CurvePoint {
                x: *x,
                model: "m".into(),
                accuracy: *a,
                n: 1,
            })
            .collect();
        assert!((noise_for_accuracy(&pts, "m", 0.7).unwrap() - 0.25).abs() < 1e-12);
        assert!((noise_for_accuracy(&pts, "m", 0.5).unwrap() - 0.5).abs() < 1e-12);
        assert!(noise_for_accuracy(&pts, "m", 0.95).is_none());
        assert!(noise_for_accuracy(&pts, "other", 0.5).is_none());
    }

    #[test]
    fn report_covers_present_tasks() {
        let pop = crate::synthetic::generate_population();
        let report = entropy_report(&pop);
        assert_eq!(report.tasks.len(), 64);
        for t in &report.tasks {
            assert!(t.entropy >= 0.0 && t.entropy <= max_entropy() + 1e-12);
            assert_eq!(t.distribution.total(), 256);
        }
        assert_eq!(report.tasks[0].task, enumerate_tasks()[0]);
    }

    #[test]
    fn zero_bins_rejected() {
        let r = BenchmarkResult::default();
        assert!(entropy_accuracy_curve(&r, &[], 0).is_err());
    }
}
