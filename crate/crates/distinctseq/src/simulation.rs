//! Monte Carlo estimation for n beyond exhaustive reach.
//!
//! Generator contract: trials are split into fixed batches of
//! [`BATCH_SIZE`]; batch `b` draws from ChaCha8 seeded with the configured
//! 64-bit seed on stream `b`. Values are sampled with `rand`'s Lemire-style
//! unbiased integer `Uniform` (rejection, no modulo bias). Per-trial
//! operation counts are integers and partial sums are integer totals, so any
//! partition of the batch range merges to bit-identical estimates.

use crate::algorithms::{self, Algorithm, CostCounters};
use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Trials per ChaCha8 stream.
pub const BATCH_SIZE: u64 = 8192;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("n must be positive")]
    NonPositive,
    #[error("trials must be at least 1")]
    NoTrials,
}

/// One Monte Carlo run description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub n: usize,
    pub algorithm: Algorithm,
    pub trials: u64,
    pub seed: u64,
}

impl SimulationConfig {
    fn validate(&self) -> Result<(), SimulationError> {
        if self.n == 0 {
            return Err(SimulationError::NonPositive);
        }
        if self.trials == 0 {
            return Err(SimulationError::NoTrials);
        }
        Ok(())
    }
}

/// Mean, spread and trial count of one sampled metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectationEstimate {
    pub mean: f64,
    pub sample_variance: f64,
    pub standard_error: f64,
    pub trials: u64,
    pub good_fraction: f64,
}

/// Estimates for comparisons, assignments and total operations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub n: usize,
    pub algorithm: Algorithm,
    pub trials: u64,
    pub seed: u64,
    pub good_fraction: f64,
    pub comparisons: ExpectationEstimate,
    pub assignments: ExpectationEstimate,
    pub total: ExpectationEstimate,
}

/// Integer partial sums over a batch range; merge order does not matter.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialSimulation {
    pub trials: u64,
    pub good: u64,
    comparisons: u128,
    assignments: u128,
    totals: u128,
    comparisons_sq: u128,
    assignments_sq: u128,
    totals_sq: u128,
}

impl PartialSimulation {
    pub fn merge(mut self, other: &PartialSimulation) -> PartialSimulation {
        self.trials += other.trials;
        self.good += other.good;
        self.comparisons += other.comparisons;
        self.assignments += other.assignments;
        self.totals += other.totals;
        self.comparisons_sq += other.comparisons_sq;
        self.assignments_sq += other.assignments_sq;
        self.totals_sq += other.totals_sq;
        self
    }

    fn record(&mut self, counters: &CostCounters, good: bool) {
        let c = counters.comparisons as u128;
        let a = counters.assignments as u128;
        let t = c + a;
        self.trials += 1;
        self.good += good as u64;
        self.comparisons += c;
        self.assignments += a;
        self.totals += t;
        self.comparisons_sq += c * c;
        self.assignments_sq += a * a;
        self.totals_sq += t * t;
    }

    fn estimate(&self, sum: u128, sum_sq: u128) -> ExpectationEstimate {
        let t = self.trials as f64;
        let mean = sum as f64 / t;
        let sample_variance = if self.trials > 1 {
            (sum_sq as f64 - (sum as f64) * mean) / (t - 1.0)
        } else {
            0.0
        };
        // guard tiny negative residue from the f64 conversion
        let sample_variance = sample_variance.max(0.0);
        ExpectationEstimate {
            mean,
            sample_variance,
            standard_error: (sample_variance / t).sqrt(),
            trials: self.trials,
            good_fraction: self.good as f64 / t,
        }
    }
}

/// Number of batches a configuration spans.
pub fn batch_count(trials: u64) -> u64 {
    trials.div_ceil(BATCH_SIZE)
}

fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

fn run_batches(config: &SimulationConfig, batches: std::ops::Range<u64>) -> PartialSimulation {
    let n = config.n;
    let dist = Uniform::new_inclusive(1u32, n as u32).expect("valid range");
    let cells = match config.algorithm {
        Algorithm::Matrix => n * n,
        _ => n,
    };
    let mut values = vec![0usize; cells];
    let mut sums = PartialSimulation::default();
    for batch in batches {
        let mut rng = batch_rng(config.seed, batch);
        let lo = batch * BATCH_SIZE;
        let hi = ((batch + 1) * BATCH_SIZE).min(config.trials);
        for _ in lo..hi {
            for v in values.iter_mut() {
                *v = dist.sample(&mut rng) as usize;
            }
            let (good, c) = match config.algorithm {
                Algorithm::Linear => {
                    let (good, c, _) = algorithms::linear_raw(n, &values);
                    (good, c)
                }
                Algorithm::Backward => {
                    let (good, c, _) = algorithms::backward_raw(n, &values);
                    (good, c)
                }
                Algorithm::Bucket => {
                    let mut counters = CostCounters::default();
                    let (good, _) = algorithms::bucket_raw(n, &values, &mut counters);
                    (good, counters)
                }
                Algorithm::Matrix => {
                    let matrix = crate::algorithms::SquareMatrix::new(n, values.clone())
                        .expect("sampled cells valid");
                    let outcome = algorithms::matrix_test(&matrix);
                    (outcome.good, outcome.counters)
                }
            };
            sums.record(&c, good);
        }
    }
    sums
}

/// Partial run over a batch sub-range, for callers parallelizing trials.
/// Merging all batch ranges in any grouping reproduces [`simulate`] exactly.
pub fn simulate_batch_range(
    config: &SimulationConfig,
    batches: std::ops::Range<u64>,
) -> Result<PartialSimulation, SimulationError> {
    config.validate()?;
    Ok(run_batches(config, batches))
}

/// Builds the report from merged partial sums.
pub fn report_from_partial(
    config: &SimulationConfig,
    sums: &PartialSimulation,
) -> SimulationReport {
    assert_eq!(sums.trials, config.trials, "trial count mismatch");
    SimulationReport {
        n: config.n,
        algorithm: config.algorithm,
        trials: config.trials,
        seed: config.seed,
        good_fraction: sums.good as f64 / sums.trials as f64,
        comparisons: sums.estimate(sums.comparisons, sums.comparisons_sq),
        assignments: sums.estimate(sums.assignments, sums.assignments_sq),
        total: sums.estimate(sums.totals, sums.totals_sq),
    }
}

/// Sequential Monte Carlo run over all batches.
pub fn simulate(config: &SimulationConfig) -> Result<SimulationReport, SimulationError> {
    config.validate()?;
    let sums = run_batches(config, 0..batch_count(config.trials));
    Ok(report_from_partial(config, &sums))
}

/// Monte Carlo over i.i.d. uniform sequences.
pub fn simulate_sequence(config: &SimulationConfig) -> Result<SimulationReport, SimulationError> {
    assert_ne!(config.algorithm, Algorithm::Matrix, "use simulate_matrix");
    simulate(config)
}

/// Monte Carlo over i.i.d. uniform n×n matrices (cell-by-cell sampling, not
/// random Latin squares), reporting `matrix_test` operation counts.
pub fn simulate_matrix(config: &SimulationConfig) -> Result<SimulationReport, SimulationError> {
    assert_eq!(config.algorithm, Algorithm::Matrix);
    simulate(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{exact, rational_to_f64};
    use crate::oracle;

    fn cfg(n: usize, algorithm: Algorithm, trials: u64, seed: u64) -> SimulationConfig {
        SimulationConfig {
            n,
            algorithm,
            trials,
            seed,
        }
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let config = cfg(10, Algorithm::Linear, 20_000, 42);
        let a = simulate(&config).unwrap();
        let b = simulate(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partition_merge_matches_sequential() {
        let config = cfg(9, Algorithm::Bucket, 3 * BATCH_SIZE + 17, 7);
        let batches = batch_count(config.trials);
        let whole = simulate_batch_range(&config, 0..batches).unwrap();
        let merged = simulate_batch_range(&config, 0..1)
            .unwrap()
            .merge(&simulate_batch_range(&config, 1..3).unwrap())
            .merge(&simulate_batch_range(&config, 3..batches).unwrap());
        assert_eq!(whole, merged);
        let report = report_from_partial(&config, &merged);
        assert_eq!(report, simulate(&config).unwrap());
    }

    #[test]
    fn n_one_is_degenerate() {
        for alg in [Algorithm::Linear, Algorithm::Backward, Algorithm::Bucket] {
            let report = simulate(&cfg(1, alg, 1000, 3)).unwrap();
            assert_eq!(report.good_fraction, 1.0);
            assert_eq!(report.total.sample_variance, 0.0);
        }
        let report = simulate_matrix(&cfg(1, Algorithm::Matrix, 1000, 3)).unwrap();
        assert_eq!(report.good_fraction, 1.0);
    }

    #[test]
    fn config_validation() {
        assert_eq!(
            simulate(&cfg(0, Algorithm::Linear, 10, 1)).unwrap_err(),
            SimulationError::NonPositive
        );
        assert_eq!(
            simulate(&cfg(3, Algorithm::Linear, 0, 1)).unwrap_err(),
            SimulationError::NoTrials
        );
    }

    #[test]
    fn estimates_track_oracle_at_small_n() {
        // 4-standard-error agreement with the exact means
        for (n, alg) in [
            (3usize, Algorithm::Linear),
            (4, Algorithm::Backward),
            (4, Algorithm::Bucket),
        ] {
            let config = cfg(n, alg, 40_000, 4242);
            let report = simulate(&config).unwrap();
            let exact_mean = rational_to_f64(
                &oracle::exhaustive_expectation(n, alg, oracle::DEFAULT_BUDGET)
                    .unwrap()
                    .mean_comparisons,
            );
            let delta = (report.comparisons.mean - exact_mean).abs();
            assert!(
                delta <= 4.0 * report.comparisons.standard_error,
                "n={n} {alg}: {delta} vs {}",
                report.comparisons.standard_error
            );
        }
    }

    #[test]
    fn matrix_estimates_track_oracle_at_two() {
        let config = cfg(2, Algorithm::Matrix, 60_000, 7);
        let report = simulate_matrix(&config).unwrap();
        let exact_mean = rational_to_f64(
            &oracle::exhaustive_expectation(2, Algorithm::Matrix, oracle::DEFAULT_BUDGET)
                .unwrap()
                .mean_total,
        );
        let delta = (report.total.mean - exact_mean).abs();
        assert!(delta <= 4.0 * report.total.standard_error);
    }

    #[test]
    fn standard_error_invariant() {
        let report = simulate(&cfg(5, Algorithm::Linear, 10_000, 99)).unwrap();
        for est in [report.comparisons, report.assignments, report.total] {
            let want = (est.sample_variance / est.trials as f64).sqrt();
            assert!((est.standard_error - want).abs() < 1e-15);
            assert!(est.good_fraction >= 0.0 && est.good_fraction <= 1.0);
        }
    }

    #[test]
    fn matrix_good_fraction_tracks_independent_line_estimate() {
        // eight lines each good with probability ~ n!/n^n at n = 4; the
        // observed fraction stays within four binomial standard errors of
        // (n!/n^n)^(2n) under the hypothesized rate
        let trials = 100_000u64;
        let report = simulate_matrix(&cfg(4, Algorithm::Matrix, trials, 2024)).unwrap();
        let q = 24.0 / 256.0f64;
        let p = q.powi(8);
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((report.good_fraction - p).abs() <= 4.0 * se);
    }

    #[test]
    fn bucket_simulation_tracks_analytics_at_nine() {
        let config = cfg(9, Algorithm::Bucket, 100_000, 11);
        let report = simulate(&config).unwrap();
        let cb9 = rational_to_f64(&exact::expected_comparisons_bucket(9).unwrap());
        let delta = (report.comparisons.mean - cb9).abs();
        assert!(delta <= 4.0 * report.comparisons.standard_error);
    }
}
