//! Exhaustive ground truth: run an algorithm on every one of the n^n
//! equally likely sequences (or every n^(n²) matrix) and report exact
//! rational expectations.
//!
//! Enumeration is lexicographic and can be partitioned into disjoint index
//! ranges whose integer partial sums merge associatively, so a partitioned
//! run is bit-identical to the single-threaded one.

use crate::algorithms::{self, Algorithm, CostCounters, Sequence, SquareMatrix};
use crate::analytics::exact;
use num::rational::BigRational;
use num::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

/// Default enumeration budget: at most 10^8 algorithm runs.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n must be positive")]
    NonPositive,
    #[error("enumeration needs {needed} runs, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

/// Exact expectations over the uniform input space.
#[derive(Debug, Clone)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub algorithm: Algorithm,
    /// Exactly n^n (or n^(n²) for Matrix); asserted during enumeration.
    pub runs: u128,
    pub mean_comparisons: BigRational,
    pub mean_assignments: BigRational,
    pub mean_total: BigRational,
    /// Pr{y = k} for the distinct-prefix length y; `None` for Matrix.
    pub stop_distribution: Option<BTreeMap<usize, BigRational>>,
    pub good_probability: BigRational,
}

/// Integer partial sums over a slice of the enumeration; merged by addition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialSums {
    pub runs: u128,
    pub comparisons: u128,
    pub assignments: u128,
    pub good: u128,
    /// Count of inputs with distinct-prefix length y = k (index k-1).
    pub stop_counts: Vec<u128>,
}

impl PartialSums {
    fn new(n: usize) -> Self {
        PartialSums {
            stop_counts: vec![0; n],
            ..Default::default()
        }
    }

    pub fn merge(mut self, other: &PartialSums) -> PartialSums {
        self.runs += other.runs;
        self.comparisons += other.comparisons;
        self.assignments += other.assignments;
        self.good += other.good;
        if self.stop_counts.len() < other.stop_counts.len() {
            self.stop_counts.resize(other.stop_counts.len(), 0);
        }
        for (acc, v) in self.stop_counts.iter_mut().zip(&other.stop_counts) {
            *acc += v;
        }
        self
    }

    fn record(&mut self, counters: &CostCounters, good: bool, y: usize) {
        self.runs += 1;
        self.comparisons += counters.comparisons as u128;
        self.assignments += counters.assignments as u128;
        if good {
            self.good += 1;
        }
        if y > 0 {
            self.stop_counts[y - 1] += 1;
        }
    }
}

fn checked_pow(n: usize, exp: u32, budget: u128) -> Result<u128, OracleError> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(n as u128)
            .ok_or(OracleError::BudgetExceeded {
                needed: u128::MAX,
                budget,
            })?;
        if acc > budget {
            return Err(OracleError::BudgetExceeded {
                needed: acc,
                budget,
            });
        }
    }
    Ok(acc)
}

/// Number of runs an exhaustive pass needs: n^n, or n^(n²) for Matrix.
pub fn runs_needed(n: usize, algorithm: Algorithm, budget: u128) -> Result<u128, OracleError> {
    if n == 0 {
        return Err(OracleError::NonPositive);
    }
    let exp = match algorithm {
        Algorithm::Matrix => (n * n) as u32,
        _ => n as u32,
    };
    checked_pow(n, exp, budget)
}

/// Distinct-prefix length of `values` (y in the stopping-time law).
fn distinct_prefix_len(n: usize, values: &[usize]) -> usize {
    let mut seen = vec![false; n + 1];
    for (i, &v) in values.iter().enumerate() {
        if seen[v] {
            return i;
        }
        seen[v] = true;
    }
    values.len()
}

/// Decodes enumeration index -> digits (values 1..=n), lexicographic order,
/// then walks the range with an odometer.
fn for_each_input<F: FnMut(&[usize])>(
    n: usize,
    digits: usize,
    start: u128,
    end: u128,
    mut visit: F,
) {
    if start >= end {
        return;
    }
    let mut values = vec![1usize; digits];
    let mut rest = start;
    for pos in (0..digits).rev() {
        values[pos] = (rest % n as u128) as usize + 1;
        rest /= n as u128;
    }
    let mut idx = start;
    loop {
        visit(&values);
        idx += 1;
        if idx >= end {
            break;
        }
        // lexicographic odometer: bump the last digit, carry leftwards
        let mut pos = digits - 1;
        loop {
            if values[pos] < n {
                values[pos] += 1;
                break;
            }
            values[pos] = 1;
            pos -= 1;
        }
    }
}

/// Enumerates the index range `[start, end)` for one algorithm.
pub fn enumerate_range(n: usize, algorithm: Algorithm, start: u128, end: u128) -> PartialSums {
    let mut sums = PartialSums::new(n);
    match algorithm {
        Algorithm::Matrix => {
            for_each_input(n, n * n, start, end, |cells| {
                let matrix = SquareMatrix::new(n, cells.to_vec()).expect("enumerated cells valid");
                let outcome = algorithms::matrix_test(&matrix);
                sums.record(&outcome.counters, outcome.good, 0);
            });
        }
        _ => {
            for_each_input(n, n, start, end, |values| {
                let (good, c) = match algorithm {
                    Algorithm::Linear => {
                        let (good, c, _) = algorithms::linear_raw(n, values);
                        (good, c)
                    }
                    Algorithm::Backward => {
                        let (good, c, _) = algorithms::backward_raw(n, values);
                        (good, c)
                    }
                    Algorithm::Bucket => {
                        let mut counters = CostCounters::default();
                        let (good, _) = algorithms::bucket_raw(n, values, &mut counters);
                        (good, counters)
                    }
                    Algorithm::Matrix => unreachable!(),
                };
                let y = distinct_prefix_len(n, values);
                sums.record(&c, good, y);
            });
        }
    }
    sums
}

/// Exact expectation by full enumeration, refusing if the run count would
/// exceed `budget`. Never falls back to sampling.
pub fn exhaustive_expectation(
    n: usize,
    algorithm: Algorithm,
    budget: u128,
) -> Result<ExhaustiveReport, OracleError> {
    let total = runs_needed(n, algorithm, budget)?;
    let sums = enumerate_range(n, algorithm, 0, total);
    Ok(report_from_sums(n, algorithm, total, sums))
}

/// Builds the report from (possibly merged) partial sums covering the whole
/// space.
pub fn report_from_sums(
    n: usize,
    algorithm: Algorithm,
    expected_runs: u128,
    sums: PartialSums,
) -> ExhaustiveReport {
    assert_eq!(sums.runs, expected_runs, "enumeration run count mismatch");
    let denom = BigInt::from(sums.runs);
    let frac = |v: u128| BigRational::new(BigInt::from(v), denom.clone());
    let stop_distribution = if algorithm == Algorithm::Matrix {
        None
    } else {
        Some(
            sums.stop_counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i + 1, frac(c)))
                .collect(),
        )
    };
    ExhaustiveReport {
        n,
        algorithm,
        runs: sums.runs,
        mean_comparisons: frac(sums.comparisons),
        mean_assignments: frac(sums.assignments),
        mean_total: frac(sums.comparisons + sums.assignments),
        stop_distribution,
        good_probability: frac(sums.good),
    }
}

/// True iff the enumerated distribution of the distinct-prefix length equals
/// p_k exactly for every k.
pub fn stop_distribution_check(n: usize, budget: u128) -> Result<bool, OracleError> {
    let report = exhaustive_expectation(n, Algorithm::Linear, budget)?;
    let dist = report.stop_distribution.as_ref().expect("sequence oracle");
    for k in 1..=n {
        let expected = exact::p_k(n, k).expect("valid k");
        match dist.get(&k) {
            Some(p) if *p == expected => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// True iff, conditioned on y = k < n, the index of the earlier element
/// equal to s_{k+1} is uniform on 1..=k: every (k, q) pair occurs equally
/// often in the enumeration.
pub fn first_repeat_position_uniformity(n: usize, budget: u128) -> Result<bool, OracleError> {
    if n == 0 {
        return Err(OracleError::NonPositive);
    }
    let total = checked_pow(n, n as u32, budget)?;
    // counts[k-1][q-1] over bad inputs with distinct prefix length k
    let mut counts = vec![vec![0u128; n]; n];
    for_each_input(n, n, 0, total, |values| {
        let mut first_at = vec![0usize; n + 1];
        for (i, &v) in values.iter().enumerate() {
            if first_at[v] != 0 {
                let k = i; // distinct prefix length
                let q = first_at[v];
                counts[k - 1][q - 1] += 1;
                return;
            }
            first_at[v] = i + 1;
        }
    });
    for k in 1..n {
        let row = &counts[k - 1];
        let first = row[0];
        if row[..k].iter().any(|&c| c != first) {
            return Ok(false);
        }
        if row[k..].iter().any(|&c| c != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience wrapper taking a `Sequence` for callers that already have one.
pub fn distinct_prefix_length(s: &Sequence) -> usize {
    distinct_prefix_len(s.n(), s.values())
}
