//! Instrumented implementations of the four testing algorithms.
//!
//! Each algorithm decides whether its input is *good* (a sequence that is a
//! permutation of `1..=n`, or a matrix whose every row and column is one) and
//! tallies comparisons and assignments under a frozen per-line cost model.
//! Loop-control bookkeeping (`i <- i+1`, loop tests) is never counted.
//!
//! | algorithm | assignments counted at        | comparisons counted at |
//! |-----------|-------------------------------|------------------------|
//! | Linear    | lines 1, 3 (n of them), 8     | line 5                 |
//! | Backward  | lines 1, 5                    | line 4                 |
//! | Bucket    | lines 1, 2, 4 (m), 6, 9, 11, 12 | line 8               |
//! | Matrix    | line 1, plus nested Bucket    | nested Bucket          |
//!
//! Note the deliberate asymmetry inherited from the source analysis: Linear's
//! `g <- False` (line 6) is *not* counted, while Backward's line 5 and
//! Bucket's line 9 are. The closed-form `T_L = n + 1 + 2 C_L` charges the
//! final write like a line-8 assignment, so the analytic expected-assignment
//! figure for Linear exceeds the instrumented mean by exactly
//! `1 - n!/n^n`; see `analytics::counted_assignments_linear`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// The four testing algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Linear,
    Backward,
    Bucket,
    Matrix,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Linear,
        Algorithm::Backward,
        Algorithm::Bucket,
        Algorithm::Matrix,
    ];

    pub const SEQUENCE: [Algorithm; 3] =
        [Algorithm::Linear, Algorithm::Backward, Algorithm::Bucket];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algorithm::Linear => "linear",
            Algorithm::Backward => "backward",
            Algorithm::Bucket => "bucket",
            Algorithm::Matrix => "matrix",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Algorithm {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, InputError> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(Algorithm::Linear),
            "backward" => Ok(Algorithm::Backward),
            "bucket" => Ok(Algorithm::Bucket),
            "matrix" => Ok(Algorithm::Matrix),
            other => Err(InputError::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Rejections on malformed input. Distinct from a `False` verdict: the
/// probability space only contains values in `[1, n]`, so malformed input
/// must never masquerade as a bad realization.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("n must be positive")]
    ZeroLength,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value {value} at position {index} is outside [1, {n}]")]
    ValueOutOfRange {
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("unknown algorithm `{0}` (expected linear, backward, bucket or matrix)")]
    UnknownAlgorithm(String),
}

/// An ordered list of `n` integers, each in `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    n: usize,
    values: Vec<usize>,
}

impl Sequence {
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self, InputError> {
        if n == 0 {
            return Err(InputError::ZeroLength);
        }
        if values.len() != n {
            return Err(InputError::LengthMismatch {
                expected: n,
                got: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if value < 1 || value > n {
                return Err(InputError::ValueOutOfRange { index, value, n });
            }
        }
        Ok(Sequence { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// An n×n matrix of integers in `[1, n]`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    cells: Vec<usize>,
}

impl SquareMatrix {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, InputError> {
        if n == 0 {
            return Err(InputError::ZeroLength);
        }
        if cells.len() != n * n {
            return Err(InputError::LengthMismatch {
                expected: n * n,
                got: cells.len(),
            });
        }
        for (index, &value) in cells.iter().enumerate() {
            if value < 1 || value > n {
                return Err(InputError::ValueOutOfRange { index, value, n });
            }
        }
        Ok(SquareMatrix { n, cells })
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, InputError> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(InputError::LengthMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        SquareMatrix::new(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Row `i` (1-based) as a sequence view.
    pub fn row(&self, i: usize) -> &[usize] {
        assert!(i >= 1 && i <= self.n);
        &self.cells[(i - 1) * self.n..i * self.n]
    }

    /// Column `j` (1-based), copied out in top-to-bottom order.
    pub fn column(&self, j: usize) -> Vec<usize> {
        assert!(j >= 1 && j <= self.n);
        (0..self.n)
            .map(|i| self.cells[i * self.n + j - 1])
            .collect()
    }
}

/// Exact tallies of counted comparisons and assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CostCounters {
    pub comparisons: u64,
    pub assignments: u64,
}

impl CostCounters {
    pub fn total(&self) -> u64 {
        self.comparisons + self.assignments
    }

    fn compare(&mut self) {
        self.comparisons += 1;
    }

    fn assign(&mut self, count: u64) {
        self.assignments += count;
    }
}

/// Which pass of `matrix_test` a stop position refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Row,
    Column,
}

/// Where a run stopped consuming input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopPosition {
    /// Number of sequence elements consumed (in `[1, n]`).
    Element(usize),
    /// For matrices: the line being scanned and the element within it when
    /// the run returned.
    MatrixCell {
        phase: Phase,
        line: usize,
        element: usize,
    },
}

impl StopPosition {
    /// The element index for sequence outcomes; panics on matrix outcomes.
    pub fn element(&self) -> usize {
        match self {
            StopPosition::Element(k) => *k,
            StopPosition::MatrixCell { .. } => panic!("matrix stop position"),
        }
    }
}

/// Verdict, counters and stop position of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub good: bool,
    pub counters: CostCounters,
    pub stop: StopPosition,
}

/// Runs the sequence algorithm named by `algorithm`; `Matrix` is rejected.
pub fn sequence_test(algorithm: Algorithm, s: &Sequence) -> TestOutcome {
    match algorithm {
        Algorithm::Linear => linear_test(s),
        Algorithm::Backward => backward_test(s),
        Algorithm::Bucket => bucket_test(s),
        Algorithm::Matrix => panic!("matrix_test requires a SquareMatrix"),
    }
}

/// Scans left to right, marking seen values in a zeroed table.
pub fn linear_test(s: &Sequence) -> TestOutcome {
    let (good, counters, stop) = linear_raw(s.n, &s.values);
    TestOutcome {
        good,
        counters,
        stop: StopPosition::Element(stop),
    }
}

pub(crate) fn linear_raw(n: usize, values: &[usize]) -> (bool, CostCounters, usize) {
    let mut counters = CostCounters::default();
    counters.assign(1); // line 1: g <- True
    counters.assign(n as u64); // line 3: v_i <- 0
    let mut v = vec![0u8; n + 1];
    for (i, &x) in values.iter().enumerate() {
        counters.compare(); // line 5: v_{s_i} > 0
        if v[x] > 0 {
            // line 6 (g <- False) is uncounted; see the module table.
            return (false, counters, i + 1);
        }
        counters.assign(1); // line 8: v_{s_i} <- v_{s_i} + 1
        v[x] = 1;
    }
    (true, counters, n)
}

/// Compares each element against all earlier ones, most recent first.
pub fn backward_test(s: &Sequence) -> TestOutcome {
    let (good, counters, stop) = backward_raw(s.n, &s.values);
    TestOutcome {
        good,
        counters,
        stop: StopPosition::Element(stop),
    }
}

pub(crate) fn backward_raw(n: usize, values: &[usize]) -> (bool, CostCounters, usize) {
    let mut counters = CostCounters::default();
    counters.assign(1); // line 1: g <- True
    for i in 1..n {
        for j in (0..i).rev() {
            counters.compare(); // line 4: s_i = s_j
            if values[i] == values[j] {
                counters.assign(1); // line 5: g <- False
                return (false, counters, i + 1);
            }
        }
    }
    (true, counters, n)
}

pub(crate) fn ceil_sqrt(n: usize) -> usize {
    let mut m = (n as f64).sqrt() as usize;
    while m * m < n {
        m += 1;
    }
    while m > 1 && (m - 1) * (m - 1) >= n {
        m -= 1;
    }
    m
}

/// Routes each element to bucket `ceil(s_i / m)` with `m = ceil(sqrt(n))`
/// and searches the bucket linearly.
pub fn bucket_test(s: &Sequence) -> TestOutcome {
    let mut counters = CostCounters::default();
    let (good, stop) = bucket_raw(s.n, &s.values, &mut counters);
    TestOutcome {
        good,
        counters,
        stop: StopPosition::Element(stop),
    }
}

pub(crate) fn bucket_raw(n: usize, values: &[usize], counters: &mut CostCounters) -> (bool, usize) {
    counters.assign(1); // line 1: g <- True
    let m = ceil_sqrt(n);
    counters.assign(1); // line 2: m <- sqrt(n)
    counters.assign(m as u64); // line 4: c_j <- 1
                               // c_j starts at 1 as in the pseudocode, so bucket occupancy is c_j - 1
                               // and the line-7 loop bound c_r - 1 is literal.
    let mut c = vec![1usize; m + 1];
    let mut q = vec![0usize; (m + 1) * (m + 1)];
    for (i, &x) in values.iter().enumerate() {
        let r = x.div_ceil(m);
        counters.assign(1); // line 6: r <- ceil(s_i / m)
        for j in 1..c[r] {
            counters.compare(); // line 8: s_i = Q_{r,j}
            if x == q[r * (m + 1) + j] {
                counters.assign(1); // line 9: g <- False
                return (false, i + 1);
            }
        }
        q[r * (m + 1) + c[r]] = x;
        counters.assign(1); // line 11: Q_{r,c_r} <- s_i
        c[r] += 1;
        counters.assign(1); // line 12: c_r <- c_r + 1
    }
    (true, n)
}

/// Bucket-tests row 1, rows 2..n, then every column, stopping at the first
/// bad line. Overlap cells are scanned once per line, so an all-good matrix
/// reads every cell twice.
pub fn matrix_test(mat: &SquareMatrix) -> TestOutcome {
    let n = mat.n;
    let mut counters = CostCounters::default();
    counters.assign(1); // line 1: g <- True
    for i in 1..=n {
        let (good, stop) = bucket_raw(n, mat.row(i), &mut counters);
        if !good {
            return TestOutcome {
                good: false,
                counters,
                stop: StopPosition::MatrixCell {
                    phase: Phase::Row,
                    line: i,
                    element: stop,
                },
            };
        }
    }
    let mut buf = vec![0usize; n];
    for j in 1..=n {
        for (i, slot) in buf.iter_mut().enumerate() {
            *slot = mat.cells[i * n + j - 1];
        }
        let (good, stop) = bucket_raw(n, &buf, &mut counters);
        if !good {
            return TestOutcome {
                good: false,
                counters,
                stop: StopPosition::MatrixCell {
                    phase: Phase::Column,
                    line: j,
                    element: stop,
                },
            };
        }
    }
    TestOutcome {
        good: true,
        counters,
        stop: StopPosition::MatrixCell {
            phase: Phase::Column,
            line: n,
            element: n,
        },
    }
}
