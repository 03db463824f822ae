//! Tests whether random sequences — and every row and column of random
//! matrices — are permutations of `1..=n`, counting each algorithm's
//! comparisons and assignments under an exact per-line cost model, and
//! evaluates the matching closed-form expected costs with exact rational
//! and high-precision arithmetic, cross-validated by an exhaustive oracle
//! and reproducible Monte Carlo simulation.
//!
//! The crate is organized around five areas:
//!
//! - [`algorithms`]: the instrumented Linear, Backward, Bucket and Matrix
//!   tests.
//! - [`analytics`]: closed-form expected costs (`C_L`, `C_W`, `C_B`, `T_*`,
//!   Ramanujan's `Q`) and the error-term family (σ, τ, κ, δ, α, μ, η, ρ, φ,
//!   λ).
//! - [`oracle`]: exact expectations by full enumeration of the input space.
//! - [`simulation`]: seeded, merge-invariant Monte Carlo estimation.
//! - [`cli`]: the `distinctseq` command-line front end (`table`, `verify`,
//!   `run`, `simulate`).
//!
//! See the crate examples for one runnable entry point per capability.

pub mod algorithms;
pub mod analytics;
pub mod cli;
pub mod hp;
pub mod oracle;
pub mod simulation;

pub use algorithms::{
    backward_test, bucket_test, linear_test, matrix_test, Algorithm, CostCounters, InputError,
    Phase, Sequence, SquareMatrix, StopPosition, TestOutcome,
};
