//! Slow statistical tier: simulated means against exact oracle means over
//! many seeds. Run with `cargo test --test slow_statistical -- --ignored`.

use distinctseq::algorithms::Algorithm;
use distinctseq::analytics::rational_to_f64;
use distinctseq::oracle;
use distinctseq::simulation::{simulate, SimulationConfig};

/// For n in {2,3,4,5}, simulated mean comparisons should land within 4
/// standard errors of the exact mean for at least 99 of 100 fixed seeds.
#[test]
#[ignore = "statistical tier: ~100 x 4 x 3 simulations"]
fn simulated_means_track_oracle_over_100_seeds() {
    let algorithms = [Algorithm::Linear, Algorithm::Backward, Algorithm::Bucket];
    let mut exact = Vec::new();
    for n in 2..=5usize {
        for alg in algorithms {
            let mean = rational_to_f64(
                &oracle::exhaustive_expectation(n, alg, oracle::DEFAULT_BUDGET)
                    .unwrap()
                    .mean_comparisons,
            );
            exact.push(((n, alg), mean));
        }
    }
    let mut passing_seeds = 0;
    for seed in 0..100u64 {
        let mut seed_ok = true;
        for ((n, alg), exact_mean) in &exact {
            let report = simulate(&SimulationConfig {
                n: *n,
                algorithm: *alg,
                trials: 20_000,
                seed,
            })
            .unwrap();
            let delta = (report.comparisons.mean - exact_mean).abs();
            seed_ok &= delta <= 4.0 * report.comparisons.standard_error;
        }
        passing_seeds += seed_ok as usize;
    }
    assert!(passing_seeds >= 99, "only {passing_seeds}/100 seeds passed");
}
