//! Seeded Monte Carlo estimation next to the closed-form predictions, plus
//! the batch-partition contract that keeps parallel runs reproducible.

use distinctseq::algorithms::Algorithm;
use distinctseq::analytics::{exact, rational_to_f64};
use distinctseq::simulation::{
    batch_count, report_from_partial, simulate, simulate_batch_range, SimulationConfig,
};

fn main() {
    let config = SimulationConfig {
        n: 10,
        algorithm: Algorithm::Linear,
        trials: 1_000_000,
        seed: 42,
    };
    let report = simulate(&config).unwrap();
    let predicted = rational_to_f64(&exact::expected_comparisons_linear(10).unwrap());
    println!(
        "linear n=10, 10^6 trials, seed 42: mean comparisons {:.6} +- {:.6} (C_L = {:.6})",
        report.comparisons.mean, report.comparisons.standard_error, predicted
    );

    let config = SimulationConfig {
        n: 9,
        algorithm: Algorithm::Bucket,
        trials: 200_000,
        seed: 7,
    };
    let report = simulate(&config).unwrap();
    let predicted = rational_to_f64(&exact::expected_comparisons_bucket(9).unwrap());
    println!(
        "bucket n=9: mean comparisons {:.6} (C_B = {:.6}), good fraction {:.6}",
        report.comparisons.mean, predicted, report.good_fraction
    );

    // the same trials split across two "workers" merge to the identical report
    let batches = batch_count(config.trials);
    let first = simulate_batch_range(&config, 0..batches / 2).unwrap();
    let second = simulate_batch_range(&config, batches / 2..batches).unwrap();
    let merged = report_from_partial(&config, &first.merge(&second));
    println!(
        "partitioned run identical to sequential: {}",
        merged == report
    );
}
