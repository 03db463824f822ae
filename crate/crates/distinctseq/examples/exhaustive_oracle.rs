//! Exhaustive enumeration as ground truth: exact rational means at n = 4,
//! the stopping-length distribution against p_k, and a partitioned run
//! merged back bit-identically.

use distinctseq::algorithms::Algorithm;
use distinctseq::analytics::{exact, render_rational};
use distinctseq::oracle;

fn main() {
    let n = 4;
    let budget = oracle::DEFAULT_BUDGET;
    for alg in Algorithm::SEQUENCE {
        let report = oracle::exhaustive_expectation(n, alg, budget).unwrap();
        println!(
            "{alg:<8} n={n}: runs={} mean comparisons = {} = {}",
            report.runs,
            report.mean_comparisons,
            render_rational(&report.mean_comparisons, 6),
        );
    }

    let report = oracle::exhaustive_expectation(n, Algorithm::Linear, budget).unwrap();
    println!("\nstopping-length distribution vs p_k:");
    for (k, prob) in report.stop_distribution.as_ref().unwrap() {
        let pk = exact::p_k(n, *k).unwrap();
        println!(
            "  Pr{{y={k}}} = {prob} (p_k = {pk}, equal: {})",
            *prob == pk
        );
    }
    println!(
        "good probability = {} = n!/n^n: {}",
        report.good_probability,
        report.good_probability == exact::factorial_ratio(n).unwrap()
    );

    // disjoint ranges merge to the identical report
    let total = oracle::runs_needed(n, Algorithm::Bucket, budget).unwrap();
    let merged = oracle::enumerate_range(n, Algorithm::Bucket, 0, total / 2).merge(
        &oracle::enumerate_range(n, Algorithm::Bucket, total / 2, total),
    );
    let partitioned = oracle::report_from_sums(n, Algorithm::Bucket, total, merged);
    let whole = oracle::exhaustive_expectation(n, Algorithm::Bucket, budget).unwrap();
    println!(
        "\npartitioned bucket run matches the sequential one: {}",
        partitioned.mean_total == whole.mean_total
    );

    // the oracle refuses over-budget requests instead of sampling
    let refusal = oracle::exhaustive_expectation(9, Algorithm::Linear, budget).unwrap_err();
    println!("budget refusal: {refusal}");
}
