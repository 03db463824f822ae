//! The matrix running-time bracket: the row phase costs exactly
//! T_B Σ q^k, columns only carry a bound, so the expected total is reported
//! as an interval — and simulation lands inside it.

use distinctseq::algorithms::Algorithm;
use distinctseq::analytics::{exact, rational_to_f64};
use distinctseq::simulation::{simulate_matrix, SimulationConfig};

fn main() {
    for (n, trials) in [(4usize, 100_000u64), (16, 50_000), (100, 20_000)] {
        let interval = exact::expected_time_matrix(n).unwrap();
        let lower = rational_to_f64(&interval.lower);
        let upper = rational_to_f64(&interval.upper);
        let sim = simulate_matrix(&SimulationConfig {
            n,
            algorithm: Algorithm::Matrix,
            trials,
            seed: 42,
        })
        .unwrap();
        let inside = sim.total.mean >= lower - 4.0 * sim.total.standard_error
            && sim.total.mean <= upper + 4.0 * sim.total.standard_error;
        println!(
            "n={n:<3} interval [{lower:.6}, {upper:.6}] width/lower = {:.2e}",
            (upper - lower) / lower
        );
        println!(
            "      simulated mean total = {:.6} +- {:.6} ({} trials) inside: {inside}",
            sim.total.mean, sim.total.standard_error, sim.trials
        );
    }
}
