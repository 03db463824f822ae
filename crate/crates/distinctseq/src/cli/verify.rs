//! The `verify` command: runs the identity suite at two depths and reports
//! one pass/fail line per check.
//!
//! `fast` covers exact oracle/analytics agreement to n = 4 and the
//! monotonicity suite to n = 100. `full` extends the oracle to n = 6, adds
//! the 10^6-trial Monte Carlo tier, the Knuth Q-series cross-check, the
//! Stirling bracket and monotonicity to n = 10^4, the Θ-exponent estimates
//! and the matrix running-time intervals.

use crate::algorithms::Algorithm;
use crate::analytics::error_terms as et;
use crate::analytics::{
    comparisons_over_grid, exact, log_log_exponent, rational_to_f64, EXPONENT_GRID,
};
use crate::hp::{self, Hp};
use crate::oracle;
use crate::simulation::{self, SimulationConfig};
use num::rational::BigRational;
use num::One;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Fast,
    Full,
}

impl std::str::FromStr for VerifyLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "fast" => Ok(VerifyLevel::Fast),
            "full" => Ok(VerifyLevel::Full),
            other => Err(format!("unknown level `{other}` (expected fast or full)")),
        }
    }
}

/// One checked identity.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

struct Suite {
    checks: Vec<CheckResult>,
    budget: u128,
}

impl Suite {
    fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

fn r(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn oracle_agreement(suite: &mut Suite, n_max: usize) {
    for n in 1..=n_max {
        let lin = oracle::exhaustive_expectation(n, Algorithm::Linear, suite.budget);
        match lin {
            Ok(report) => {
                let want = exact::expected_comparisons_linear(n).unwrap();
                suite.push(
                    format!("oracle mean comparisons == C_L({n}) exactly"),
                    report.mean_comparisons == want,
                    crate::analytics::render_rational(&want, 6),
                );
                suite.push(
                    format!("oracle good probability == n!/n^n at n={n}"),
                    report.good_probability == exact::factorial_ratio(n).unwrap(),
                    String::new(),
                );
            }
            Err(e) => suite.push(format!("oracle C_L({n})"), false, e.to_string()),
        }
        match oracle::exhaustive_expectation(n, Algorithm::Backward, suite.budget) {
            Ok(report) => {
                let want = exact::expected_comparisons_backward(n).unwrap();
                suite.push(
                    format!("oracle mean comparisons == C_W({n}) exactly"),
                    report.mean_comparisons == want,
                    crate::analytics::render_rational(&want, 6),
                );
                suite.push(
                    format!("oracle mean assignments == 2 - n!/n^n at n={n}"),
                    report.mean_assignments == exact::expected_assignments_backward(n).unwrap(),
                    String::new(),
                );
            }
            Err(e) => suite.push(format!("oracle C_W({n})"), false, e.to_string()),
        }
    }
    for n in [1usize, 4] {
        match oracle::exhaustive_expectation(n, Algorithm::Bucket, suite.budget) {
            Ok(report) => {
                let want = exact::expected_comparisons_bucket(n).unwrap();
                suite.push(
                    format!("oracle mean comparisons == C_B({n}) exactly"),
                    report.mean_comparisons == want,
                    crate::analytics::render_rational(&want, 6),
                );
                suite.push(
                    format!("oracle mean assignments == A_B({n}) exactly"),
                    report.mean_assignments == exact::expected_assignments_bucket(n).unwrap(),
                    String::new(),
                );
            }
            Err(e) => suite.push(format!("oracle C_B({n})"), false, e.to_string()),
        }
    }
    // matrix oracle at n = 2: 16 matrices, frozen exact means
    match oracle::exhaustive_expectation(2, Algorithm::Matrix, suite.budget) {
        Ok(report) => {
            suite.push(
                "matrix oracle n=2: mean total ops == 83/4",
                report.mean_total == r(83, 4) && report.good_probability == r(1, 8),
                "mean 20.750000, good probability 1/8",
            );
        }
        Err(e) => suite.push("matrix oracle n=2", false, e.to_string()),
    }
}

fn stopping_law(suite: &mut Suite, n_max: usize) {
    for n in 1..=n_max {
        match oracle::stop_distribution_check(n, suite.budget) {
            Ok(ok) => suite.push(
                format!("stop distribution equals p_k exactly at n={n}"),
                ok,
                String::new(),
            ),
            Err(e) => suite.push(format!("stop distribution n={n}"), false, e.to_string()),
        }
    }
    for n in 1..=n_max.min(4) {
        match oracle::first_repeat_position_uniformity(n, suite.budget) {
            Ok(ok) => suite.push(
                format!("conditional first-repeat index uniform at n={n}"),
                ok,
                String::new(),
            ),
            Err(e) => suite.push(format!("repeat uniformity n={n}"), false, e.to_string()),
        }
    }
}

fn rational_identities(suite: &mut Suite) {
    let mut ok_pk = true;
    let mut ok_r0 = true;
    let mut ok_sum = true;
    let mut ok_r1s0 = true;
    let mut ok_q = true;
    let mut ok_tl = true;
    let mut ok_s1 = true;
    let mut ok_rec = true;
    for n in 1..=50usize {
        let total: BigRational = (1..=n).map(|k| exact::p_k(n, k).unwrap()).sum();
        ok_pk &= total == BigRational::one();
        ok_r0 &= exact::moment(n, 0).unwrap() == BigRational::one();
        let r1 = exact::moment(n, 1).unwrap();
        let r2 = exact::moment(n, 2).unwrap();
        ok_sum &= r1.clone() + r2 == BigRational::from_integer((2 * n as i64).into());
        let q = exact::factorial_ratio(n).unwrap();
        ok_r1s0 &= r1 == q.clone() * exact::power_sum(n, 0).unwrap();
        let cl = exact::expected_comparisons_linear(n).unwrap();
        ok_q &= cl.clone() - BigRational::one() + q == exact::q_ramanujan(n).unwrap();
        ok_tl &= exact::expected_time_linear(n).unwrap()
            == BigRational::from_integer((n as i64 + 1).into())
                + BigRational::from_integer(2.into()) * cl;
        let n_r = BigRational::from_integer((n as i64).into());
        let a_prev = BigRational::new(
            num::BigInt::from(n as u64).pow(n as u32 - 1),
            exact::factorial(n - 1),
        );
        ok_s1 &= exact::power_sum(n, 1).unwrap()
            == n_r.clone() * exact::power_sum(n, 0).unwrap() - n_r * a_prev;
        if n <= 25 {
            for i in 1..=4u32 {
                ok_rec &=
                    exact::power_sum_recurrence(n, i).unwrap() == exact::power_sum(n, i).unwrap();
            }
        }
    }
    suite.push("sum of p_k equals 1 for n=1..50", ok_pk, "");
    suite.push("R_0 = 1 for n=1..50", ok_r0, "");
    suite.push("R_1 + R_2 = 2n for n=1..50", ok_sum, "");
    suite.push("R_1 = (n!/n^n) S_0 for n=1..50", ok_r1s0, "");
    suite.push("C_L - 1 + n!/n^n = Q(n) for n=1..50", ok_q, "");
    suite.push("T_L = n + 1 + 2 C_L for n=1..50", ok_tl, "");
    suite.push("S_1 = n S_0 - n a_{n-1} for n=1..50", ok_s1, "");
    suite.push(
        "corrected S_i recurrence matches direct sums (i<=4, n<=25)",
        ok_rec,
        "",
    );
    let mut ok_eb = true;
    for m in 1..=10usize {
        let n = m * m;
        ok_eb &= exact::expected_bucket_occupancy(n).unwrap()
            == r(m as i64, n as i64) * exact::moment(n, 1).unwrap();
    }
    suite.push("E{b_1} = (m/n) R_1 on squares m=1..10", ok_eb, "");
}

fn monotonicity(suite: &mut Suite, n_max: usize) {
    let mut prev: Option<(Hp, Hp, Hp, Hp)> = None;
    let mut ok_kappa = true;
    let mut ok_sigma = true;
    let mut ok_alpha = true;
    let mut ok_mu = true;
    let mut ok_delta = true;
    let mut prev_delta: Option<Hp> = None;
    for n in 1..=n_max {
        let r1 = et::moment_hp(n, 1);
        let q = et::factorial_ratio_hp(n);
        let sqrt_n = Hp::from_u64(n as u64).sqrt();
        let kappa = r1.clone() - (hp::pi() * Hp::from_u64(n as u64).div_int(2)).sqrt()
            + Hp::from_ratio(1, 3);
        let n_hp = Hp::from_u64(n as u64);
        let x = (hp::ln_factorial(n) - n_hp.clone().ln().mul_int(n as i64) + n_hp).exp();
        let sigma = x.div_int(2) - r1 - Hp::from_ratio(1, 3);
        let alpha = kappa.clone().div_int(2) + q.clone().mul_int(n as i64 + 1).div_int(2);
        let mu = (Hp::from_ratio(1, 3) - kappa.clone()) / sqrt_n;
        if let Some((pk, ps, pa, pm)) = prev {
            ok_kappa &= pk > kappa;
            ok_sigma &= ps > sigma;
            ok_alpha &= pa > alpha;
            ok_mu &= pm > mu;
        }
        let delta = kappa.clone() - q;
        if let Some(pd) = prev_delta {
            if n <= 8 {
                ok_delta &= delta > pd;
            } else {
                ok_delta &= delta < pd;
            }
        }
        prev_delta = Some(delta);
        prev = Some((kappa, sigma, alpha, mu));
    }
    suite.push(
        format!("kappa strictly decreasing, n=1..{n_max}"),
        ok_kappa,
        "",
    );
    suite.push(
        format!("sigma strictly decreasing, n=1..{n_max}"),
        ok_sigma,
        "",
    );
    suite.push(
        format!("alpha strictly decreasing, n=1..{n_max}"),
        ok_alpha,
        "",
    );
    suite.push(format!("mu strictly decreasing, n=1..{n_max}"), ok_mu, "");
    suite.push(
        format!("delta rises through n=8 then falls, n=1..{n_max}"),
        ok_delta,
        "",
    );
    let mut ok_eta = true;
    let mut prev_eta: Option<Hp> = None;
    let mut m = 1usize;
    while m * m <= n_max {
        let eta = et::eta(m * m);
        if let Some(pe) = prev_eta {
            ok_eta &= pe > eta;
        }
        prev_eta = Some(eta);
        m += 1;
    }
    suite.push(
        format!("eta strictly decreasing on squares up to {n_max}"),
        ok_eta,
        "",
    );
    let mut ok_tau = true;
    for n in 1..=n_max {
        ok_tau &= et::stirling_bracket_holds(n);
    }
    suite.push(
        format!("Stirling bracket 1/(12n+1) < tau < 1/(12n), n=1..{n_max}"),
        ok_tau,
        "",
    );
}

fn monte_carlo_tier(suite: &mut Suite) {
    let trials = 1_000_000;
    let cases = [
        (10usize, Algorithm::Linear, "4.659853"),
        (10, Algorithm::Backward, "8.667896"),
    ];
    for (n, alg, printed) in cases {
        let config = SimulationConfig {
            n,
            algorithm: alg,
            trials,
            seed: 42,
        };
        let report = simulation::simulate(&config).unwrap();
        let target: f64 = printed.parse().unwrap();
        let delta = (report.comparisons.mean - target).abs();
        suite.push(
            format!("10^6-trial mean comparisons within 4 SE of {printed} ({alg}, n={n}, seed 42)"),
            delta <= 4.0 * report.comparisons.standard_error,
            format!(
                "mean {:.6}, SE {:.6}",
                report.comparisons.mean, report.comparisons.standard_error
            ),
        );
    }
    let config = SimulationConfig {
        n: 9,
        algorithm: Algorithm::Bucket,
        trials,
        seed: 42,
    };
    let report = simulation::simulate(&config).unwrap();
    let cb9 = rational_to_f64(&exact::expected_comparisons_bucket(9).unwrap());
    suite.push(
        "10^6-trial mean comparisons within 4 SE of C_B(9) (bucket, seed 42)",
        (report.comparisons.mean - cb9).abs() <= 4.0 * report.comparisons.standard_error,
        format!("mean {:.6} vs {:.6}", report.comparisons.mean, cb9),
    );
    let config = SimulationConfig {
        n: 2,
        algorithm: Algorithm::Matrix,
        trials,
        seed: 42,
    };
    let report = simulation::simulate_matrix(&config).unwrap();
    let exact_total = 83.0 / 4.0;
    suite.push(
        "10^6-trial matrix mean total within 4 SE of the n=2 oracle (20.75)",
        (report.total.mean - exact_total).abs() <= 4.0 * report.total.standard_error,
        format!("mean {:.6}", report.total.mean),
    );
}

fn matrix_intervals(suite: &mut Suite) {
    for (n, trials) in [(4usize, 200_000u64), (16, 100_000), (100, 50_000)] {
        let interval = exact::expected_time_matrix(n).unwrap();
        let config = SimulationConfig {
            n,
            algorithm: Algorithm::Matrix,
            trials,
            seed: 42,
        };
        let report = simulation::simulate_matrix(&config).unwrap();
        let lower = rational_to_f64(&interval.lower) - 4.0 * report.total.standard_error;
        let upper = rational_to_f64(&interval.upper) + 4.0 * report.total.standard_error;
        let mean = report.total.mean;
        suite.push(
            format!("matrix simulation inside the T_B interval at n={n} (4 SE widened)"),
            mean >= lower && mean <= upper,
            format!("mean {mean:.5} in [{lower:.5}, {upper:.5}]"),
        );
    }
    let interval = exact::expected_time_matrix(100).unwrap();
    let rel_width = rational_to_f64(
        &((interval.upper.clone() - interval.lower.clone()) / interval.lower.clone()),
    );
    suite.push(
        "matrix interval relative width below 1e-3 at n=100",
        rel_width < 1e-3,
        format!("width {rel_width:.3e}"),
    );
}

fn asymptotics(suite: &mut Suite) {
    let targets = [
        (Algorithm::Linear, 0.5),
        (Algorithm::Backward, 1.0),
        (Algorithm::Bucket, 0.5),
        (Algorithm::Matrix, 0.5),
    ];
    for (alg, target) in targets {
        let est = log_log_exponent(&EXPONENT_GRID, &comparisons_over_grid(alg));
        suite.push(
            format!("expected-comparison log-log exponent of {alg} within 0.03 of {target}"),
            (est - target).abs() <= 0.03,
            format!("estimate {est:.4}"),
        );
    }
    // worst cases at n = 64
    let n = 64usize;
    let perm: Vec<usize> = (1..=n).collect();
    let s = crate::algorithms::Sequence::new(n, perm).unwrap();
    let lin = crate::algorithms::linear_test(&s).counters.comparisons;
    let back = crate::algorithms::backward_test(&s).counters.comparisons;
    let bucket = crate::algorithms::bucket_test(&s).counters.comparisons;
    suite.push(
        "worst-case comparisons at n=64: n, B(n,2), m·B(m,2)",
        lin == 64 && back == 64 * 63 / 2 && bucket == 8 * (8 * 7 / 2),
        format!("{lin}, {back}, {bucket}"),
    );
}

fn knuth_series(suite: &mut Suite) {
    let n = 1000;
    let diff = (et::moment_hp(n, 1) - et::knuth_q_series(n)).abs();
    suite.push(
        "Knuth Q-series matches Q(1000) within 1e-4",
        diff < Hp::from_ratio(1, 10_000),
        format!("difference {}", diff.render(8)),
    );
}

/// Runs the requested tier and returns every check result.
pub fn run_verify(level: VerifyLevel, budget: u128) -> Vec<CheckResult> {
    let mut suite = Suite {
        checks: Vec::new(),
        budget,
    };
    match level {
        VerifyLevel::Fast => {
            oracle_agreement(&mut suite, 4);
            stopping_law(&mut suite, 4);
            rational_identities(&mut suite);
            monotonicity(&mut suite, 100);
        }
        VerifyLevel::Full => {
            oracle_agreement(&mut suite, 6);
            stopping_law(&mut suite, 5);
            rational_identities(&mut suite);
            monotonicity(&mut suite, 10_000);
            knuth_series(&mut suite);
            asymptotics(&mut suite);
            monte_carlo_tier(&mut suite);
            matrix_intervals(&mut suite);
        }
    }
    suite.checks
}

/// Formats the report; returns (text, all_passed).
pub fn format_report(checks: &[CheckResult]) -> (String, bool) {
    let mut out = String::new();
    let mut all = true;
    for check in checks {
        let mark = if check.pass { "PASS" } else { "FAIL" };
        all &= check.pass;
        if check.detail.is_empty() {
            out.push_str(&format!("{mark} {}\n", check.name));
        } else {
            out.push_str(&format!("{mark} {} [{}]\n", check.name, check.detail));
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    (out, all)
}
