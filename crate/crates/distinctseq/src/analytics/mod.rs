//! Closed-form expected costs and their error terms.
//!
//! `exact` holds the rational-arithmetic formulas (zero rounding), while
//! `error_terms` evaluates the irrational quantities at 48 fractional digits.
//! [`ExactValue`] carries either kind to renderers and reports.

pub mod error_terms;
pub mod exact;

pub use error_terms::ErrorTermReport;
pub use exact::{AnalyticsError, MatrixTimeInterval};

use crate::algorithms::Algorithm;
use crate::hp::Hp;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An arbitrary-precision rational or a tracked-precision decimal.
#[derive(Debug, Clone)]
pub enum ExactValue {
    Rational(BigRational),
    Decimal(Hp),
}

impl ExactValue {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactValue::Rational(r) => Some(r),
            ExactValue::Decimal(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rational(r) => rational_to_f64(r),
            ExactValue::Decimal(h) => h.to_f64(),
        }
    }

    /// Decimal rendering with round-half-even at `digits` fractional digits.
    pub fn render(&self, digits: u32) -> String {
        match self {
            ExactValue::Rational(r) => render_rational(r, digits),
            ExactValue::Decimal(h) => h.render(digits),
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(6))
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: go through a scaled quotient
        let scaled = (r.numer() * BigInt::from(10u64).pow(18)) / r.denom();
        scaled.to_f64().unwrap_or(f64::NAN) / 1e18
    })
}

/// Renders a rational as a fixed-point decimal, round-half-even.
pub fn render_rational(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled_num = r.numer().abs() * &scale;
    let den = r.denom().abs();
    let (mut q, rem) = scaled_num.div_rem(&den);
    let twice: BigInt = &rem * BigInt::from(2);
    match twice.cmp(&den) {
        Ordering::Greater => q += 1,
        Ordering::Equal => {
            if q.is_odd() {
                q += 1;
            }
        }
        Ordering::Less => {}
    }
    let neg = r.numer().is_negative() && !q.is_zero();
    let (int_part, frac_part) = q.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}

/// Expected comparisons, assignments and running time of one algorithm
/// under the frozen cost model; `expected_time` always equals the sum of
/// the other two.
#[derive(Debug, Clone)]
pub struct ExpectedCostReport {
    pub n: usize,
    pub algorithm: Algorithm,
    pub expected_comparisons: ExactValue,
    pub expected_assignments: ExactValue,
    pub expected_time: ExactValue,
}

impl ExpectedCostReport {
    /// Closed-form costs. `Bucket` requires a perfect square; `Matrix`
    /// reports the interval midpoint-free lower bound (see
    /// [`exact::expected_time_matrix`] for the bracket).
    pub fn compute(n: usize, algorithm: Algorithm) -> Result<Self, AnalyticsError> {
        let (c, a) = match algorithm {
            Algorithm::Linear => (
                exact::expected_comparisons_linear(n)?,
                exact::expected_assignments_linear(n)?,
            ),
            Algorithm::Backward => (
                exact::expected_comparisons_backward(n)?,
                exact::expected_assignments_backward(n)?,
            ),
            Algorithm::Bucket => (
                exact::expected_comparisons_bucket(n)?,
                exact::expected_assignments_bucket(n)?,
            ),
            Algorithm::Matrix => {
                return Err(AnalyticsError::MatrixTimeIsInterval);
            }
        };
        let t = c.clone() + a.clone();
        Ok(ExpectedCostReport {
            n,
            algorithm,
            expected_comparisons: ExactValue::Rational(c),
            expected_assignments: ExactValue::Rational(a),
            expected_time: ExactValue::Rational(t),
        })
    }
}

/// Theil–Sen estimate (median of pairwise slopes) of the log-log exponent
/// of `values` against `ns`. The robust estimator keeps the small-n
/// curvature of the closed forms from dragging the estimate the way an
/// ordinary least-squares fit does.
pub fn log_log_exponent(ns: &[usize], values: &[f64]) -> f64 {
    assert_eq!(ns.len(), values.len());
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|&v| v.ln()).collect();
    let mut slopes = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            slopes.push((ys[j] - ys[i]) / (xs[j] - xs[i]));
        }
    }
    slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let k = slopes.len();
    if k % 2 == 1 {
        slopes[k / 2]
    } else {
        (slopes[k / 2 - 1] + slopes[k / 2]) / 2.0
    }
}

/// The asymptotic grid used for Θ-exponent estimates.
pub const EXPONENT_GRID: [usize; 6] = [4, 16, 64, 256, 1024, 4096];

/// Expected comparisons over the grid for one algorithm (high precision).
pub fn comparisons_over_grid(algorithm: Algorithm) -> Vec<f64> {
    EXPONENT_GRID
        .iter()
        .map(|&n| match algorithm {
            Algorithm::Linear => error_terms::linear_comparisons_hp(n).to_f64(),
            Algorithm::Backward => error_terms::backward_comparisons_hp(n).to_f64(),
            Algorithm::Bucket => error_terms::bucket_comparisons_hp(n).to_f64(),
            Algorithm::Matrix => (error_terms::bucket_comparisons_hp(n)
                * error_terms::geometric_factorial_ratio_sum_hp(n))
            .to_f64(),
        })
        .collect()
}

/// Expected running time over the grid (high precision; Matrix uses the
/// row-phase value plus the line-1 assignment).
pub fn time_over_grid(algorithm: Algorithm) -> Vec<f64> {
    EXPONENT_GRID
        .iter()
        .map(|&n| match algorithm {
            Algorithm::Linear => {
                (n as f64) + 1.0 + 2.0 * error_terms::linear_comparisons_hp(n).to_f64()
            }
            Algorithm::Backward => {
                error_terms::backward_comparisons_hp(n).to_f64() + 2.0
                    - error_terms::factorial_ratio_hp(n).to_f64()
            }
            Algorithm::Bucket => error_terms::bucket_time_hp(n).to_f64(),
            Algorithm::Matrix => (crate::hp::Hp::one()
                + error_terms::bucket_time_hp(n)
                    * error_terms::geometric_factorial_ratio_sum_hp(n))
            .to_f64(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_rational_bankers_rounding() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(render_rational(&half, 0), "0");
        let r = BigRational::new(BigInt::from(25), BigInt::from(1000));
        assert_eq!(render_rational(&r, 2), "0.02");
        let r = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert_eq!(render_rational(&r, 6), "-0.333333");
        let r = BigRational::new(BigInt::from(53), BigInt::from(32));
        assert_eq!(render_rational(&r, 6), "1.656250");
    }

    #[test]
    fn report_time_is_sum_of_parts() {
        for alg in [Algorithm::Linear, Algorithm::Backward] {
            for n in [1usize, 2, 7, 30] {
                let rep = ExpectedCostReport::compute(n, alg).unwrap();
                let c = rep.expected_comparisons.as_rational().unwrap();
                let a = rep.expected_assignments.as_rational().unwrap();
                let t = rep.expected_time.as_rational().unwrap();
                assert_eq!(c + a, t.clone());
            }
        }
        let rep = ExpectedCostReport::compute(4, Algorithm::Bucket).unwrap();
        assert_eq!(rep.expected_time.render(6), "14.125000");
        assert!(ExpectedCostReport::compute(5, Algorithm::Bucket).is_err());
    }

    #[test]
    fn exponent_estimates_sit_near_their_classes() {
        let est = log_log_exponent(&EXPONENT_GRID, &comparisons_over_grid(Algorithm::Linear));
        assert!((est - 0.4729).abs() < 1e-3, "{est}");
        let est = log_log_exponent(&EXPONENT_GRID, &comparisons_over_grid(Algorithm::Backward));
        assert!((est - 1.0250).abs() < 1e-3, "{est}");
    }
}
