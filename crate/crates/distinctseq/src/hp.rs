//! Fixed-point high-precision arithmetic for the decimal-mode quantities.
//!
//! Every value is a `BigInt` mantissa scaled by `10^SCALE`, giving 48
//! fractional digits. All quantities handled here have magnitude below
//! `10^6`, so this comfortably exceeds the 30 significant digits needed to
//! round 6-decimal table output correctly. Values smaller than `10^-48`
//! flush to zero; callers that care (only the `n!/n^n` tail at large `n`)
//! are documented at the call site.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// Fractional decimal digits carried by every [`Hp`] value.
pub const SCALE: u32 = 48;

fn unit() -> &'static BigInt {
    static UNIT: OnceLock<BigInt> = OnceLock::new();
    UNIT.get_or_init(|| BigInt::from(10u32).pow(SCALE))
}

/// Rounds `n / d` to the nearest integer, halves away from zero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = num::Integer::div_rem(n, d);
    if &r.abs() * 2 >= d.abs() {
        let bump =
            if (n.sign() == num::bigint::Sign::Minus) ^ (d.sign() == num::bigint::Sign::Minus) {
                -BigInt::one()
            } else {
                BigInt::one()
            };
        q + bump
    } else {
        q
    }
}

/// A fixed-point high-precision number: `mantissa / 10^SCALE`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hp(BigInt);

impl Hp {
    pub fn zero() -> Self {
        Hp(BigInt::zero())
    }

    pub fn one() -> Self {
        Hp(unit().clone())
    }

    pub fn from_u64(v: u64) -> Self {
        Hp(BigInt::from(v) * unit())
    }

    pub fn from_i64(v: i64) -> Self {
        Hp(BigInt::from(v) * unit())
    }

    /// `num / den` rounded to the working precision.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Hp(div_round(&(BigInt::from(num) * unit()), &BigInt::from(den)))
    }

    /// 10^e for -SCALE <= e; used for truncation thresholds.
    pub fn from_pow10(e: i32) -> Self {
        let shift = e + SCALE as i32;
        assert!(shift >= 0, "from_pow10 underflows the working precision");
        Hp(BigInt::from(10u32).pow(shift as u32))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Hp(div_round(&(r.numer() * unit()), r.denom()))
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.0.clone(), unit().clone())
    }

    pub fn to_f64(&self) -> f64 {
        // Mantissas here stay far below f64 range (|x| < 1e6 * 10^48).
        self.0.to_f64().unwrap_or(f64::NAN) / 10f64.powi(SCALE as i32)
    }

    pub fn abs(&self) -> Self {
        Hp(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Hp(&self.0 * BigInt::from(k))
    }

    pub fn div_int(&self, k: i64) -> Self {
        Hp(div_round(&self.0, &BigInt::from(k)))
    }

    /// Square root; requires a non-negative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.0.is_negative(), "hp sqrt of negative value");
        Hp((&self.0 * unit()).sqrt())
    }

    /// e^x. Arguments below -130 flush to zero (the result is < 10^-56).
    pub fn exp(&self) -> Self {
        if self.0 < BigInt::from(-130i64) * unit() {
            return Hp::zero();
        }
        // x = k + r with integer k and r in [0, 1).
        let k = num::Integer::div_floor(&self.0, unit())
            .to_i64()
            .expect("hp exp range");
        let r = Hp(&self.0 - BigInt::from(k) * unit());
        let mut term = Hp::one();
        let mut sum = Hp::one();
        let mut i = 1i64;
        while !term.is_zero() {
            term = term * r.clone();
            term = term.div_int(i);
            sum = sum + term.clone();
            i += 1;
        }
        sum * e().powi(k)
    }

    /// Natural logarithm; requires a positive value.
    pub fn ln(&self) -> Self {
        assert!(self.0.is_positive(), "hp ln of non-positive value");
        let mut x = self.clone();
        let mut j = 0i64;
        let three_halves = Hp::from_ratio(3, 2);
        let three_quarters = Hp::from_ratio(3, 4);
        while x >= three_halves {
            x = x.div_int(2);
            j += 1;
        }
        while x < three_quarters {
            x = x.mul_int(2);
            j -= 1;
        }
        // ln x = 2 atanh((x-1)/(x+1)) with |t| <= 1/5 on [3/4, 3/2).
        let t = (x.clone() - Hp::one()) / (x + Hp::one());
        let t2 = t.clone() * t.clone();
        let mut power = t;
        let mut sum = Hp::zero();
        let mut d = 1i64;
        while !power.is_zero() {
            sum = sum + power.div_int(d);
            power = power * t2.clone();
            d += 2;
        }
        sum.mul_int(2) + ln2().mul_int(j)
    }

    /// Integer power by squaring.
    pub fn powi(&self, k: i64) -> Self {
        if k == 0 {
            return Hp::one();
        }
        let mut base = if k < 0 {
            Hp::one() / self.clone()
        } else {
            self.clone()
        };
        let mut exp = k.unsigned_abs();
        let mut acc = Hp::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            exp >>= 1;
        }
        acc
    }

    /// Renders with `digits` fractional digits, round-half-even.
    pub fn render(&self, digits: u32) -> String {
        assert!(digits <= SCALE);
        let step = BigInt::from(10u32).pow(SCALE - digits);
        let neg = self.0.is_negative();
        let (mut q, r) = num::Integer::div_rem(&self.0.abs(), &step);
        let twice: BigInt = &r * BigInt::from(2);
        match twice.cmp(&step) {
            Ordering::Greater => q += 1,
            Ordering::Equal => {
                if num::Integer::is_odd(&q) {
                    q += 1;
                }
            }
            Ordering::Less => {}
        }
        let base = BigInt::from(10u32).pow(digits);
        let (int_part, frac_part) = num::Integer::div_rem(&q, &base);
        let sign = if neg && (!int_part.is_zero() || !frac_part.is_zero()) {
            "-"
        } else {
            ""
        };
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
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hp({})", self.render(30))
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(6))
    }
}

impl Add for Hp {
    type Output = Hp;
    fn add(self, rhs: Hp) -> Hp {
        Hp(self.0 + rhs.0)
    }
}

impl Sub for Hp {
    type Output = Hp;
    fn sub(self, rhs: Hp) -> Hp {
        Hp(self.0 - rhs.0)
    }
}

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(-self.0)
    }
}

impl Mul for Hp {
    type Output = Hp;
    fn mul(self, rhs: Hp) -> Hp {
        Hp(div_round(&(self.0 * rhs.0), unit()))
    }
}

impl Div for Hp {
    type Output = Hp;
    fn div(self, rhs: Hp) -> Hp {
        assert!(!rhs.0.is_zero(), "hp division by zero");
        Hp(div_round(&(self.0 * unit()), &rhs.0))
    }
}

/// Σ_{i≥0} (-1)^i / ((2i+1) x^(2i+1)), the Gregory series for atan(1/x).
fn atan_inv(x: i64) -> Hp {
    let x2 = x * x;
    let mut term = Hp::one().div_int(x);
    let mut sum = Hp::zero();
    let mut d = 1i64;
    let mut sign = 1i64;
    while !term.is_zero() {
        sum = sum + term.div_int(d).mul_int(sign);
        term = term.div_int(x2);
        d += 2;
        sign = -sign;
    }
    sum
}

/// π by Machin's formula.
pub fn pi() -> Hp {
    static PI: OnceLock<Hp> = OnceLock::new();
    PI.get_or_init(|| atan_inv(5).mul_int(16) - atan_inv(239).mul_int(4))
        .clone()
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2() -> Hp {
    static LN2: OnceLock<Hp> = OnceLock::new();
    LN2.get_or_init(|| {
        let third = Hp::from_ratio(1, 3);
        let t2 = third.clone() * third.clone();
        let mut power = third;
        let mut sum = Hp::zero();
        let mut d = 1i64;
        while !power.is_zero() {
            sum = sum + power.div_int(d);
            power = power * t2.clone();
            d += 2;
        }
        sum.mul_int(2)
    })
    .clone()
}

/// Euler's number from its Taylor series.
pub fn e() -> Hp {
    static E: OnceLock<Hp> = OnceLock::new();
    E.get_or_init(|| {
        let mut term = Hp::one();
        let mut sum = Hp::one();
        let mut i = 1i64;
        while !term.is_zero() {
            term = term.div_int(i);
            sum = sum + term.clone();
            i += 1;
        }
        sum
    })
    .clone()
}

/// ln(n!) with a process-wide cumulative cache.
pub fn ln_factorial(n: usize) -> Hp {
    static CACHE: OnceLock<Mutex<Vec<Hp>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Hp::zero(), Hp::zero()]));
    let mut table = cache.lock().expect("ln_factorial cache poisoned");
    while table.len() <= n {
        let k = table.len();
        let next = table[k - 1].clone() + Hp::from_u64(k as u64).ln();
        table.push(next);
    }
    table[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_to_forty_digits() {
        assert_eq!(
            pi().render(40),
            "3.1415926535897932384626433832795028841972"
        );
        assert_eq!(
            ln2().render(40),
            "0.6931471805599453094172321214581765680755"
        );
        assert_eq!(e().render(40), "2.7182818284590452353602874713526624977572");
        assert_eq!(
            Hp::from_u64(2).sqrt().render(40),
            "1.4142135623730950488016887242096980785697"
        );
    }

    #[test]
    fn exp_and_ln_roundtrip() {
        for v in [1i64, 2, 5, 17] {
            let x = Hp::from_u64(v as u64);
            let diff = (x.clone().ln().exp() - x).abs();
            assert!(diff < Hp::from_ratio(1, 1_000_000_000_000_000_000));
        }
        // exp(1) = e
        assert_eq!(Hp::one().exp().render(40), e().render(40));
        // ln(120) = ln 5!
        let diff = (ln_factorial(5) - Hp::from_u64(120).ln()).abs();
        assert!(diff < Hp::from_ratio(1, 1_000_000_000_000_000_000));
    }

    #[test]
    fn deep_underflow_flushes_to_zero() {
        assert!(Hp::from_i64(-200).exp().is_zero());
    }

    #[test]
    fn render_rounds_half_even() {
        assert_eq!(Hp::from_ratio(1, 2).render(0), "0");
        assert_eq!(Hp::from_ratio(3, 2).render(0), "2");
        assert_eq!(Hp::from_ratio(25, 1000).render(2), "0.02");
        assert_eq!(Hp::from_ratio(35, 1000).render(2), "0.04");
        assert_eq!(Hp::from_ratio(-1, 3).render(6), "-0.333333");
        assert_eq!(Hp::from_ratio(2, 3).render(6), "0.666667");
    }
}
