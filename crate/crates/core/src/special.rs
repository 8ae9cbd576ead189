//! Log-space Gamma function kernels.
//!
//! Coefficients of long-memory models are ratios of Gamma functions whose
//! individual factors overflow long before the ratio does, so everything here
//! works on `ln|Γ|` with the sign carried separately.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real number stored as `sign * exp(log_magnitude)`.
///
/// `log_magnitude` is meaningless when `sign` is [`Sign::Zero`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    pub log_magnitude: f64,
    pub sign: Sign,
}

impl SignedLogValue {
    pub const ZERO: SignedLogValue = SignedLogValue {
        log_magnitude: f64::NEG_INFINITY,
        sign: Sign::Zero,
    };

    pub const ONE: SignedLogValue = SignedLogValue {
        log_magnitude: 0.0,
        sign: Sign::Positive,
    };

    pub fn new(log_magnitude: f64, sign: Sign) -> Self {
        if sign == Sign::Zero {
            Self::ZERO
        } else {
            SignedLogValue {
                log_magnitude,
                sign,
            }
        }
    }

    pub fn from_value(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignedLogValue {
                log_magnitude: x.abs().ln(),
                sign: Sign::of(x),
            }
        }
    }

    pub fn value(&self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            s => s.as_f64() * self.log_magnitude.exp(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn recip(self) -> Self {
        if self.is_zero() {
            panic!("reciprocal of zero");
        }
        SignedLogValue::new(-self.log_magnitude, self.sign)
    }
}

impl std::ops::Mul for SignedLogValue {
    type Output = SignedLogValue;

    fn mul(self, rhs: Self) -> Self {
        SignedLogValue::new(self.log_magnitude + rhs.log_magnitude, self.sign * rhs.sign)
    }
}

impl std::ops::Div for SignedLogValue {
    type Output = SignedLogValue;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

// B_{2n} / (2n (2n-1)), n = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_MIN: f64 = 10.0;

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(pi x) with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let y = x - 2.0 * (x / 2.0).floor();
    if y < 0.5 {
        (PI * y).sin()
    } else if y < 1.5 {
        (PI * (1.0 - y)).sin()
    } else {
        (PI * (y - 2.0)).sin()
    }
}

fn stirling_correction(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for c in STIRLING.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}

fn ln_gamma_stirling(x: f64) -> f64 {
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + stirling_correction(x)
}

/// ln Γ(x) for x >= 0.5; small arguments are pushed up by the recurrence.
fn ln_gamma_positive(x: f64) -> f64 {
    if x >= STIRLING_MIN {
        return ln_gamma_stirling(x);
    }
    if x == x.floor() {
        // (x - 1)! is exact in f64 here
        return (1..x as u32).map(f64::from).product::<f64>().ln();
    }
    let shift = (STIRLING_MIN - x).ceil();
    let mut prod = 1.0;
    for i in 0..shift as usize {
        prod *= x + i as f64;
    }
    ln_gamma_stirling(x + shift) - prod.ln()
}

/// ln Γ(y + delta) - ln Γ(y) for y, y + delta >= 10, without forming either term.
fn ln_gamma_shift(y: f64, delta: f64) -> f64 {
    let x = y + delta;
    delta * y.ln() + (x - 0.5) * (delta / y).ln_1p() - delta
        + (stirling_correction(x) - stirling_correction(y))
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`.
pub fn log_gamma(x: f64) -> Result<SignedLogValue> {
    if x.is_nan() || is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        return Ok(SignedLogValue::new(ln_gamma_positive(x), Sign::Positive));
    }
    // reflection: Γ(x) Γ(1 - x) = π / sin(πx)
    let s = sin_pi(x);
    let log_magnitude = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
    Ok(SignedLogValue::new(log_magnitude, Sign::of(s)))
}

/// `Π Γ(num_i) / Π Γ(den_j)` evaluated in log space.
///
/// Large numerator and denominator arguments are paired and their log-Gamma
/// difference is taken through an asymptotic expansion, which keeps full
/// relative precision for ratios like Γ(j - d) / Γ(j + 1) at large j.
pub fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<SignedLogValue> {
    for &x in num.iter().chain(den) {
        if x.is_nan() || is_pole(x) {
            return Err(Error::Pole(x));
        }
    }
    let mut den_used = vec![false; den.len()];
    let mut acc = SignedLogValue::ONE;
    for &x in num {
        let partner = if x >= STIRLING_MIN {
            den.iter()
                .enumerate()
                .filter(|&(i, &y)| !den_used[i] && y >= STIRLING_MIN)
                .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
                .map(|(i, _)| i)
        } else {
            None
        };
        match partner {
            Some(i) => {
                den_used[i] = true;
                acc.log_magnitude += ln_gamma_shift(den[i], x - den[i]);
            }
            None => acc = acc * log_gamma(x)?,
        }
    }
    for (i, &y) in den.iter().enumerate() {
        if !den_used[i] {
            acc = acc / log_gamma(y)?;
        }
    }
    Ok(acc)
}

/// `Γ(x + delta) / Γ(x)` with the shift passed separately.
///
/// When `x` is large and `delta` is not representable as an exact offset of
/// `x` (e.g. `x = j`, `delta = -d`), rounding `x + delta` first would cost
/// about `ln(x) · ulp(x)` in relative accuracy; this form avoids that.
pub fn gamma_delta_ratio(x: f64, delta: f64) -> Result<SignedLogValue> {
    let shifted = x + delta;
    if x.is_nan() || delta.is_nan() || is_pole(x) || is_pole(shifted) {
        return Err(Error::Pole(if is_pole(x) { x } else { shifted }));
    }
    if delta == 0.0 {
        return Ok(SignedLogValue::ONE);
    }
    if x >= STIRLING_MIN && shifted >= STIRLING_MIN {
        return Ok(SignedLogValue::new(
            ln_gamma_shift(x, delta),
            Sign::Positive,
        ));
    }
    Ok(log_gamma(shifted)? / log_gamma(x)?)
}
