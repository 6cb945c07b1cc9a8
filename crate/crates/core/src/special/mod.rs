//! Special functions: modified Bessel functions of the second kind, the upper
//! incomplete gamma function and the inverse-Gaussian CDF.
//!
//! Bessel and incomplete-gamma values are returned as [`LogValue`]s. The
//! arguments reached by the samplers and the CDF recurrence (`sqrt(ab)` large,
//! `b/2x` large) routinely push the plain values outside `f64` range.

mod bessel;
mod incgamma;
mod normal;

pub use bessel::{
    bessel_k_ratio, log_bessel_k_general, log_bessel_k_half, log_bessel_k_half_table,
};
pub use incgamma::upper_incomplete_gamma;
pub(crate) use incgamma::{ln_gamma, ln_gamma_tails};
pub use normal::{erfcx, inv_gauss_cdf, inv_gauss_sf, log_erfc, log_std_normal_cdf, std_normal_cdf};

use crate::error::{GigError, Result};
use std::fmt;

/// Tolerance used when deciding whether a floating-point order is a half-integer.
pub const HALF_INTEGER_TOLERANCE: f64 = 1e-12;

/// A half-integer `p = twice_value / 2` with `twice_value` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger {
    twice_value: i64,
}

impl HalfInteger {
    /// Builds the half-integer `twice_value / 2`; `twice_value` must be odd.
    pub fn new(twice_value: i64) -> Result<Self> {
        if twice_value % 2 == 0 {
            return Err(GigError::Domain(format!(
                "{twice_value}/2 is not a half-integer"
            )));
        }
        Ok(HalfInteger { twice_value })
    }

    /// Recognizes `p` as a half-integer when `|2p - round(2p)| < 1e-12` and
    /// `round(2p)` is odd.
    pub fn from_f64(p: f64) -> Option<Self> {
        if !p.is_finite() || p.abs() > 1e15 {
            return None;
        }
        let twice = (2.0 * p).round();
        if (2.0 * p - twice).abs() < HALF_INTEGER_TOLERANCE {
            HalfInteger::new(twice as i64).ok()
        } else {
            None
        }
    }

    pub fn twice_value(self) -> i64 {
        self.twice_value
    }

    pub fn value(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    /// `|p|`, still a half-integer.
    pub fn abs(self) -> Self {
        HalfInteger { twice_value: self.twice_value.abs() }
    }

    pub fn is_negative(self) -> bool {
        self.twice_value < 0
    }

    /// `p - k` for an integer `k`.
    pub fn minus(self, k: i64) -> Self {
        HalfInteger { twice_value: self.twice_value - 2 * k }
    }

    /// `-p`.
    pub fn negate(self) -> Self {
        HalfInteger { twice_value: -self.twice_value }
    }

    /// Index of `|p|` in the ladder `1/2, 3/2, 5/2, ...` (so `1/2 -> 0`).
    pub fn ladder_index(self) -> usize {
        ((self.twice_value.unsigned_abs() - 1) / 2) as usize
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.twice_value)
    }
}

/// Sign of a [`LogValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// The real number `sign * exp(log_magnitude)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    log_magnitude: f64,
    sign: Sign,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue { log_magnitude: f64::NEG_INFINITY, sign: Sign::Zero };

    /// A positive value given by its natural logarithm.
    pub fn from_ln(log_magnitude: f64) -> Self {
        if log_magnitude == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogValue { log_magnitude, sign: Sign::Positive }
        }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else if v > 0.0 {
            LogValue { log_magnitude: v.ln(), sign: Sign::Positive }
        } else {
            LogValue { log_magnitude: (-v).ln(), sign: Sign::Negative }
        }
    }

    pub fn ln(self) -> f64 {
        self.log_magnitude
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    /// The plain value; may overflow to infinity or underflow to zero.
    pub fn value(self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            Sign::Positive => self.log_magnitude.exp(),
            Sign::Negative => -self.log_magnitude.exp(),
        }
    }
}

/// `ln(1 - exp(x))` for `x <= 0`, accurate across the whole range.
pub(crate) fn ln_1m_exp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln(exp(a) + exp(b))`.
pub(crate) fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

pub(crate) fn require_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(GigError::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}
